/*
 * Copyright 2026 The semdns Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "semdns/identifier.hpp"

#include "semdns/error.hpp"

namespace semdns {

BitString SemanticIdentifier::bits() const {
  BitString out = BitString::from_uint(context_id, 5);
  out.append(payload);
  return out;
}

std::string SemanticIdentifier::render() const { return b32_encode(bits()); }

SemanticIdentifier frame_identifier(const ContextDescriptor& context,
                                    std::span<const std::uint64_t> field_values) {
  if (field_values.size() > context.field_widths.size()) {
    throw Error(Errc::invalid_argument, "context " + std::to_string(context.id) + " has " +
                                            std::to_string(context.field_widths.size()) +
                                            " fields, got " + std::to_string(field_values.size()));
  }
  SemanticIdentifier id;
  id.context_id = context.id;
  for (std::size_t i = 0; i < field_values.size(); ++i) {
    const unsigned width = context.field_widths[i];
    if (width < 64 && (field_values[i] >> width) != 0) {
      throw Error(Errc::range, "field " + std::to_string(i) + " value " +
                                   std::to_string(field_values[i]) + " overflows " +
                                   std::to_string(width) + " bits");
    }
    id.payload.append(field_values[i], width);
  }
  id.partial = field_values.size() < context.field_widths.size();
  return id;
}

ParsedIdentifier parse_identifier(std::string_view label, const ContextRegistry& registry) {
  if (label.empty()) throw Error(Errc::invalid_argument, "empty identifier label");
  BitString bits = b32_decode(label);
  const auto id = static_cast<std::uint8_t>(bits.to_uint(0, 5));
  const ContextDescriptor& context = registry.at(id);

  if (context.kind == ContextKind::geo && bits.size() == 5 + kGeoCoordinateBits + 1) {
    if (bits[bits.size() - 1]) {
      throw Error(Errc::padding, "geo identifier padding bit is not zero");
    }
    bits = bits.prefix(bits.size() - 1);
  }

  ParsedIdentifier out{context, {}, false};
  std::size_t pos = 5;
  for (unsigned width : context.field_widths) {
    if (pos == bits.size()) break;
    if (bits.size() - pos < width) {
      throw Error(Errc::misaligned, "label '" + std::string(label) +
                                        "' ends inside a field of context " + std::to_string(id));
    }
    out.fields.push_back(bits.to_uint(pos, width));
    pos += width;
  }
  if (pos != bits.size()) {
    throw Error(Errc::misaligned, "label '" + std::string(label) + "' is longer than context " +
                                      std::to_string(id) + " allows");
  }
  out.partial = out.fields.size() < context.field_widths.size();
  return out;
}

SemanticIdentifier encode_tree_path(const ContextDescriptor& context,
                                    std::span<const PathStep> path) {
  if (context.kind != ContextKind::tree || !context.tree) {
    throw Error(Errc::invalid_argument,
                "context " + std::to_string(context.id) + " is not a tree context");
  }
  const auto indices = context.tree->resolve(path);
  return frame_identifier(context, indices);
}

std::vector<SemanticIdentifier> covered_set(const SemanticIdentifier& prefix,
                                            const ContextDescriptor& context) {
  if (context.kind != ContextKind::tree || !context.tree || prefix.context_id != context.id) {
    throw Error(Errc::invalid_argument, "covered_set needs the identifier's tree context");
  }
  std::vector<SemanticIdentifier> out;
  for (auto& code : context.tree->covered_set(prefix.payload)) {
    SemanticIdentifier leaf;
    leaf.context_id = context.id;
    leaf.partial = code.size() < context.payload_bits();
    leaf.payload = std::move(code);
    out.push_back(std::move(leaf));
  }
  return out;
}

namespace {

const ContextDescriptor& logical_context() {
  static const ContextDescriptor d{kLogicalContextId, ContextKind::logical, "location", {5, 5, 10}, nullptr};
  return d;
}

}  // namespace

SemanticIdentifier encode_logical(const LogicalLocation& location) {
  const std::uint64_t fields[] = {location.building, location.floor, location.room};
  return frame_identifier(logical_context(), fields);
}

LogicalLocation decode_logical(std::string_view label) {
  ContextRegistry registry;
  registry.register_context(logical_context());
  const auto parsed = parse_identifier(label, registry);
  if (parsed.partial) throw Error(Errc::misaligned, "logical location label is incomplete");
  return {parsed.fields[0], parsed.fields[1], parsed.fields[2]};
}

}  // namespace semdns
