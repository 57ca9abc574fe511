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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semdns/bits.hpp"
#include "semdns/context.hpp"

namespace semdns {

/// Context id in the leading five bits followed by the payload fields.
struct SemanticIdentifier {
  std::uint8_t context_id = 0;
  BitString payload;
  bool partial = false;  // fewer fields than the context layout declares

  BitString bits() const;
  /// Base32 label; requires a total length that is a multiple of five.
  std::string render() const;

  friend bool operator==(const SemanticIdentifier&, const SemanticIdentifier&) = default;
};

struct ParsedIdentifier {
  ContextDescriptor context;
  std::vector<std::uint64_t> fields;
  bool partial = false;
};

/// Packs each value MSB-first in its declared width. Passing fewer values than
/// the layout has fields yields a partial (prefix) identifier.
SemanticIdentifier frame_identifier(const ContextDescriptor& context,
                                    std::span<const std::uint64_t> field_values);

ParsedIdentifier parse_identifier(std::string_view label, const ContextRegistry& registry);

SemanticIdentifier encode_tree_path(const ContextDescriptor& context,
                                    std::span<const PathStep> path);

/// Full identifiers of every tree leaf covered by `prefix`.
std::vector<SemanticIdentifier> covered_set(const SemanticIdentifier& prefix,
                                            const ContextDescriptor& context);

SemanticIdentifier encode_logical(const LogicalLocation& location);
LogicalLocation decode_logical(std::string_view label);

}  // namespace semdns
