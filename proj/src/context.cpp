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

#include "semdns/context.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>

#include "semdns/error.hpp"

namespace semdns {

namespace {

// Kept in sync with data/contexts.conf.
constexpr std::string_view kStandardRegistry = R"(
context 1 tree td-properties 5 5 5 5
node 1 12 properties
node 1 12.1 temperature
node 1 12.1.5 unit
node 1 12.1.5.2 degree_Celsius
context 2 logical location 5 5 10
context 3 geo geo 59
)";

std::uint64_t parse_uint(std::string_view token, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw Error(Errc::parse, "line " + std::to_string(line_no) + ": expected an integer, got '" +
                                 std::string(token) + "'");
  }
  return v;
}

std::vector<std::uint64_t> parse_index_path(std::string_view dotted, std::size_t line_no) {
  std::vector<std::uint64_t> path;
  std::size_t start = 0;
  while (start <= dotted.size()) {
    const auto dot = dotted.find('.', start);
    const auto end = dot == std::string_view::npos ? dotted.size() : dot;
    path.push_back(parse_uint(dotted.substr(start, end - start), line_no));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return path;
}

void collect_leaves(const SemanticTree::Node& node, BitString code,
                    const std::vector<unsigned>& widths, std::size_t level,
                    std::vector<BitString>& out) {
  if (node.is_leaf()) {
    if (level > 0) out.push_back(code);
    return;
  }
  for (const auto& [index, child] : node.children) {
    BitString next = code;
    next.append(index, widths[level]);
    collect_leaves(child, std::move(next), widths, level + 1, out);
  }
}

}  // namespace

const char* context_kind_name(ContextKind kind) noexcept {
  switch (kind) {
    case ContextKind::tree: return "tree";
    case ContextKind::logical: return "logical";
    case ContextKind::geo: return "geo";
  }
  return "unknown";
}

SemanticTree::SemanticTree(std::vector<unsigned> level_widths) : widths_(std::move(level_widths)) {
  for (unsigned w : widths_) {
    if (w == 0 || w > 63) throw Error(Errc::invalid_argument, "tree level width must be 1..63 bits");
  }
}

SemanticTree SemanticTree::with_arities(std::span<const std::uint64_t> arities) {
  std::vector<unsigned> widths;
  for (std::uint64_t a : arities) {
    if (a < 2 || !std::has_single_bit(a)) {
      throw Error(Errc::invalid_argument,
                  "level degree " + std::to_string(a) + " is not a power of 2");
    }
    widths.push_back(static_cast<unsigned>(std::countr_zero(a)));
  }
  return SemanticTree(std::move(widths));
}

std::uint64_t SemanticTree::arity(std::size_t level) const {
  return std::uint64_t{1} << widths_.at(level);
}

void SemanticTree::add_node(std::span<const std::uint64_t> index_path, std::string label) {
  if (index_path.empty() || index_path.size() > widths_.size()) {
    throw Error(Errc::invalid_argument, "node path length must be 1.." + std::to_string(depth()));
  }
  Node* node = &root_;
  for (std::size_t level = 0; level < index_path.size(); ++level) {
    const std::uint64_t idx = index_path[level];
    if (idx >= arity(level)) {
      throw Error(Errc::range, "child index " + std::to_string(idx) + " exceeds level " +
                                   std::to_string(level) + " arity " + std::to_string(arity(level)));
    }
    const bool last = level + 1 == index_path.size();
    auto it = node->children.find(idx);
    if (it == node->children.end()) {
      if (!last) throw Error(Errc::not_found, "parent node missing for '" + label + "'");
      for (const auto& [other_idx, sibling] : node->children) {
        if (sibling.label == label) throw Error(Errc::duplicate, "sibling label '" + label + "' reused");
      }
      it = node->children.emplace(idx, Node{}).first;
    }
    node = &it->second;
  }
  node->label = std::move(label);
}

std::vector<std::uint64_t> SemanticTree::resolve(std::span<const PathStep> path) const {
  if (path.size() > widths_.size()) throw Error(Errc::range, "path deeper than the tree");
  std::vector<std::uint64_t> indices;
  const Node* node = &root_;
  for (std::size_t level = 0; level < path.size(); ++level) {
    const PathStep& step = path[level];
    auto it = node->children.end();
    if (const auto* idx = std::get_if<std::uint64_t>(&step)) {
      it = node->children.find(*idx);
    } else {
      const auto& label = std::get<std::string>(step);
      it = std::find_if(node->children.begin(), node->children.end(),
                        [&](const auto& kv) { return kv.second.label == label; });
    }
    if (it == node->children.end()) {
      std::string what = std::holds_alternative<std::string>(step)
                             ? "'" + std::get<std::string>(step) + "'"
                             : std::to_string(std::get<std::uint64_t>(step));
      throw Error(Errc::not_found, "no child " + what + " at level " + std::to_string(level));
    }
    indices.push_back(it->first);
    node = &it->second;
  }
  return indices;
}

const SemanticTree::Node& SemanticTree::node_at(std::span<const std::uint64_t> index_path) const {
  const Node* node = &root_;
  for (std::uint64_t idx : index_path) {
    auto it = node->children.find(idx);
    if (it == node->children.end()) throw Error(Errc::not_found, "no such tree node");
    node = &it->second;
  }
  return *node;
}

BitString SemanticTree::code(std::span<const std::uint64_t> index_path) const {
  if (index_path.size() > widths_.size()) throw Error(Errc::range, "path deeper than the tree");
  BitString out;
  for (std::size_t level = 0; level < index_path.size(); ++level) {
    out.append(index_path[level], widths_[level]);
  }
  return out;
}

std::vector<BitString> SemanticTree::leaf_codes() const {
  std::vector<BitString> out;
  collect_leaves(root_, BitString{}, widths_, 0, out);
  return out;
}

std::vector<BitString> SemanticTree::covered_set(const BitString& prefix) const {
  std::vector<BitString> out;
  for (auto& code : leaf_codes()) {
    if (code.starts_with(prefix)) out.push_back(std::move(code));
  }
  return out;
}

unsigned ContextDescriptor::payload_bits() const noexcept {
  unsigned total = 0;
  for (unsigned w : field_widths) total += w;
  return total;
}

void ContextDescriptor::validate() const {
  const std::string who = "context " + std::to_string(id) + ": ";
  if (id > 31) throw Error(Errc::invalid_argument, who + "id must fit in 5 bits");
  if (field_widths.empty()) throw Error(Errc::invalid_argument, who + "no fields declared");
  if (kind == ContextKind::geo) {
    if (field_widths != std::vector<unsigned>{kGeoCoordinateBits}) {
      throw Error(Errc::invalid_argument, who + "geo context must declare one 59-bit field");
    }
    return;
  }
  for (unsigned w : field_widths) {
    if (w == 0 || w % 5 != 0 || w > 60) {
      throw Error(Errc::invalid_argument,
                  who + "field width " + std::to_string(w) + " is not a multiple of 5 bits");
    }
  }
  if (kind == ContextKind::tree) {
    if (!tree) throw Error(Errc::invalid_argument, who + "tree context without a tree");
    if (tree->level_widths() != field_widths) {
      throw Error(Errc::invalid_argument, who + "tree levels do not match field widths");
    }
  }
}

void ContextRegistry::register_context(ContextDescriptor descriptor) {
  descriptor.validate();
  const auto id = descriptor.id;
  if (!contexts_.emplace(id, std::move(descriptor)).second) {
    throw Error(Errc::duplicate, "context id " + std::to_string(id) + " already registered");
  }
}

const ContextDescriptor* ContextRegistry::find(std::uint8_t id) const noexcept {
  auto it = contexts_.find(id);
  return it == contexts_.end() ? nullptr : &it->second;
}

const ContextDescriptor& ContextRegistry::at(std::uint8_t id) const {
  if (const auto* d = find(id)) return *d;
  throw Error(Errc::unknown_context, "unknown context id " + std::to_string(id));
}

std::vector<std::uint8_t> ContextRegistry::ids() const {
  std::vector<std::uint8_t> out;
  for (const auto& [id, d] : contexts_) out.push_back(id);
  return out;
}

ContextRegistry ContextRegistry::parse(std::string_view text) {
  // Trees are assembled before descriptors are registered, so they can be
  // shared as immutable afterwards.
  struct Pending {
    ContextDescriptor descriptor;
    std::unique_ptr<SemanticTree> tree;
  };
  std::map<std::uint8_t, Pending> pending;
  std::vector<std::uint8_t> order;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<std::string> tok;
    for (std::string t; tokens >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const auto where = "line " + std::to_string(line_no) + ": ";

    if (tok[0] == "context") {
      if (tok.size() < 5) throw Error(Errc::parse, where + "context <id> <kind> <name> <width>...");
      ContextDescriptor d;
      const auto id = parse_uint(tok[1], line_no);
      if (id > 31) throw Error(Errc::parse, where + "context id must be 0..31");
      d.id = static_cast<std::uint8_t>(id);
      if (tok[2] == "tree") d.kind = ContextKind::tree;
      else if (tok[2] == "logical") d.kind = ContextKind::logical;
      else if (tok[2] == "geo") d.kind = ContextKind::geo;
      else throw Error(Errc::parse, where + "unknown context kind '" + tok[2] + "'");
      d.name = tok[3];
      for (std::size_t i = 4; i < tok.size(); ++i) {
        d.field_widths.push_back(static_cast<unsigned>(parse_uint(tok[i], line_no)));
      }
      if (pending.contains(d.id)) {
        throw Error(Errc::duplicate, where + "context id " + tok[1] + " declared twice");
      }
      Pending p;
      if (d.kind == ContextKind::tree) p.tree = std::make_unique<SemanticTree>(d.field_widths);
      p.descriptor = std::move(d);
      order.push_back(p.descriptor.id);
      pending.emplace(p.descriptor.id, std::move(p));
    } else if (tok[0] == "node") {
      if (tok.size() != 4) throw Error(Errc::parse, where + "node <context-id> <index.path> <label>");
      const auto id = parse_uint(tok[1], line_no);
      auto it = id <= 31 ? pending.find(static_cast<std::uint8_t>(id)) : pending.end();
      if (it == pending.end() || !it->second.tree) {
        throw Error(Errc::parse, where + "node refers to undeclared tree context " + tok[1]);
      }
      try {
        it->second.tree->add_node(parse_index_path(tok[2], line_no), tok[3]);
      } catch (const Error& e) {
        throw Error(Errc::parse, where + e.what());
      }
    } else {
      throw Error(Errc::parse, where + "unknown directive '" + tok[0] + "'");
    }
  }

  ContextRegistry registry;
  for (auto id : order) {
    auto& p = pending.at(id);
    if (p.tree) p.descriptor.tree = std::shared_ptr<const SemanticTree>(std::move(p.tree));
    registry.register_context(std::move(p.descriptor));
  }
  return registry;
}

ContextRegistry ContextRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot read context registry " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

ContextRegistry ContextRegistry::standard() { return parse(kStandardRegistry); }

}  // namespace semdns
