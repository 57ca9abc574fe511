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
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "semdns/bits.hpp"

namespace semdns {

enum class ContextKind { tree, logical, geo };

const char* context_kind_name(ContextKind kind) noexcept;

/// A step along a tree path: either a child index or a child label.
using PathStep = std::variant<std::uint64_t, std::string>;

/// Hierarchy of labeled nodes. Level `i` has arity 2^level_widths[i]; a node's
/// code is the concatenation of child indices along the root-to-node path.
class SemanticTree {
 public:
  struct Node {
    std::string label;
    std::map<std::uint64_t, Node> children;
    bool is_leaf() const noexcept { return children.empty(); }
  };

  explicit SemanticTree(std::vector<unsigned> level_widths);

  /// Builds from per-level arities; each must be a power of two >= 2.
  static SemanticTree with_arities(std::span<const std::uint64_t> arities);

  const std::vector<unsigned>& level_widths() const noexcept { return widths_; }
  std::size_t depth() const noexcept { return widths_.size(); }
  std::uint64_t arity(std::size_t level) const;
  const Node& root() const noexcept { return root_; }

  /// Creates or relabels the node at `index_path`; intermediate nodes must exist.
  void add_node(std::span<const std::uint64_t> index_path, std::string label);

  /// Maps label/index steps to child indices. Throws Errc::not_found.
  std::vector<std::uint64_t> resolve(std::span<const PathStep> path) const;

  const Node& node_at(std::span<const std::uint64_t> index_path) const;

  BitString code(std::span<const std::uint64_t> index_path) const;

  /// Codes of every leaf, in code order.
  std::vector<BitString> leaf_codes() const;

  /// Leaves whose code extends `prefix`.
  std::vector<BitString> covered_set(const BitString& prefix) const;

 private:
  std::vector<unsigned> widths_;
  Node root_;
};

struct ContextDescriptor {
  std::uint8_t id = 0;
  ContextKind kind = ContextKind::tree;
  std::string name;
  std::vector<unsigned> field_widths;
  std::shared_ptr<const SemanticTree> tree;  // kind == tree only

  unsigned payload_bits() const noexcept;

  /// Throws Errc::invalid_argument when the layout breaks the context rules.
  void validate() const;
};

inline constexpr std::uint8_t kTreeContextId = 1;
inline constexpr std::uint8_t kLogicalContextId = 2;
inline constexpr std::uint8_t kGeoContextId = 3;
inline constexpr unsigned kGeoCoordinateBits = 59;

/// Context id -> descriptor. Built once, then read-only.
class ContextRegistry {
 public:
  void register_context(ContextDescriptor descriptor);

  const ContextDescriptor* find(std::uint8_t id) const noexcept;
  const ContextDescriptor& at(std::uint8_t id) const;
  std::vector<std::uint8_t> ids() const;

  /// Parses the line-oriented registry format (see data/contexts.conf).
  static ContextRegistry parse(std::string_view text);
  static ContextRegistry load(const std::filesystem::path& path);

  /// Context-1 (TD property tree), Context-2 (logical location), Context-3 (geo).
  static ContextRegistry standard();

 private:
  std::map<std::uint8_t, ContextDescriptor> contexts_;
};

struct LogicalLocation {
  std::uint64_t building = 0;  // 0..31
  std::uint64_t floor = 0;     // 0..31
  std::uint64_t room = 0;      // 0..1023

  friend bool operator==(const LogicalLocation&, const LogicalLocation&) = default;
};

}  // namespace semdns
