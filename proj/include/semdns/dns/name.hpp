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

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace semdns::dns {

/// Domain name as a label sequence, most specific label first. Comparison is
/// case-insensitive and ordering is the canonical DNS order (labels compared
/// right to left), so every subtree is a contiguous range.
class Name {
 public:
  Name() = default;  // the root
  explicit Name(std::vector<std::string> labels);

  /// Presentation form. Names without a trailing dot are relative to `origin`;
  /// "@" is the origin itself. Supports \. and \DDD escapes.
  static Name parse(std::string_view text, const Name& origin = Name());

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t label_count() const noexcept { return labels_.size(); }
  bool is_root() const noexcept { return labels_.empty(); }
  const std::string& first_label() const { return labels_.front(); }

  /// Fully qualified with a trailing dot.
  std::string to_string() const;
  std::size_t wire_length() const noexcept;

  bool is_subdomain_of(const Name& ancestor) const noexcept;  // at or below
  Name parent() const;
  Name prepend(std::string label) const;
  Name concat(const Name& suffix) const;
  /// Labels of this name above `ancestor` (most specific first).
  std::vector<std::string> relative_to(const Name& ancestor) const;
  Name lowercased() const;

  friend bool operator==(const Name& a, const Name& b) noexcept;
  friend std::strong_ordering operator<=>(const Name& a, const Name& b) noexcept;

 private:
  std::vector<std::string> labels_;
};

inline constexpr std::size_t kMaxLabelLength = 63;
inline constexpr std::size_t kMaxNameLength = 255;

bool iequals(std::string_view a, std::string_view b) noexcept;
std::string escape_label(std::string_view label);

}  // namespace semdns::dns
