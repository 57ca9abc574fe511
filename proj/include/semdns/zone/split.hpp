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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semdns::zone {

/// A subtree served by another server in multi-length mode: below the
/// identifier prefix `parent`, the single symbol that extends it to
/// `delegated` becomes its own label and the labels underneath are
/// `child_length` symbols long.
struct Delegation {
  std::string parent;
  std::string delegated;
  std::size_t child_length = 1;
};

struct SplitPolicy {
  enum class Mode { static_length, dynamic, multi };

  Mode mode = Mode::static_length;
  /// Label length for static mode and the base length for multi mode.
  std::size_t label_length = 63;
  std::vector<Delegation> delegations;

  static SplitPolicy fixed(std::size_t length);
  static SplitPolicy dynamic();
  static SplitPolicy multi(std::size_t base_length, std::vector<Delegation> delegations = {});

  const Delegation* delegation_at(std::string_view prefix, std::string_view rest) const;
};

const char* split_mode_name(SplitPolicy::Mode mode) noexcept;
std::optional<SplitPolicy::Mode> split_mode_from_name(std::string_view name) noexcept;

/// Dynamic mode: given the labels chosen so far (most specific first), returns
/// the length published by the `len=N` TXT at that subdomain, if any.
using LengthLookup = std::function<std::optional<std::size_t>(const std::vector<std::string>& labels)>;

/// Splits an identifier into DNS owner labels, most specific first.
/// Throws Errc::policy when a dynamic length is missing or invalid.
std::vector<std::string> split_labels(std::string_view identifier, const SplitPolicy& policy,
                                      const LengthLookup& lookup = {});

/// Inverse of split_labels: concatenates labels from the right.
std::string join_labels(std::span<const std::string> labels);

/// Parses the value of a `len=N` TXT string; nullopt when the string is not
/// a length declaration, Errc::policy when N is not in 1..63.
std::optional<std::size_t> parse_length_declaration(std::string_view txt);

}  // namespace semdns::zone
