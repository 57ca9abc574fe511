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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace semdns {

/// Geohash variant of base32: digits plus lowercase letters without a, i, l, o.
inline constexpr std::string_view kBase32Alphabet = "0123456789bcdefghjkmnpqrstuvwxyz";

/// Ordered sequence of bits. Bit 0 is the first (most significant) bit.
class BitString {
 public:
  BitString() = default;

  /// Parses a string of '0'/'1' characters; spaces are ignored.
  static BitString from_string(std::string_view digits);

  /// `width` bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, unsigned width);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }

  void push_back(bool bit) { bits_.push_back(bit); }
  void append(std::uint64_t value, unsigned width);
  void append(const BitString& other);

  BitString slice(std::size_t pos, std::size_t count) const;
  BitString prefix(std::size_t count) const { return slice(0, count); }
  bool starts_with(const BitString& prefix) const;

  /// Reads `width` bits starting at `pos` as an unsigned integer (width <= 64).
  std::uint64_t to_uint(std::size_t pos, unsigned width) const;

  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);

 private:
  std::vector<bool> bits_;
};

/// Renders groups of five bits as alphabet symbols. Throws Errc::padding when
/// the length is not a multiple of five; no padding is ever added.
std::string b32_encode(const BitString& bits);

/// Inverse of b32_encode. Input is case-insensitive.
BitString b32_decode(std::string_view label);

/// Index of `c` in the alphabet (case-insensitive), or -1.
int b32_index(char c) noexcept;

bool is_b32_label(std::string_view label) noexcept;

std::string to_lower(std::string_view text);

}  // namespace semdns
