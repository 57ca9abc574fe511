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

#include "semdns/bits.hpp"

#include <algorithm>
#include <cctype>

#include "semdns/error.hpp"

namespace semdns {

BitString BitString::from_string(std::string_view digits) {
  BitString out;
  for (char c : digits) {
    if (c == '0' || c == '1') {
      out.push_back(c == '1');
    } else if (c != ' ' && c != '_') {
      throw Error(Errc::invalid_argument,
                  std::string("not a binary digit: '") + c + "'");
    }
  }
  return out;
}

BitString BitString::from_uint(std::uint64_t value, unsigned width) {
  BitString out;
  out.append(value, width);
  return out;
}

void BitString::append(std::uint64_t value, unsigned width) {
  if (width > 64) throw Error(Errc::range, "field wider than 64 bits");
  if (width < 64 && (value >> width) != 0) {
    throw Error(Errc::range, "value " + std::to_string(value) + " does not fit in " +
                                 std::to_string(width) + " bits");
  }
  for (unsigned i = width; i-- > 0;) bits_.push_back(((value >> i) & 1U) != 0);
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitString BitString::slice(std::size_t pos, std::size_t count) const {
  if (pos > bits_.size() || count > bits_.size() - pos) {
    throw Error(Errc::range, "bit slice out of range");
  }
  BitString out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                   bits_.begin() + static_cast<std::ptrdiff_t>(pos + count));
  return out;
}

bool BitString::starts_with(const BitString& prefix) const {
  return prefix.size() <= size() &&
         std::equal(prefix.bits_.begin(), prefix.bits_.end(), bits_.begin());
}

std::uint64_t BitString::to_uint(std::size_t pos, unsigned width) const {
  if (width > 64 || pos > bits_.size() || width > bits_.size() - pos) {
    throw Error(Errc::range, "bit field out of range");
  }
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i) v = (v << 1) | (bits_[pos + i] ? 1U : 0U);
  return v;
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return a.size() <=> b.size();
}

int b32_index(char c) noexcept {
  const char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto pos = kBase32Alphabet.find(lc);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

bool is_b32_label(std::string_view label) noexcept {
  return std::all_of(label.begin(), label.end(), [](char c) { return b32_index(c) >= 0; });
}

std::string b32_encode(const BitString& bits) {
  if (bits.size() % 5 != 0) {
    throw Error(Errc::padding, "bit length " + std::to_string(bits.size()) +
                                   " is not a multiple of 5; refusing to pad");
  }
  std::string out;
  out.reserve(bits.size() / 5);
  for (std::size_t pos = 0; pos < bits.size(); pos += 5) {
    out.push_back(kBase32Alphabet[bits.to_uint(pos, 5)]);
  }
  return out;
}

BitString b32_decode(std::string_view label) {
  BitString out;
  for (std::size_t i = 0; i < label.size(); ++i) {
    const int v = b32_index(label[i]);
    if (v < 0) {
      throw Error(Errc::decode, std::string("invalid base32 character '") + label[i] +
                                    "' at position " + std::to_string(i));
    }
    out.append(static_cast<std::uint64_t>(v), 5);
  }
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace semdns
