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

#include "semdns/names.hpp"

#include <algorithm>

#include "semdns/bits.hpp"
#include "semdns/crypto.hpp"
#include "semdns/error.hpp"

namespace semdns {

namespace {

constexpr std::size_t kNameSymbols = 32;

std::string render_digest(const std::array<std::uint8_t, 20>& digest) {
  BitString bits;
  for (auto b : digest) bits.append(b, 8);
  return b32_encode(bits);
}

}  // namespace

SelfCertName SelfCertName::from_label(std::string_view label) {
  if (label.size() != kNameSymbols || !is_b32_label(label)) {
    throw Error(Errc::decode, "self-certifying names are 32 base32 symbols");
  }
  const BitString bits = b32_decode(label);
  SelfCertName name;
  for (std::size_t i = 0; i < name.digest.size(); ++i) {
    name.digest[i] = static_cast<std::uint8_t>(bits.to_uint(8 * i, 8));
  }
  name.label = to_lower(label);
  return name;
}

std::uint64_t Eui64::value() const noexcept {
  std::uint64_t v = 0;
  for (auto b : bytes) v = (v << 8) | b;
  return v;
}

std::string Eui64::to_hex() const { return crypto::to_hex(bytes); }

SelfCertName derive_name(std::span<const std::uint8_t> public_key) {
  if (public_key.empty()) throw Error(Errc::invalid_argument, "public key is empty");
  const auto inner = crypto::sha256(public_key);
  SelfCertName name;
  name.digest = crypto::ripemd160(inner);
  name.label = render_digest(name.digest);
  return name;
}

NameVerdict verify_name(std::string_view label, std::span<const std::uint8_t> public_key) {
  if (label.size() != kNameSymbols || !is_b32_label(label) || public_key.empty()) {
    return NameVerdict::malformed;
  }
  return derive_name(public_key).label == to_lower(label) ? NameVerdict::match
                                                         : NameVerdict::mismatch;
}

Eui64 derive_eui64(const SelfCertName& name) {
  const auto h = crypto::sha3_256(name.digest);
  Eui64 out;
  std::copy_n(h.begin(), out.bytes.size(), out.bytes.begin());
  return out;
}

}  // namespace semdns
