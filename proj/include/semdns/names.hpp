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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace semdns {

/// Name derived from a public key: A = RIPEMD-160(SHA-256(key)), rendered as
/// 32 base32 symbols.
struct SelfCertName {
  std::array<std::uint8_t, 20> digest{};
  std::string label;

  static SelfCertName from_label(std::string_view label);
};

struct Eui64 {
  std::array<std::uint8_t, 8> bytes{};

  std::uint64_t value() const noexcept;
  /// Sixteen lowercase hex digits.
  std::string to_hex() const;

  friend bool operator==(const Eui64&, const Eui64&) = default;
};

enum class NameVerdict { match, mismatch, malformed };

/// Keys are opaque byte strings; callers agree on the key serialization.
SelfCertName derive_name(std::span<const std::uint8_t> public_key);

NameVerdict verify_name(std::string_view label, std::span<const std::uint8_t> public_key);

/// First 8 bytes of SHA3-256 over the 20 raw digest bytes.
Eui64 derive_eui64(const SelfCertName& name);

}  // namespace semdns
