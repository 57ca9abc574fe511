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

#include "semdns/dns/wire.hpp"

namespace semdns::server {

/// Shared-secret authorization for UPDATE messages.
///
/// The signer appends one record as the last entry of the additional section:
///
///     _token.<zone>  0  ANY  TXT  "hmac-sha256:<unix-time>:<hex-mac>"
///
/// where <hex-mac> is HMAC-SHA256(secret, M || T). M is the encoded message
/// without that record (ARCOUNT one lower) and T is <unix-time> as a
/// big-endian 64-bit integer.
inline constexpr std::string_view kTokenLabel = "_token";
inline constexpr std::int64_t kTokenFudgeSeconds = 300;

enum class TokenCheck { valid, missing, malformed, bad_mac, stale };

const char* token_check_name(TokenCheck check) noexcept;

/// Encodes `message` with a token record appended.
std::vector<std::uint8_t> sign_update(const dns::Message& message, std::string_view secret,
                                      std::int64_t unix_time);

/// Checks the token of an encoded UPDATE. `offsets` are the additional-record
/// offsets reported by dns::decode for `bytes`.
TokenCheck verify_update_token(std::span<const std::uint8_t> bytes, const dns::Message& message,
                               std::span<const std::size_t> offsets, std::string_view secret,
                               std::int64_t now);

/// True when `message` ends with a token record.
bool has_update_token(const dns::Message& message);

/// Source address filter: exact addresses or CIDR blocks, IPv4 or IPv6.
class AddressList {
 public:
  AddressList() = default;
  /// Throws Errc::invalid_argument on a malformed entry.
  explicit AddressList(const std::vector<std::string>& entries);

  bool empty() const noexcept { return entries_.empty(); }
  bool contains(std::string_view address) const;

 private:
  struct Entry {
    int family = 0;
    std::vector<std::uint8_t> bytes;
    unsigned prefix = 0;
  };
  std::vector<Entry> entries_;
};

}  // namespace semdns::server
