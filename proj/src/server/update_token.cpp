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

#include "semdns/server/update_token.hpp"

#include <arpa/inet.h>

#include <algorithm>
#include <charconv>
#include <optional>

#include "semdns/crypto.hpp"
#include "semdns/error.hpp"

namespace semdns::server {

namespace {

constexpr std::string_view kScheme = "hmac-sha256:";

crypto::Sha256Digest token_mac(std::span<const std::uint8_t> signed_bytes, std::string_view secret,
                               std::int64_t t) {
  std::vector<std::uint8_t> data(signed_bytes.begin(), signed_bytes.end());
  for (int shift = 56; shift >= 0; shift -= 8) {
    data.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(t) >> shift));
  }
  return crypto::hmac_sha256(crypto::as_bytes(secret), data);
}

bool parse_address(std::string_view text, int& family, std::vector<std::uint8_t>& bytes) {
  const std::string s(text);
  std::uint8_t buf[16];
  if (inet_pton(AF_INET, s.c_str(), buf) == 1) {
    family = AF_INET;
    bytes.assign(buf, buf + 4);
    return true;
  }
  if (inet_pton(AF_INET6, s.c_str(), buf) == 1) {
    // IPv4-mapped IPv6 addresses match IPv4 entries.
    static constexpr std::uint8_t mapped[12] = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0xff, 0xff};
    if (std::equal(mapped, mapped + 12, buf)) {
      family = AF_INET;
      bytes.assign(buf + 12, buf + 16);
    } else {
      family = AF_INET6;
      bytes.assign(buf, buf + 16);
    }
    return true;
  }
  return false;
}

}  // namespace

const char* token_check_name(TokenCheck check) noexcept {
  switch (check) {
    case TokenCheck::valid: return "valid";
    case TokenCheck::missing: return "missing";
    case TokenCheck::malformed: return "malformed";
    case TokenCheck::bad_mac: return "bad-mac";
    case TokenCheck::stale: return "stale";
  }
  return "?";
}

std::vector<std::uint8_t> sign_update(const dns::Message& message, std::string_view secret,
                                      std::int64_t unix_time) {
  if (message.questions.size() != 1) throw Error(Errc::invalid_argument, "UPDATE needs one zone entry");
  const auto unsigned_bytes = dns::encode(message);
  const auto mac = token_mac(unsigned_bytes, secret, unix_time);

  dns::ResourceRecord token;
  token.owner = message.questions.front().name.prepend(std::string(kTokenLabel));
  token.type = dns::RRType::TXT;
  token.klass = static_cast<std::uint16_t>(dns::RRClass::ANY);
  token.ttl = 0;
  token.rdata = dns::TxtData{{std::string(kScheme) + std::to_string(unix_time) + ":" + crypto::to_hex(mac)}};

  auto signed_message = message;
  signed_message.additional.push_back(std::move(token));
  return dns::encode(signed_message);
}

bool has_update_token(const dns::Message& message) {
  if (message.additional.empty()) return false;
  const auto& rr = message.additional.back();
  return rr.type == dns::RRType::TXT && rr.klass == static_cast<std::uint16_t>(dns::RRClass::ANY) &&
         !rr.owner.is_root() && dns::iequals(rr.owner.first_label(), kTokenLabel);
}

TokenCheck verify_update_token(std::span<const std::uint8_t> bytes, const dns::Message& message,
                               std::span<const std::size_t> offsets, std::string_view secret,
                               std::int64_t now) {
  if (!has_update_token(message) || offsets.size() != message.additional.size()) return TokenCheck::missing;
  const auto* txt = std::get_if<dns::TxtData>(&message.additional.back().rdata);
  if (!txt || txt->strings.size() != 1) return TokenCheck::malformed;
  std::string_view value = txt->strings.front();
  if (!value.starts_with(kScheme)) return TokenCheck::malformed;
  value.remove_prefix(kScheme.size());
  const auto colon = value.find(':');
  if (colon == std::string_view::npos) return TokenCheck::malformed;

  std::int64_t t = 0;
  const auto ts = value.substr(0, colon);
  const auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), t);
  if (ec != std::errc{} || ptr != ts.data() + ts.size()) return TokenCheck::malformed;
  const auto hex = value.substr(colon + 1);
  if (hex.size() != 64) return TokenCheck::malformed;
  std::vector<std::uint8_t> given;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    unsigned v = 0;
    const auto [p, e] = std::from_chars(hex.data() + i, hex.data() + i + 2, v, 16);
    if (e != std::errc{} || p != hex.data() + i + 2) return TokenCheck::malformed;
    given.push_back(static_cast<std::uint8_t>(v));
  }

  std::vector<std::uint8_t> signed_bytes(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(offsets.back()));
  const auto arcount = static_cast<std::uint16_t>(message.additional.size() - 1);
  signed_bytes[10] = static_cast<std::uint8_t>(arcount >> 8);
  signed_bytes[11] = static_cast<std::uint8_t>(arcount);
  const auto expected = token_mac(signed_bytes, secret, t);
  if (!crypto::equal_digests(expected, given)) return TokenCheck::bad_mac;
  if (t > now + kTokenFudgeSeconds || t < now - kTokenFudgeSeconds) return TokenCheck::stale;
  return TokenCheck::valid;
}

AddressList::AddressList(const std::vector<std::string>& entries) {
  for (const auto& text : entries) {
    Entry e;
    std::string_view addr = text;
    std::optional<unsigned> prefix;
    if (const auto slash = addr.find('/'); slash != std::string_view::npos) {
      unsigned p = 0;
      const auto bits = addr.substr(slash + 1);
      const auto [ptr, ec] = std::from_chars(bits.data(), bits.data() + bits.size(), p);
      if (ec != std::errc{} || ptr != bits.data() + bits.size()) {
        throw Error(Errc::invalid_argument, "bad prefix length in '" + text + "'");
      }
      prefix = p;
      addr = addr.substr(0, slash);
    }
    if (!parse_address(addr, e.family, e.bytes)) throw Error(Errc::invalid_argument, "bad address '" + text + "'");
    e.prefix = prefix.value_or(static_cast<unsigned>(e.bytes.size() * 8));
    if (e.prefix > e.bytes.size() * 8) throw Error(Errc::invalid_argument, "prefix too long in '" + text + "'");
    entries_.push_back(std::move(e));
  }
}

bool AddressList::contains(std::string_view address) const {
  int family = 0;
  std::vector<std::uint8_t> bytes;
  if (!parse_address(address, family, bytes)) return false;
  for (const auto& e : entries_) {
    if (e.family != family) continue;
    bool match = true;
    for (unsigned bit = 0; bit < e.prefix && match; ++bit) {
      const unsigned byte = bit / 8;
      const unsigned mask = 0x80u >> (bit % 8);
      match = (e.bytes[byte] & mask) == (bytes[byte] & mask);
    }
    if (match) return true;
  }
  return false;
}

}  // namespace semdns::server
