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

// RIPEMD-160 is only reachable through the low-level API on OpenSSL 3.0.x
// without the legacy provider.
#define OPENSSL_SUPPRESS_DEPRECATED

#include "semdns/crypto.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/ripemd.h>

#include <memory>

#include "semdns/error.hpp"

namespace semdns::crypto {

namespace {

Sha256Digest evp_digest(const EVP_MD* md, std::span<const std::uint8_t> data) {
  Sha256Digest out{};
  unsigned len = 0;
  if (md == nullptr || EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr) != 1 ||
      len != out.size()) {
    throw Error(Errc::invalid_argument, "digest computation failed");
  }
  return out;
}

}  // namespace

Sha256Digest sha256(std::span<const std::uint8_t> data) { return evp_digest(EVP_sha256(), data); }

Sha256Digest sha3_256(std::span<const std::uint8_t> data) { return evp_digest(EVP_sha3_256(), data); }

Ripemd160Digest ripemd160(std::span<const std::uint8_t> data) {
  Ripemd160Digest out{};
  RIPEMD160(data.data(), data.size(), out.data());
  return out;
}

Sha256Digest hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data) {
  Sha256Digest out{};
  unsigned len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(),
           out.data(), &len) == nullptr) {
    throw Error(Errc::invalid_argument, "hmac computation failed");
  }
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

bool equal_digests(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) noexcept {
  return a.size() == b.size() && CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

}  // namespace semdns::crypto
