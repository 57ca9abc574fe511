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

#include <random>
#include <set>

#include "doctest.h"
#include "semdns/bits.hpp"
#include "semdns/crypto.hpp"
#include "semdns/error.hpp"
#include "semdns/names.hpp"

using namespace semdns;

namespace {

std::vector<std::uint8_t> bytes_of(std::string_view s) { return {s.begin(), s.end()}; }

std::vector<std::uint8_t> random_key(std::mt19937_64& rng) {
  std::vector<std::uint8_t> key(33);
  for (auto& b : key) b = static_cast<std::uint8_t>(rng());
  return key;
}

struct Golden {
  std::vector<std::uint8_t> key;
  const char* digest_hex;
  const char* label;
  const char* eui64_hex;
};

// From tests/oracles/hash_oracle.py (pycryptodome).
std::vector<Golden> goldens() {
  std::vector<std::uint8_t> seq33(33);
  for (std::size_t i = 0; i < seq33.size(); ++i) seq33[i] = static_cast<std::uint8_t>(i);
  std::vector<std::uint8_t> k65 = {4};
  for (int i = 0; i < 64; ++i) k65.push_back(static_cast<std::uint8_t>((i * 7 + 3) & 255));
  return {
      {bytes_of("abc"), "bb1be98c142444d7a56aa3981c3942a978e4dc33",
       "rdeym30n4j2eg9cbnfd1sfb2p5wf9r1m", "d346e7098d72597d"},
      {seq33, "c31b1d87d352c7f17bc1e24942b05bdd4c3387ea", "sdejv1ymbc3z2yy1w94n5d2vvp6371zb",
       "85691e7ce7d251b4"},
      {k65, "7d261214e0376748e6477746bde0d5a4bf305686", "gnm145706xmnjtk7fx3cvs6pnkzm0pn6",
       "06e1041890ccf606"},
  };
}

}  // namespace

TEST_CASE("hash primitives against published vectors") {
  CHECK(crypto::to_hex(crypto::sha256(crypto::as_bytes("abc"))) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(crypto::to_hex(crypto::ripemd160(crypto::as_bytes("abc"))) ==
        "8eb208f7e05d987a9b044a8e98c6b087f15a0bfc");
  CHECK(crypto::to_hex(crypto::sha3_256(crypto::as_bytes("abc"))) ==
        "3a985da74fe225b2045c172d6bd390bd855f086e3e9d525b46bfe24511431532");
}

TEST_CASE("derive_name and derive_eui64 match the reference oracle") {
  for (const auto& g : goldens()) {
    const auto name = derive_name(g.key);
    CHECK(crypto::to_hex(name.digest) == g.digest_hex);
    CHECK(name.label == g.label);
    CHECK(name.label.size() == 32);
    CHECK(derive_eui64(name).to_hex() == g.eui64_hex);
    CHECK(derive_name(g.key).label == name.label);
    CHECK(SelfCertName::from_label(name.label).digest == name.digest);
  }
}

TEST_CASE("derive_name rejects empty keys") {
  CHECK_THROWS_AS(derive_name(std::span<const std::uint8_t>{}), Error);
}

TEST_CASE("verify_name verdicts") {
  const auto key = bytes_of("abc");
  const auto name = derive_name(key);
  CHECK(verify_name(name.label, key) == NameVerdict::match);
  CHECK(verify_name(to_lower(name.label) == name.label ? std::string("RDEYM30N4J2EG9CBNFD1SFB2P5WF9R1M")
                                                       : name.label,
                    key) == NameVerdict::match);
  CHECK(verify_name(name.label, bytes_of("abd")) == NameVerdict::mismatch);
  CHECK(verify_name("short", key) == NameVerdict::malformed);
  CHECK(verify_name("rdeym30n4j2eg9cbnfd1sfb2p5wf9r1a", key) == NameVerdict::malformed);
}

TEST_CASE("EUI-64 distinctness over 10^4 random keys") {
  std::mt19937_64 rng(1234);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 10000; ++i) seen.insert(derive_eui64(derive_name(random_key(rng))).value());
  CHECK(seen.size() == 10000);
}
