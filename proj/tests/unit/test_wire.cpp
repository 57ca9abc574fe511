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

#include <doctest.h>

#include <random>

#include "semdns/dns/master_file.hpp"
#include "semdns/dns/wire.hpp"
#include "semdns/error.hpp"

using namespace semdns;
using namespace semdns::dns;

namespace {

Name N(std::string_view s) { return Name::parse(s); }

std::string random_label(std::mt19937_64& rng, std::size_t len) {
  static constexpr std::string_view chars = "abcdefghijklmnopqrstuvwxyz0123456789-_";
  std::string out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(chars[rng() % chars.size()]);
  return out;
}

/// Longest name: four labels of 63, 63, 63, 61 bytes (255 on the wire).
Name max_length_name(std::mt19937_64& rng) {
  return Name({random_label(rng, 63), random_label(rng, 63), random_label(rng, 63),
               random_label(rng, 61)});
}

Name random_name(std::mt19937_64& rng, const Name& suffix) {
  Name n = suffix;
  const auto labels = 1 + rng() % 3;
  for (std::size_t i = 0; i < labels; ++i) {
    auto candidate = n.prepend(random_label(rng, 1 + rng() % 20));
    if (candidate.wire_length() > kMaxNameLength) break;
    n = candidate;
  }
  return n;
}

ResourceRecord random_record(std::mt19937_64& rng, const Name& base) {
  const Name owner = rng() % 5 == 0 ? max_length_name(rng) : random_name(rng, base);
  const auto ttl = static_cast<std::uint32_t>(rng() % 86400);
  switch (rng() % 7) {
    case 0: return make_a(owner, ttl, "160.78.28.203");
    case 1: return make_name_record(owner, RRType::PTR, ttl, random_name(rng, base));
    case 2: return make_name_record(owner, RRType::CNAME, ttl, random_name(rng, base));
    case 3:
      return make_srv(owner, ttl, static_cast<std::uint16_t>(rng()), static_cast<std::uint16_t>(rng()),
                      static_cast<std::uint16_t>(rng()), random_name(rng, base));
    case 4: return make_txt(owner, ttl, {std::string(255, 'x'), "temperature=14", ""});
    case 5:
      return make_soa(owner, ttl, {random_name(rng, base), random_name(rng, base),
                                   static_cast<std::uint32_t>(rng()), 3600, 600, 86400, 100});
    default: {
      ResourceRecord rr;
      rr.owner = owner;
      rr.type = RRType::TLSA;
      rr.ttl = ttl;
      rr.rdata = RawData{{3, 1, 1, 0xde, 0xad, 0xbe, 0xef}};
      return rr;
    }
  }
}

}  // namespace

TEST_CASE("name parsing and limits") {
  CHECK(N("dr56.unipr.it.").to_string() == "dr56.unipr.it.");
  CHECK(Name::parse("dr56", N("unipr.it.")).to_string() == "dr56.unipr.it.");
  CHECK(Name::parse("@", N("unipr.it.")) == N("UNIPR.IT."));
  CHECK(N("a\\.b.c.").label_count() == 2);
  CHECK(N("a\\.b.c.").to_string() == "a\\.b.c.");
  CHECK_THROWS_AS(N(std::string(64, 'a') + "."), Error);
  CHECK_NOTHROW(N(std::string(63, 'a') + "."));
  std::mt19937_64 rng(1);
  const auto longest = max_length_name(rng);
  CHECK(longest.wire_length() == 255);
  CHECK_THROWS_AS(longest.prepend("a"), Error);
  CHECK(N("x.dr56.unipr.it.").is_subdomain_of(N("unipr.it.")));
  CHECK_FALSE(N("unipr.it.").is_subdomain_of(N("x.unipr.it.")));
}

TEST_CASE("canonical order keeps subtrees contiguous") {
  std::vector<Name> names = {N("b.example."), N("a.b.example."), N("example."), N("z.a.example."),
                             N("a.example.")};
  std::sort(names.begin(), names.end());
  CHECK(names[0] == N("example."));
  CHECK(names[1] == N("a.example."));
  CHECK(names[2] == N("z.a.example."));
  CHECK(names[3] == N("b.example."));
  CHECK(names[4] == N("a.b.example."));
}

TEST_CASE("wire round trip over a generated corpus") {
  std::mt19937_64 rng(42);
  const Name base = N("_iot._udp.");
  for (int iter = 0; iter < 300; ++iter) {
    Message m;
    m.header.id = static_cast<std::uint16_t>(rng());
    m.header.qr = rng() % 2;
    m.header.aa = rng() % 2;
    m.header.rd = rng() % 2;
    m.header.rcode = static_cast<Rcode>(rng() % 6);
    m.questions.push_back({random_name(rng, base), RRType::PTR, 1});
    for (int i = 0, n = static_cast<int>(rng() % 6); i < n; ++i) m.answers.push_back(random_record(rng, base));
    for (int i = 0, n = static_cast<int>(rng() % 3); i < n; ++i) m.authority.push_back(random_record(rng, base));
    for (int i = 0, n = static_cast<int>(rng() % 3); i < n; ++i) m.additional.push_back(random_record(rng, base));
    const auto compressed = encode(m, true);
    const auto plain = encode(m, false);
    CHECK(compressed.size() <= plain.size());
    CHECK(decode(compressed) == m);
    CHECK(decode(plain) == m);
  }
}

TEST_CASE("decoder rejects malformed input") {
  Message m;
  m.questions.push_back({N("dr56.unipr.it."), RRType::A, 1});
  m.answers.push_back(make_a(N("dr56.unipr.it."), 100, "160.78.28.203"));
  const auto bytes = encode(m);
  for (std::size_t cut = 0; cut < bytes.size(); ++cut) {
    CHECK_THROWS_AS(decode(std::span(bytes.data(), cut)), Error);
  }
  auto trailing = bytes;
  trailing.push_back(0);
  CHECK_THROWS_AS(decode(trailing), Error);

  // A pointer that refers to itself.
  std::vector<std::uint8_t> loop(kHeaderSize, 0);
  loop[5] = 1;  // QDCOUNT
  loop.insert(loop.end(), {0xC0, 12, 0, 1, 0, 1});
  CHECK_THROWS_AS(decode(loop), Error);
}

TEST_CASE("compression shares suffixes") {
  Message m;
  m.questions.push_back({N("_iot._udp."), RRType::PTR, 1});
  for (int i = 0; i < 10; ++i) {
    m.answers.push_back(make_name_record(N("_iot._udp."), RRType::PTR, 100,
                                         N("temperature.dr" + std::to_string(i) + "._iot._udp.")));
  }
  CHECK(encode(m, true).size() + 100 < encode(m, false).size());
}

TEST_CASE("master file parsing") {
  const auto zone = parse_master_file(R"(
$ORIGIN unipr.it.
$TTL 300
@   IN SOA ns1 hostmaster (
        2024010101 ; serial
        3600 600 86400 100 )
    IN NS ns1
ns1 IN A 160.78.28.1
dr56 100 IN A 160.78.28.203
txt 100 IN TXT "temperature=14" "a \"quoted\" string"
gen 100 IN TYPE65280 \# 3 0a0b0c
cert 100 IN TLSA 3 1 1 ( deadbeef
                         cafe )
)");
  REQUIRE(zone.records.size() == 7);
  CHECK(zone.origin == N("unipr.it."));
  CHECK(zone.records[0].type == RRType::SOA);
  CHECK(std::get<SoaData>(zone.records[0].rdata).serial == 2024010101u);
  CHECK(zone.records[0].ttl == 300);
  CHECK(zone.records[1].owner == N("unipr.it."));
  CHECK(zone.records[1].type == RRType::NS);
  CHECK(zone.records[3].to_string() == "dr56.unipr.it. 100 IN A 160.78.28.203");
  CHECK(std::get<TxtData>(zone.records[4].rdata).strings[1] == "a \"quoted\" string");
  CHECK(zone.records[5].to_string() == "gen.unipr.it. 100 IN TYPE65280 \\# 3 0a0b0c");
  CHECK(zone.records[6].rdata_text() == "3 1 1 deadbeefcafe");

  // Formatting and re-parsing gives back the same records.
  const auto text = format_master_file(zone.origin, zone.records);
  const auto again = parse_master_file(text);
  CHECK(again.records == zone.records);
}

TEST_CASE("master file errors carry line numbers") {
  try {
    parse_master_file("$ORIGIN x.\na IN A 1.2.3.4\nb IN A 300.1.1.1\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_master_file("a IN SRV 1 2 3\n", N("x.")), Error);
  CHECK_THROWS_AS(parse_master_file("a IN TXT \"open\n", N("x.")), Error);
  CHECK_THROWS_AS(parse_master_file("a IN A ( 1.2.3.4\n", N("x.")), Error);
}
