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
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "semdns/dns/name.hpp"

namespace semdns::dns {

enum class RRType : std::uint16_t {
  A = 1,
  NS = 2,
  CNAME = 5,
  SOA = 6,
  PTR = 12,
  TXT = 16,
  AAAA = 28,
  SRV = 33,
  OPT = 41,
  TLSA = 52,
  IXFR = 251,
  AXFR = 252,
  ANY = 255,
};

enum class RRClass : std::uint16_t { IN = 1, NONE = 254, ANY = 255 };

/// Mnemonic, or TYPEnnn for types without one.
std::string type_name(RRType type);
/// Accepts mnemonics (case-insensitive), "ALL" as ANY, and TYPEnnn.
std::optional<RRType> type_from_name(std::string_view text);
std::string class_name(std::uint16_t klass);

struct AData {
  std::array<std::uint8_t, 4> address{};
  friend bool operator==(const AData&, const AData&) = default;
};

struct AaaaData {
  std::array<std::uint8_t, 16> address{};
  friend bool operator==(const AaaaData&, const AaaaData&) = default;
};

/// NS, CNAME and PTR.
struct NameData {
  Name name;
  friend bool operator==(const NameData&, const NameData&) = default;
};

struct SoaData {
  Name mname;
  Name rname;
  std::uint32_t serial = 0;
  std::uint32_t refresh = 0;
  std::uint32_t retry = 0;
  std::uint32_t expire = 0;
  std::uint32_t minimum = 0;
  friend bool operator==(const SoaData&, const SoaData&) = default;
};

struct SrvData {
  std::uint16_t priority = 0;
  std::uint16_t weight = 0;
  std::uint16_t port = 0;
  Name target;
  friend bool operator==(const SrvData&, const SrvData&) = default;
};

/// One or more character-strings of at most 255 bytes each.
struct TxtData {
  std::vector<std::string> strings;
  std::string joined() const;
  friend bool operator==(const TxtData&, const TxtData&) = default;
};

/// Opaque rdata: TLSA, unknown types, OPT, and the empty rdata of UPDATE deletes.
struct RawData {
  std::vector<std::uint8_t> bytes;
  friend bool operator==(const RawData&, const RawData&) = default;
};

using RData = std::variant<RawData, AData, AaaaData, NameData, SoaData, SrvData, TxtData>;

struct ResourceRecord {
  Name owner;
  RRType type = RRType::A;
  std::uint16_t klass = static_cast<std::uint16_t>(RRClass::IN);
  std::uint32_t ttl = 0;
  RData rdata;

  /// Presentation form of the rdata alone.
  std::string rdata_text() const;
  /// Master-file line: "<owner> <ttl> <class> <type> <rdata>".
  std::string to_string() const;

  friend bool operator==(const ResourceRecord&, const ResourceRecord&) = default;
};

/// Deterministic total order: owner (canonical), type, rdata text, ttl.
bool record_less(const ResourceRecord& a, const ResourceRecord& b);

/// Same owner, type, class and rdata; TTL ignored.
bool same_rdata(const ResourceRecord& a, const ResourceRecord& b);

std::string quote_character_string(std::string_view s);

// Convenience constructors.
ResourceRecord make_a(Name owner, std::uint32_t ttl, std::string_view dotted_quad);
ResourceRecord make_name_record(Name owner, RRType type, std::uint32_t ttl, Name target);
ResourceRecord make_srv(Name owner, std::uint32_t ttl, std::uint16_t priority, std::uint16_t weight,
                        std::uint16_t port, Name target);
ResourceRecord make_txt(Name owner, std::uint32_t ttl, std::vector<std::string> strings);
ResourceRecord make_soa(Name owner, std::uint32_t ttl, SoaData soa);

}  // namespace semdns::dns
