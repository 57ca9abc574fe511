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

#include "semdns/dns/record.hpp"

#include <arpa/inet.h>

#include <charconv>

#include "semdns/bits.hpp"
#include "semdns/crypto.hpp"
#include "semdns/error.hpp"

namespace semdns::dns {

namespace {

struct TypeEntry {
  RRType type;
  std::string_view name;
};

constexpr TypeEntry kTypes[] = {
    {RRType::A, "A"},       {RRType::NS, "NS"},     {RRType::CNAME, "CNAME"},
    {RRType::SOA, "SOA"},   {RRType::PTR, "PTR"},   {RRType::TXT, "TXT"},
    {RRType::AAAA, "AAAA"}, {RRType::SRV, "SRV"},   {RRType::OPT, "OPT"},
    {RRType::TLSA, "TLSA"}, {RRType::IXFR, "IXFR"}, {RRType::AXFR, "AXFR"},
    {RRType::ANY, "ANY"},
};

}  // namespace

std::string type_name(RRType type) {
  for (const auto& e : kTypes) {
    if (e.type == type) return std::string(e.name);
  }
  return "TYPE" + std::to_string(static_cast<unsigned>(type));
}

std::optional<RRType> type_from_name(std::string_view text) {
  const auto upper = [&] {
    std::string s(text);
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
  }();
  if (upper == "ALL") return RRType::ANY;
  for (const auto& e : kTypes) {
    if (e.name == upper) return e.type;
  }
  if (upper.rfind("TYPE", 0) == 0 && upper.size() > 4) {
    unsigned v = 0;
    const auto* first = upper.data() + 4;
    const auto* last = upper.data() + upper.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc{} && ptr == last && v <= 0xFFFF) return static_cast<RRType>(v);
  }
  return std::nullopt;
}

std::string class_name(std::uint16_t klass) {
  switch (klass) {
    case 1: return "IN";
    case 254: return "NONE";
    case 255: return "ANY";
    default: return "CLASS" + std::to_string(klass);
  }
}

std::string TxtData::joined() const {
  std::string out;
  for (const auto& s : strings) out += s;
  return out;
}

std::string quote_character_string(std::string_view s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(static_cast<char>(c));
    } else if (c < 0x20 || c >= 0x7f) {
      out.push_back('\\');
      out.push_back(static_cast<char>('0' + c / 100));
      out.push_back(static_cast<char>('0' + (c / 10) % 10));
      out.push_back(static_cast<char>('0' + c % 10));
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  out.push_back('"');
  return out;
}

std::string ResourceRecord::rdata_text() const {
  struct Visitor {
    RRType type;
    std::string operator()(const RawData& raw) const {
      if (type == RRType::TLSA && raw.bytes.size() >= 3) {
        return std::to_string(raw.bytes[0]) + " " + std::to_string(raw.bytes[1]) + " " +
               std::to_string(raw.bytes[2]) + " " +
               crypto::to_hex(std::span(raw.bytes).subspan(3));
      }
      std::string out = "\\# " + std::to_string(raw.bytes.size());
      if (!raw.bytes.empty()) out += " " + crypto::to_hex(raw.bytes);
      return out;
    }
    std::string operator()(const AData& a) const {
      char buf[INET_ADDRSTRLEN];
      inet_ntop(AF_INET, a.address.data(), buf, sizeof buf);
      return buf;
    }
    std::string operator()(const AaaaData& a) const {
      char buf[INET6_ADDRSTRLEN];
      inet_ntop(AF_INET6, a.address.data(), buf, sizeof buf);
      return buf;
    }
    std::string operator()(const NameData& n) const { return n.name.to_string(); }
    std::string operator()(const SoaData& s) const {
      return s.mname.to_string() + " " + s.rname.to_string() + " " + std::to_string(s.serial) +
             " " + std::to_string(s.refresh) + " " + std::to_string(s.retry) + " " +
             std::to_string(s.expire) + " " + std::to_string(s.minimum);
    }
    std::string operator()(const SrvData& s) const {
      return std::to_string(s.priority) + " " + std::to_string(s.weight) + " " +
             std::to_string(s.port) + " " + s.target.to_string();
    }
    std::string operator()(const TxtData& t) const {
      std::string out;
      for (const auto& s : t.strings) {
        if (!out.empty()) out.push_back(' ');
        out += quote_character_string(s);
      }
      return out;
    }
  };
  return std::visit(Visitor{type}, rdata);
}

std::string ResourceRecord::to_string() const {
  return owner.to_string() + " " + std::to_string(ttl) + " " + class_name(klass) + " " +
         type_name(type) + " " + rdata_text();
}

bool record_less(const ResourceRecord& a, const ResourceRecord& b) {
  if (auto c = a.owner <=> b.owner; c != 0) return c < 0;
  if (a.type != b.type) return a.type < b.type;
  if (a.klass != b.klass) return a.klass < b.klass;
  const auto ra = a.rdata_text();
  const auto rb = b.rdata_text();
  if (ra != rb) return ra < rb;
  return a.ttl < b.ttl;
}

bool same_rdata(const ResourceRecord& a, const ResourceRecord& b) {
  return a.owner == b.owner && a.type == b.type && a.klass == b.klass && a.rdata == b.rdata;
}

ResourceRecord make_a(Name owner, std::uint32_t ttl, std::string_view dotted_quad) {
  AData a;
  if (inet_pton(AF_INET, std::string(dotted_quad).c_str(), a.address.data()) != 1) {
    throw Error(Errc::invalid_argument, "not an IPv4 address: " + std::string(dotted_quad));
  }
  return {std::move(owner), RRType::A, 1, ttl, a};
}

ResourceRecord make_name_record(Name owner, RRType type, std::uint32_t ttl, Name target) {
  return {std::move(owner), type, 1, ttl, NameData{std::move(target)}};
}

ResourceRecord make_srv(Name owner, std::uint32_t ttl, std::uint16_t priority, std::uint16_t weight,
                        std::uint16_t port, Name target) {
  return {std::move(owner), RRType::SRV, 1, ttl, SrvData{priority, weight, port, std::move(target)}};
}

ResourceRecord make_txt(Name owner, std::uint32_t ttl, std::vector<std::string> strings) {
  for (const auto& s : strings) {
    if (s.size() > 255) throw Error(Errc::invalid_argument, "TXT character-string longer than 255 bytes");
  }
  return {std::move(owner), RRType::TXT, 1, ttl, TxtData{std::move(strings)}};
}

ResourceRecord make_soa(Name owner, std::uint32_t ttl, SoaData soa) {
  return {std::move(owner), RRType::SOA, 1, ttl, std::move(soa)};
}

}  // namespace semdns::dns
