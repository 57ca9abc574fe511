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

#include "semdns/dns/master_file.hpp"

#include <arpa/inet.h>

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "semdns/error.hpp"

namespace semdns::dns {

namespace {

struct Token {
  std::string text;
  bool quoted = false;
};

/// A logical entry: the tokens of one record (continuation lines joined) and
/// whether the first physical line started with whitespace.
struct Entry {
  std::vector<Token> tokens;
  bool inherits_owner = false;
  std::size_t line = 0;
};

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(Errc::parse, "line " + std::to_string(line) + ": " + what);
}

std::vector<Entry> tokenize(std::string_view text) {
  std::vector<Entry> entries;
  Entry current;
  int depth = 0;
  std::size_t line = 1;
  bool line_start = true;
  std::size_t i = 0;

  auto flush = [&] {
    if (!current.tokens.empty()) entries.push_back(std::move(current));
    current = Entry{};
  };

  while (i < text.size()) {
    const char c = text[i];
    if (line_start) {
      line_start = false;
      if (depth == 0) {
        flush();
        current.line = line;
        current.inherits_owner = (c == ' ' || c == '\t');
      }
    }
    if (c == '\n') {
      ++line;
      line_start = true;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '(') {
      ++depth;
      ++i;
      continue;
    }
    if (c == ')') {
      if (--depth < 0) fail(line, "unbalanced ')'");
      ++i;
      continue;
    }
    Token tok;
    if (c == '"') {
      tok.quoted = true;
      ++i;
      while (true) {
        if (i >= text.size()) fail(line, "unterminated quoted string");
        const char q = text[i];
        if (q == '"') {
          ++i;
          break;
        }
        if (q == '\n') ++line;
        if (q == '\\' && i + 1 < text.size()) {
          if (i + 3 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])) &&
              std::isdigit(static_cast<unsigned char>(text[i + 2])) &&
              std::isdigit(static_cast<unsigned char>(text[i + 3]))) {
            const int v = (text[i + 1] - '0') * 100 + (text[i + 2] - '0') * 10 + (text[i + 3] - '0');
            if (v > 255) fail(line, "escape out of range");
            tok.text.push_back(static_cast<char>(v));
            i += 4;
          } else {
            tok.text.push_back(text[i + 1]);
            i += 2;
          }
          continue;
        }
        tok.text.push_back(q);
        ++i;
      }
    } else {
      // Unquoted tokens keep their escapes; names are unescaped by Name::parse.
      while (i < text.size()) {
        const char u = text[i];
        if (u == ' ' || u == '\t' || u == '\r' || u == '\n' || u == ';' || u == '(' || u == ')') break;
        if (u == '\\' && i + 1 < text.size()) {
          tok.text.push_back(u);
          tok.text.push_back(text[i + 1]);
          i += 2;
          continue;
        }
        tok.text.push_back(u);
        ++i;
      }
    }
    current.tokens.push_back(std::move(tok));
  }
  if (depth != 0) fail(line, "unbalanced '('");
  flush();
  return entries;
}

std::optional<std::uint32_t> parse_u32(std::string_view s) {
  std::uint32_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::uint32_t need_u32(const std::string& s, const char* what) {
  if (auto v = parse_u32(s)) return *v;
  throw Error(Errc::parse, std::string("bad ") + what + " '" + s + "'");
}

std::uint16_t need_u16(const std::string& s, const char* what) {
  const auto v = need_u32(s, what);
  if (v > 0xFFFF) throw Error(Errc::parse, std::string(what) + " out of range: " + s);
  return static_cast<std::uint16_t>(v);
}

std::uint8_t need_u8(const std::string& s, const char* what) {
  const auto v = need_u32(s, what);
  if (v > 0xFF) throw Error(Errc::parse, std::string(what) + " out of range: " + s);
  return static_cast<std::uint8_t>(v);
}

std::vector<std::uint8_t> parse_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw Error(Errc::parse, "odd number of hex digits");
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(hex.data() + i, hex.data() + i + 2, v, 16);
    if (ec != std::errc{} || ptr != hex.data() + i + 2) throw Error(Errc::parse, "bad hex digits");
    out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

void need_count(std::span<const std::string> tokens, std::size_t n, RRType type) {
  if (tokens.size() != n) {
    throw Error(Errc::parse, type_name(type) + " rdata needs " + std::to_string(n) + " fields, got " +
                                 std::to_string(tokens.size()));
  }
}

bool is_class(std::string_view s) { return s == "IN" || s == "in" || s == "CH" || s == "HS"; }

}  // namespace

RData parse_rdata(RRType type, std::span<const std::string> tokens, const Name& origin) {
  if (!tokens.empty() && tokens[0] == "\\#") {
    if (tokens.size() < 2) throw Error(Errc::parse, "generic rdata needs a length");
    const auto len = need_u16(tokens[1], "rdata length");
    std::string hex;
    for (std::size_t i = 2; i < tokens.size(); ++i) hex += tokens[i];
    auto bytes = parse_hex(hex);
    if (bytes.size() != len) throw Error(Errc::parse, "generic rdata length mismatch");
    return RawData{std::move(bytes)};
  }
  switch (type) {
    case RRType::A: {
      need_count(tokens, 1, type);
      AData a;
      if (inet_pton(AF_INET, tokens[0].c_str(), a.address.data()) != 1) {
        throw Error(Errc::parse, "bad IPv4 address '" + tokens[0] + "'");
      }
      return a;
    }
    case RRType::AAAA: {
      need_count(tokens, 1, type);
      AaaaData a;
      if (inet_pton(AF_INET6, tokens[0].c_str(), a.address.data()) != 1) {
        throw Error(Errc::parse, "bad IPv6 address '" + tokens[0] + "'");
      }
      return a;
    }
    case RRType::NS:
    case RRType::CNAME:
    case RRType::PTR:
      need_count(tokens, 1, type);
      return NameData{Name::parse(tokens[0], origin)};
    case RRType::SOA: {
      need_count(tokens, 7, type);
      return SoaData{Name::parse(tokens[0], origin), Name::parse(tokens[1], origin),
                     need_u32(tokens[2], "serial"), need_u32(tokens[3], "refresh"),
                     need_u32(tokens[4], "retry"),  need_u32(tokens[5], "expire"),
                     need_u32(tokens[6], "minimum")};
    }
    case RRType::SRV:
      need_count(tokens, 4, type);
      return SrvData{need_u16(tokens[0], "priority"), need_u16(tokens[1], "weight"),
                     need_u16(tokens[2], "port"), Name::parse(tokens[3], origin)};
    case RRType::TXT: {
      if (tokens.empty()) throw Error(Errc::parse, "TXT needs at least one string");
      TxtData t;
      for (const auto& s : tokens) {
        if (s.size() > 255) throw Error(Errc::parse, "TXT character-string longer than 255 bytes");
        t.strings.push_back(s);
      }
      return t;
    }
    case RRType::TLSA: {
      if (tokens.size() < 4) throw Error(Errc::parse, "TLSA needs usage selector type data");
      RawData raw;
      raw.bytes = {need_u8(tokens[0], "usage"), need_u8(tokens[1], "selector"),
                   need_u8(tokens[2], "matching type")};
      std::string hex;
      for (std::size_t i = 3; i < tokens.size(); ++i) hex += tokens[i];
      const auto data = parse_hex(hex);
      raw.bytes.insert(raw.bytes.end(), data.begin(), data.end());
      return raw;
    }
    default:
      throw Error(Errc::parse, "type " + type_name(type) + " needs the \\# generic rdata form");
  }
}

MasterFile parse_master_file(std::string_view text, const Name& origin, std::uint32_t default_ttl) {
  MasterFile out{origin, {}};
  Name current_origin = origin;
  std::optional<Name> last_owner;
  std::uint32_t ttl_default = default_ttl;
  std::optional<std::uint32_t> last_ttl;

  for (const auto& entry : tokenize(text)) {
    try {
      const auto& tok = entry.tokens;
      if (!entry.inherits_owner && !tok[0].quoted && tok[0].text.starts_with("$")) {
        if (tok[0].text == "$ORIGIN") {
          if (tok.size() != 2) fail(entry.line, "$ORIGIN takes one name");
          current_origin = Name::parse(tok[1].text, current_origin);
          if (out.records.empty()) out.origin = current_origin;
        } else if (tok[0].text == "$TTL") {
          if (tok.size() != 2) fail(entry.line, "$TTL takes one value");
          ttl_default = need_u32(tok[1].text, "TTL");
        } else {
          fail(entry.line, "unsupported directive " + tok[0].text);
        }
        continue;
      }

      std::size_t i = 0;
      Name owner;
      if (entry.inherits_owner) {
        if (!last_owner) fail(entry.line, "record without an owner");
        owner = *last_owner;
      } else {
        owner = Name::parse(tok[i++].text, current_origin);
      }

      std::optional<std::uint32_t> ttl;
      std::optional<RRType> type;
      for (int fields = 0; fields < 3 && i < tok.size() && !type; ++fields) {
        const auto& t = tok[i].text;
        if (auto v = parse_u32(t); v && !ttl) {
          ttl = *v;
        } else if (is_class(t)) {
          if (t != "IN" && t != "in") fail(entry.line, "only class IN is supported");
        } else if (auto ty = type_from_name(t)) {
          type = *ty;
        } else {
          fail(entry.line, "expected TTL, class or type, got '" + t + "'");
        }
        ++i;
      }
      if (!type) fail(entry.line, "missing record type");

      std::vector<std::string> rdata_tokens;
      for (; i < tok.size(); ++i) rdata_tokens.push_back(tok[i].text);

      ResourceRecord rr;
      rr.owner = owner;
      rr.type = *type;
      rr.ttl = ttl.value_or(last_ttl.value_or(ttl_default));
      if (ttl) last_ttl = ttl;
      rr.rdata = parse_rdata(*type, rdata_tokens, current_origin);
      if (*type == RRType::SOA && !ttl && !last_ttl) rr.ttl = ttl_default;
      last_owner = owner;
      out.records.push_back(std::move(rr));
    } catch (const Error& e) {
      if (std::string_view(e.what()).starts_with("line ")) throw;
      fail(entry.line, e.what());
    }
  }
  return out;
}

MasterFile load_master_file(const std::filesystem::path& path, const Name& origin) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot read zone file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_master_file(text.str(), origin);
}

ResourceRecord parse_record_line(std::string_view line, const Name& origin) {
  auto parsed = parse_master_file(line, origin);
  if (parsed.records.size() != 1) throw Error(Errc::parse, "expected exactly one record");
  return std::move(parsed.records.front());
}

std::string format_master_file(const Name& origin, std::span<const ResourceRecord> records) {
  std::string out = "$ORIGIN " + origin.to_string() + "\n";
  for (const auto& rr : records) {
    out += rr.to_string();
    out.push_back('\n');
  }
  return out;
}

}  // namespace semdns::dns
