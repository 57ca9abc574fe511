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
#include <vector>

#include "semdns/dns/record.hpp"

namespace semdns::dns {

enum class Opcode : std::uint8_t { query = 0, notify = 4, update = 5 };

enum class Rcode : std::uint8_t {
  noerror = 0,
  formerr = 1,
  servfail = 2,
  nxdomain = 3,
  notimp = 4,
  refused = 5,
  yxdomain = 6,
  yxrrset = 7,
  nxrrset = 8,
  notauth = 9,
  notzone = 10,
};

const char* rcode_name(Rcode rcode) noexcept;
const char* opcode_name(Opcode opcode) noexcept;

struct Header {
  std::uint16_t id = 0;
  bool qr = false;
  Opcode opcode = Opcode::query;
  bool aa = false;
  bool tc = false;
  bool rd = false;
  bool ra = false;
  bool ad = false;
  bool cd = false;
  Rcode rcode = Rcode::noerror;
  friend bool operator==(const Header&, const Header&) = default;
};

struct Question {
  Name name;
  RRType type = RRType::A;
  std::uint16_t klass = static_cast<std::uint16_t>(RRClass::IN);
  friend bool operator==(const Question&, const Question&) = default;
};

/// In UPDATE messages the sections are read as zone / prerequisite / update /
/// additional.
struct Message {
  Header header;
  std::vector<Question> questions;
  std::vector<ResourceRecord> answers;
  std::vector<ResourceRecord> authority;
  std::vector<ResourceRecord> additional;
  friend bool operator==(const Message&, const Message&) = default;
};

inline constexpr std::size_t kHeaderSize = 12;
inline constexpr std::size_t kMaxMessageSize = 65535;

/// Serializes a message. Owner names and NS/CNAME/PTR/SOA rdata names are
/// compressed when `compress` is set; SRV targets never are.
std::vector<std::uint8_t> encode(const Message& message, bool compress = true);

/// Parses a message, following compression pointers. Throws Errc::wire.
/// When `additional_offsets` is given it receives the byte offset where each
/// additional-section record starts.
Message decode(std::span<const std::uint8_t> bytes,
               std::vector<std::size_t>* additional_offsets = nullptr);

/// Encoded size of one record's rdata without compression.
std::size_t rdata_wire_size(const ResourceRecord& record);

}  // namespace semdns::dns
