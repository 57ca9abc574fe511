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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semdns/dns/record.hpp"

namespace semdns::dns {

/// Records parsed from RFC 1035 master-file text. Supports $ORIGIN, $TTL,
/// relative names, "@", owner inheritance, parenthesised continuation lines,
/// quoted strings, ";" comments and the RFC 3597 "\# len hex" rdata form.
struct MasterFile {
  Name origin;
  std::vector<ResourceRecord> records;
};

MasterFile parse_master_file(std::string_view text, const Name& origin = Name(),
                             std::uint32_t default_ttl = 3600);
MasterFile load_master_file(const std::filesystem::path& path, const Name& origin = Name());

/// Parses one complete, self-contained record line ("owner ttl class type rdata").
ResourceRecord parse_record_line(std::string_view line, const Name& origin = Name());

/// Rdata from presentation tokens for a given type.
RData parse_rdata(RRType type, std::span<const std::string> tokens, const Name& origin);

/// One record per line, owner names fully qualified, preceded by $ORIGIN.
std::string format_master_file(const Name& origin, std::span<const ResourceRecord> records);

}  // namespace semdns::dns
