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

#include <span>
#include <string>

#include "semdns/dns/wire.hpp"

namespace semdns::client {

/// dig-style presentation: header, flags and the non-empty sections. Owner,
/// TTL, class and type columns end at tab stops 24, 32, 40 and 48.
std::string format_dig(const dns::Message& message);

/// One dig-style line per record, as printed for zone transfers.
std::string format_records(std::span<const dns::ResourceRecord> records);
std::string format_record_line(const dns::ResourceRecord& record);

/// Stable JSON rendering:
///   {"id":n, "opcode":"QUERY", "status":"NOERROR", "flags":["qr","aa"],
///    "question":[{"name","type","class"}],
///    "answer"|"authority"|"additional":[{"name","ttl","class","type","data"}]}
/// OPT pseudo-records appear as {"edns":{"udp":n}} instead of in "additional".
std::string format_json(const dns::Message& message, int indent = 2);
std::string format_records_json(std::span<const dns::ResourceRecord> records, int indent = 2);

}  // namespace semdns::client
