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

#include "semdns/client/format.hpp"

#include <json.hpp>

namespace semdns::client {

using dns::Message;
using dns::ResourceRecord;
using dns::RRType;
using nlohmann::ordered_json;

namespace {

constexpr std::size_t kStops[] = {24, 32, 40, 48};

/// Appends `field` and pads with tabs up to `stop` (at least one tab).
void column(std::string& line, std::size_t& col, const std::string& field, std::size_t stop) {
  line += field;
  col += field.size();
  do {
    line.push_back('\t');
    col = (col / 8 + 1) * 8;
  } while (col < stop);
}

std::string flags_text(const dns::Header& h) {
  std::string out;
  const auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out.push_back(' ');
    out += name;
  };
  add(h.qr, "qr");
  add(h.aa, "aa");
  add(h.tc, "tc");
  add(h.rd, "rd");
  add(h.ra, "ra");
  add(h.ad, "ad");
  add(h.cd, "cd");
  return out;
}

std::vector<std::string> flag_list(const dns::Header& h) {
  std::vector<std::string> out;
  if (h.qr) out.push_back("qr");
  if (h.aa) out.push_back("aa");
  if (h.tc) out.push_back("tc");
  if (h.rd) out.push_back("rd");
  if (h.ra) out.push_back("ra");
  if (h.ad) out.push_back("ad");
  if (h.cd) out.push_back("cd");
  return out;
}

const ResourceRecord* find_opt(const Message& m) {
  for (const auto& rr : m.additional) {
    if (rr.type == RRType::OPT) return &rr;
  }
  return nullptr;
}

std::vector<ResourceRecord> without_opt(const std::vector<ResourceRecord>& records) {
  std::vector<ResourceRecord> out;
  for (const auto& rr : records) {
    if (rr.type != RRType::OPT) out.push_back(rr);
  }
  return out;
}

ordered_json record_json(const ResourceRecord& rr) {
  ordered_json j;
  j["name"] = rr.owner.to_string();
  j["ttl"] = rr.ttl;
  j["class"] = dns::class_name(rr.klass);
  j["type"] = dns::type_name(rr.type);
  j["data"] = rr.rdata_text();
  return j;
}

ordered_json records_json(std::span<const ResourceRecord> records) {
  ordered_json arr = ordered_json::array();
  for (const auto& rr : records) arr.push_back(record_json(rr));
  return arr;
}

}  // namespace

std::string format_record_line(const ResourceRecord& rr) {
  std::string line;
  std::size_t col = 0;
  column(line, col, rr.owner.to_string(), kStops[0]);
  column(line, col, std::to_string(rr.ttl), kStops[1]);
  column(line, col, dns::class_name(rr.klass), kStops[2]);
  column(line, col, dns::type_name(rr.type), kStops[3]);
  line += rr.rdata_text();
  return line;
}

std::string format_records(std::span<const ResourceRecord> records) {
  std::string out;
  for (const auto& rr : records) out += format_record_line(rr) + "\n";
  return out;
}

std::string format_dig(const Message& m) {
  const auto additional = without_opt(m.additional);
  const auto* opt = find_opt(m);
  std::string out = ";; ->>HEADER<<- opcode: " + std::string(dns::opcode_name(m.header.opcode)) +
                    ", status: " + dns::rcode_name(m.header.rcode) + ", id: " + std::to_string(m.header.id) + "\n";
  const bool update = m.header.opcode == dns::Opcode::update;
  out += ";; flags: " + flags_text(m.header) + "; " + (update ? "ZONE: " : "QUERY: ") +
         std::to_string(m.questions.size()) + ", " + (update ? "PREREQ: " : "ANSWER: ") +
         std::to_string(m.answers.size()) + ", " + (update ? "UPDATE: " : "AUTHORITY: ") +
         std::to_string(m.authority.size()) + ", ADDITIONAL: " + std::to_string(additional.size()) + "\n";
  if (opt) {
    out += "\n;; OPT PSEUDOSECTION:\n; EDNS: version: 0, udp: " + std::to_string(opt->klass) + "\n";
  }
  if (!m.questions.empty()) {
    out += update ? "\n;; ZONE SECTION:\n" : "\n;; QUESTION SECTION:\n";
    for (const auto& q : m.questions) {
      std::string line;
      std::size_t col = 0;
      column(line, col, ";" + q.name.to_string(), kStops[0]);
      column(line, col, "", kStops[1]);
      column(line, col, dns::class_name(q.klass), kStops[2]);
      line += dns::type_name(q.type);
      out += line + "\n";
    }
  }
  const auto section = [&](const char* title, const std::vector<ResourceRecord>& records) {
    if (records.empty()) return;
    out += std::string("\n;; ") + title + " SECTION:\n" + format_records(records);
  };
  section(update ? "PREREQUISITE" : "ANSWER", m.answers);
  section(update ? "UPDATE" : "AUTHORITY", m.authority);
  section("ADDITIONAL", additional);
  return out;
}

std::string format_json(const Message& m, int indent) {
  ordered_json j;
  j["id"] = m.header.id;
  j["opcode"] = dns::opcode_name(m.header.opcode);
  j["status"] = dns::rcode_name(m.header.rcode);
  j["flags"] = flag_list(m.header);
  ordered_json questions = ordered_json::array();
  for (const auto& q : m.questions) {
    ordered_json qj;
    qj["name"] = q.name.to_string();
    qj["type"] = dns::type_name(q.type);
    qj["class"] = dns::class_name(q.klass);
    questions.push_back(qj);
  }
  j["question"] = questions;
  j["answer"] = records_json(m.answers);
  j["authority"] = records_json(m.authority);
  const auto additional = without_opt(m.additional);
  j["additional"] = records_json(additional);
  if (const auto* opt = find_opt(m)) j["edns"] = {{"udp", opt->klass}};
  return j.dump(indent);
}

std::string format_records_json(std::span<const ResourceRecord> records, int indent) {
  return records_json(records).dump(indent);
}

}  // namespace semdns::client
