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

#include "semdns/zone/journal.hpp"

#include <sstream>

#include "semdns/dns/master_file.hpp"
#include "semdns/error.hpp"

namespace semdns::zone {

JournalFile::JournalFile(std::filesystem::path path) : path_(std::move(path)) {}

std::string format_diff(const Diff& diff) {
  std::string out = "diff " + std::to_string(diff.from()) + " " + std::to_string(diff.to()) + "\n";
  out += "- " + diff.old_soa.to_string() + "\n";
  for (const auto& rr : diff.deleted) out += "- " + rr.to_string() + "\n";
  out += "+ " + diff.new_soa.to_string() + "\n";
  for (const auto& rr : diff.added) out += "+ " + rr.to_string() + "\n";
  out += "end\n";
  return out;
}

std::vector<DiffPtr> JournalFile::read() const {
  std::vector<DiffPtr> out;
  std::ifstream in(path_);
  if (!in) return out;

  std::string line;
  std::size_t lineno = 0;
  std::shared_ptr<Diff> current;
  bool have_old = false;
  bool have_new = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      if (line.starts_with("diff ")) {
        current = std::make_shared<Diff>();
        have_old = have_new = false;
      } else if (line == "end") {
        if (!current || !have_old || !have_new) throw Error(Errc::parse, "incomplete step");
        out.push_back(std::move(current));
        current.reset();
      } else if (current && (line.starts_with("- ") || line.starts_with("+ "))) {
        auto rr = dns::parse_record_line(line.substr(2));
        const bool deletion = line[0] == '-';
        if (rr.type == dns::RRType::SOA) {
          (deletion ? current->old_soa : current->new_soa) = std::move(rr);
          (deletion ? have_old : have_new) = true;
        } else {
          (deletion ? current->deleted : current->added).push_back(std::move(rr));
        }
      } else {
        throw Error(Errc::parse, "unexpected line");
      }
    } catch (const Error& e) {
      throw Error(Errc::parse, path_.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void JournalFile::append(const Diff& diff) {
  if (!out_.is_open()) {
    out_.open(path_, std::ios::app);
    if (!out_) throw Error(Errc::io, "cannot open journal " + path_.string());
  }
  out_ << format_diff(diff);
  out_.flush();
  if (!out_) throw Error(Errc::io, "cannot write journal " + path_.string());
}

void JournalFile::rewrite(const std::vector<DiffPtr>& diffs) {
  if (out_.is_open()) out_.close();
  const auto tmp = std::filesystem::path(path_.string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw Error(Errc::io, "cannot write journal " + tmp.string());
    for (const auto& d : diffs) f << format_diff(*d);
    f.flush();
    if (!f) throw Error(Errc::io, "cannot write journal " + tmp.string());
  }
  std::filesystem::rename(tmp, path_);
}

std::size_t replay_journal(Zone& zone, const std::vector<DiffPtr>& diffs) {
  // Keep the longest contiguous run that ends at the last step.
  std::size_t begin = diffs.size();
  while (begin > 0 && (begin == diffs.size() || diffs[begin - 1]->to() == diffs[begin]->from())) --begin;
  if (begin == diffs.size()) return 0;

  std::size_t first_new = diffs.size();
  for (std::size_t i = begin; i < diffs.size(); ++i) {
    if (diffs[i]->from() == zone.serial()) {
      first_new = i;
      break;
    }
  }
  const bool up_to_date = diffs.back()->to() == zone.serial();
  if (first_new == diffs.size() && !up_to_date) return 0;

  const std::size_t history_end = up_to_date ? diffs.size() : first_new;
  zone.adopt_history({diffs.begin() + static_cast<std::ptrdiff_t>(begin),
                      diffs.begin() + static_cast<std::ptrdiff_t>(history_end)});
  std::size_t replayed = 0;
  for (std::size_t i = history_end; i < diffs.size(); ++i, ++replayed) zone.apply(diffs[i]);
  return replayed;
}

}  // namespace semdns::zone
