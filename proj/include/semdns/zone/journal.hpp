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

#include <filesystem>
#include <fstream>
#include <vector>

#include "semdns/zone/zone.hpp"

namespace semdns::zone {

/// Append-only text journal. Each step is written as
///
///     diff <from> <to>
///     - <old SOA>
///     - <deleted record>...
///     + <new SOA>
///     + <added record>...
///     end
///
/// with records in master-file syntax. A step without its closing "end"
/// (interrupted write) is ignored on reading.
class JournalFile {
 public:
  explicit JournalFile(std::filesystem::path path);

  const std::filesystem::path& path() const noexcept { return path_; }

  std::vector<DiffPtr> read() const;
  void append(const Diff& diff);
  /// Replaces the file content with `diffs`.
  void rewrite(const std::vector<DiffPtr>& diffs);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::string format_diff(const Diff& diff);

/// Brings a freshly loaded zone up to date from its journal and hands it the
/// retained history. Steps that do not connect to the zone's serial are
/// dropped. Returns the number of steps replayed.
std::size_t replay_journal(Zone& zone, const std::vector<DiffPtr>& diffs);

}  // namespace semdns::zone
