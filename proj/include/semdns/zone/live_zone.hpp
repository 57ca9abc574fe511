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
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "semdns/zone/journal.hpp"
#include "semdns/zone/zone.hpp"

namespace semdns::zone {

/// A zone shared between many readers and one writer. Readers take immutable
/// snapshots; writers edit a private copy that replaces the published one
/// after its journal step is on disk.
class LiveZone {
 public:
  explicit LiveZone(Zone zone, std::optional<std::filesystem::path> journal = std::nullopt);

  /// Loads a master file and replays the journal next to it, if any.
  static std::unique_ptr<LiveZone> open(const std::filesystem::path& zone_file, const Name& origin,
                                        ZoneOptions options,
                                        std::optional<std::filesystem::path> journal = std::nullopt);

  std::shared_ptr<const Zone> snapshot() const;
  Name origin() const { return snapshot()->origin(); }

  /// Runs `edit` on a copy of the current zone, then commits and publishes it.
  /// Returns the journal step, or nullptr when `edit` staged nothing. When
  /// `edit` throws, the published zone is unchanged.
  DiffPtr mutate(const std::function<void(Zone&)>& edit);

  std::size_t replayed_on_open() const noexcept { return replayed_; }

 private:
  mutable std::mutex publish_mu_;
  std::mutex write_mu_;
  std::shared_ptr<const Zone> current_;
  std::optional<JournalFile> journal_;
  std::size_t journal_entries_ = 0;
  std::size_t replayed_ = 0;
};

/// The zones served by one server, looked up by longest matching origin.
class ZoneCatalog {
 public:
  void add(std::shared_ptr<LiveZone> zone);
  /// Zone whose origin is the closest ancestor of `name`, or nullptr.
  std::shared_ptr<LiveZone> find(const Name& name) const;
  std::shared_ptr<LiveZone> exact(const Name& origin) const;
  const std::vector<std::shared_ptr<LiveZone>>& zones() const noexcept { return zones_; }

 private:
  std::vector<std::shared_ptr<LiveZone>> zones_;
};

}  // namespace semdns::zone
