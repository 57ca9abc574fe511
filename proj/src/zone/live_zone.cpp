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

#include "semdns/zone/live_zone.hpp"

#include "semdns/error.hpp"

namespace semdns::zone {

LiveZone::LiveZone(Zone zone, std::optional<std::filesystem::path> journal)
    : current_(std::make_shared<const Zone>(std::move(zone))) {
  if (journal) journal_.emplace(*journal);
}

std::unique_ptr<LiveZone> LiveZone::open(const std::filesystem::path& zone_file, const Name& origin,
                                         ZoneOptions options, std::optional<std::filesystem::path> journal) {
  auto zone = Zone::load(zone_file, origin, std::move(options));
  std::size_t replayed = 0;
  std::size_t entries = 0;
  if (journal) {
    JournalFile file(*journal);
    const auto diffs = file.read();
    replayed = replay_journal(zone, diffs);
    entries = zone.journal().size();
    if (entries != diffs.size()) {
      file.rewrite({zone.journal().begin(), zone.journal().end()});
    }
  }
  auto live = std::make_unique<LiveZone>(std::move(zone), journal);
  live->replayed_ = replayed;
  live->journal_entries_ = entries;
  return live;
}

std::shared_ptr<const Zone> LiveZone::snapshot() const {
  std::lock_guard lock(publish_mu_);
  return current_;
}

DiffPtr LiveZone::mutate(const std::function<void(Zone&)>& edit) {
  std::lock_guard writer(write_mu_);
  auto next = std::make_shared<Zone>(*snapshot());
  edit(*next);
  auto diff = next->commit();
  if (!diff) return nullptr;
  if (journal_) {
    journal_->append(*diff);
    ++journal_entries_;
    if (journal_entries_ > 2 * next->options().journal_retention) {
      journal_->rewrite({next->journal().begin(), next->journal().end()});
      journal_entries_ = next->journal().size();
    }
  }
  std::lock_guard lock(publish_mu_);
  current_ = std::move(next);
  return diff;
}

void ZoneCatalog::add(std::shared_ptr<LiveZone> zone) {
  if (exact(zone->origin())) throw Error(Errc::duplicate, "zone " + zone->origin().to_string() + " loaded twice");
  zones_.push_back(std::move(zone));
}

std::shared_ptr<LiveZone> ZoneCatalog::find(const Name& name) const {
  std::shared_ptr<LiveZone> best;
  std::size_t depth = 0;
  for (const auto& z : zones_) {
    const auto origin = z->origin();
    if (name.is_subdomain_of(origin) && (!best || origin.label_count() > depth)) {
      best = z;
      depth = origin.label_count();
    }
  }
  return best;
}

std::shared_ptr<LiveZone> ZoneCatalog::exact(const Name& origin) const {
  for (const auto& z : zones_) {
    if (z->origin() == origin) return z;
  }
  return nullptr;
}

}  // namespace semdns::zone
