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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semdns/zone/live_zone.hpp"

namespace semdns::server {

struct ZoneSource {
  std::filesystem::path file;
  std::optional<std::filesystem::path> journal;
  /// Taken from the file's SOA when unset.
  std::optional<dns::Name> origin;
  zone::SplitPolicy split;
};

struct ServerConfig {
  std::string listen = "127.0.0.1";
  std::uint16_t port = 5353;
  std::vector<ZoneSource> zones;
  std::size_t datagram_cap = 1460;
  std::string update_secret;
  std::vector<std::string> update_allow;
  std::size_t journal_retention = 1024;
  std::uint32_t discovery_ttl = 100;
  std::size_t min_prefix = 2;
  unsigned udp_workers = 2;
  std::size_t max_connections = 64;
  std::chrono::milliseconds idle_timeout{10000};
};

/// Parses the JSON configuration. Relative paths are resolved against
/// `base_dir`. Throws Errc::parse with the offending key.
ServerConfig parse_server_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
ServerConfig load_server_config(const std::filesystem::path& path);

/// Applies SEMDNS_LISTEN, SEMDNS_PORT, SEMDNS_DATAGRAM_CAP, SEMDNS_UPDATE_SECRET,
/// SEMDNS_UPDATE_ALLOW (comma separated), SEMDNS_JOURNAL_RETENTION and
/// SEMDNS_LOG_LEVEL from the environment.
void apply_environment(ServerConfig& config);

/// Throws Errc::invalid_argument for values that cannot work.
void validate(const ServerConfig& config);

/// Loads every configured zone and replays its journal.
std::shared_ptr<zone::ZoneCatalog> load_catalog(const ServerConfig& config);

zone::ZoneOptions zone_options(const ServerConfig& config, const ZoneSource& source);

}  // namespace semdns::server
