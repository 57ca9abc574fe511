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

#include "semdns/server/config.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "semdns/error.hpp"
#include "semdns/log.hpp"
#include "semdns/server/update_token.hpp"

namespace semdns::server {

using nlohmann::json;

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return path;
}

template <typename T>
T get_number(const json& j, const char* key, T fallback, long long lo, long long hi) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw Error(Errc::parse, std::string("config: '") + key + "' must be an integer");
  const auto n = v.get<long long>();
  if (n < lo || n > hi) {
    throw Error(Errc::parse, std::string("config: '") + key + "' must be in " + std::to_string(lo) + ".." +
                                 std::to_string(hi));
  }
  return static_cast<T>(n);
}

std::string get_string(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw Error(Errc::parse, std::string("config: '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

zone::SplitPolicy parse_split(const json& j) {
  if (j.is_null()) return {};
  if (!j.is_object()) throw Error(Errc::parse, "config: 'split' must be an object");
  const auto mode_name = get_string(j, "mode", "static");
  const auto mode = zone::split_mode_from_name(mode_name);
  if (!mode) throw Error(Errc::parse, "config: unknown split mode '" + mode_name + "'");
  const auto length = get_number<std::size_t>(j, "length", 63, 1, 63);
  switch (*mode) {
    case zone::SplitPolicy::Mode::static_length: return zone::SplitPolicy::fixed(length);
    case zone::SplitPolicy::Mode::dynamic: return zone::SplitPolicy::dynamic();
    case zone::SplitPolicy::Mode::multi: {
      std::vector<zone::Delegation> delegations;
      if (j.contains("delegations")) {
        for (const auto& d : j.at("delegations")) {
          delegations.push_back({get_string(d, "parent", ""), get_string(d, "delegated", ""),
                                 get_number<std::size_t>(d, "child_length", 1, 0, 63)});
        }
      }
      return zone::SplitPolicy::multi(length, std::move(delegations));
    }
  }
  return {};
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::stringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

ServerConfig parse_server_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::parse, "config: top level must be an object");

  ServerConfig c;
  try {
    c.listen = get_string(j, "listen", c.listen);
    c.port = get_number<std::uint16_t>(j, "port", c.port, 0, 65535);
    c.datagram_cap = get_number<std::size_t>(j, "datagram_cap", c.datagram_cap, 512, 65535);
    c.update_secret = get_string(j, "update_secret", c.update_secret);
    if (j.contains("update_allow")) {
      for (const auto& a : j.at("update_allow")) c.update_allow.push_back(a.get<std::string>());
    }
    c.journal_retention = get_number<std::size_t>(j, "journal_retention", c.journal_retention, 1, 1 << 20);
    c.discovery_ttl = get_number<std::uint32_t>(j, "discovery_ttl", c.discovery_ttl, 0, 0x7FFFFFFF);
    c.min_prefix = get_number<std::size_t>(j, "min_prefix", c.min_prefix, 0, 255);
    c.udp_workers = get_number<unsigned>(j, "udp_workers", c.udp_workers, 1, 64);
    c.max_connections = get_number<std::size_t>(j, "max_connections", c.max_connections, 1, 4096);
    c.idle_timeout = std::chrono::milliseconds(
        get_number<long long>(j, "idle_timeout_ms", c.idle_timeout.count(), 100, 3600000));
    if (j.contains("zones")) {
      for (const auto& z : j.at("zones")) {
        ZoneSource src;
        if (!z.contains("file")) throw Error(Errc::parse, "config: every zone needs a 'file'");
        src.file = resolve(base_dir, get_string(z, "file", ""));
        if (z.contains("journal")) src.journal = resolve(base_dir, get_string(z, "journal", ""));
        if (z.contains("origin")) src.origin = dns::Name::parse(get_string(z, "origin", "."));
        if (z.contains("split")) src.split = parse_split(z.at("split"));
        c.zones.push_back(std::move(src));
      }
    }
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string("config: ") + e.what());
  }
  return c;
}

ServerConfig load_server_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_server_config(text.str(), path.parent_path());
}

void apply_environment(ServerConfig& c) {
  const auto env = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
  };
  const auto number = [](const std::string& name, const std::string& v, long long lo, long long hi) {
    long long n = 0;
    try {
      std::size_t used = 0;
      n = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      throw Error(Errc::parse, name + " must be an integer");
    }
    if (n < lo || n > hi) throw Error(Errc::parse, name + " out of range");
    return n;
  };
  if (auto v = env("SEMDNS_LISTEN")) c.listen = *v;
  if (auto v = env("SEMDNS_PORT")) c.port = static_cast<std::uint16_t>(number("SEMDNS_PORT", *v, 0, 65535));
  if (auto v = env("SEMDNS_DATAGRAM_CAP")) {
    c.datagram_cap = static_cast<std::size_t>(number("SEMDNS_DATAGRAM_CAP", *v, 512, 65535));
  }
  if (auto v = env("SEMDNS_UPDATE_SECRET")) c.update_secret = *v;
  if (auto v = env("SEMDNS_UPDATE_ALLOW")) c.update_allow = split_list(*v);
  if (auto v = env("SEMDNS_JOURNAL_RETENTION")) {
    c.journal_retention = static_cast<std::size_t>(number("SEMDNS_JOURNAL_RETENTION", *v, 1, 1 << 20));
  }
  if (auto v = env("SEMDNS_LOG_LEVEL")) {
    const auto level = log::level_from_name(*v);
    if (!level) throw Error(Errc::parse, "SEMDNS_LOG_LEVEL must be debug, info, warn, error or off");
    log::set_level(*level);
  }
}

void validate(const ServerConfig& c) {
  if (c.zones.empty()) throw Error(Errc::invalid_argument, "no zones configured");
  if (c.datagram_cap < 512) throw Error(Errc::invalid_argument, "datagram_cap must be at least 512");
  [[maybe_unused]] const AddressList allow(c.update_allow);
  for (const auto& z : c.zones) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(z.file, ec)) {
      throw Error(Errc::io, "zone file " + z.file.string() + " is not readable");
    }
    if (z.journal) {
      const auto dir = z.journal->has_parent_path() ? z.journal->parent_path() : std::filesystem::path(".");
      if (!std::filesystem::is_directory(dir, ec)) {
        throw Error(Errc::io, "journal directory " + dir.string() + " does not exist");
      }
    }
  }
}

zone::ZoneOptions zone_options(const ServerConfig& config, const ZoneSource& source) {
  zone::ZoneOptions o;
  o.split = source.split;
  o.discovery_ttl = config.discovery_ttl;
  o.min_prefix = config.min_prefix;
  o.journal_retention = config.journal_retention;
  o.datagram_cap = config.datagram_cap;
  return o;
}

std::shared_ptr<zone::ZoneCatalog> load_catalog(const ServerConfig& config) {
  auto catalog = std::make_shared<zone::ZoneCatalog>();
  for (const auto& src : config.zones) {
    std::shared_ptr<zone::LiveZone> live = zone::LiveZone::open(
        src.file, src.origin.value_or(dns::Name()), zone_options(config, src), src.journal);
    log::info("zone loaded", {{"origin", live->origin().to_string()},
                              {"file", src.file.string()},
                              {"serial", std::to_string(live->snapshot()->serial())},
                              {"records", std::to_string(live->snapshot()->record_count())},
                              {"replayed", std::to_string(live->replayed_on_open())}});
    catalog->add(std::move(live));
  }
  return catalog;
}

}  // namespace semdns::server
