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

#include "semdns/semdns.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "semdns/client/client.hpp"
#include "semdns/client/format.hpp"
#include "semdns/context.hpp"
#include "semdns/error.hpp"
#include "semdns/geo.hpp"
#include "semdns/identifier.hpp"
#include "semdns/names.hpp"
#include "semdns/server/config.hpp"
#include "semdns/server/server.hpp"
#include "semdns/zone/live_zone.hpp"
#include "semdns/zone/split.hpp"
#include "semdns/zone/zone.hpp"

#ifndef SEMDNS_VERSION_STRING
#define SEMDNS_VERSION_STRING "0.0.0"
#endif

using namespace semdns;

struct semdns_registry {
  ContextRegistry registry;
};

struct semdns_zone {
  std::unique_ptr<zone::LiveZone> live;
};

struct semdns_message {
  dns::Message message;
  bool transfer = false;
  std::vector<dns::ResourceRecord> records;  // transfer only
};

struct semdns_server {
  std::unique_ptr<server::Server> server;
};

struct semdns_client {
  std::unique_ptr<client::Client> client;
};

namespace {

thread_local std::string last_error;

semdns_status to_status(Errc code) { return static_cast<semdns_status>(static_cast<int>(code) + 1); }

semdns_status fail(semdns_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename F>
semdns_status guarded(F&& body) noexcept {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SEMDNS_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SEMDNS_E_INTERNAL, e.what());
  } catch (...) {
    return fail(SEMDNS_E_INTERNAL, "unknown failure");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool condition, const char* what) {
  if (!condition) throw Error(Errc::invalid_argument, what);
}

void fill_cell(const GeoCell& cell, unsigned lat_bits, unsigned lng_bits, semdns_geo_cell* out) {
  const auto c = cell.center();
  out->latitude = c.latitude;
  out->longitude = c.longitude;
  out->lat_error = cell.lat_error();
  out->lng_error = cell.lng_error();
  out->lat_bits = lat_bits;
  out->lng_bits = lng_bits;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::vector<std::string> chunks(const std::string& text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size(); i += 255) out.push_back(text.substr(i, 255));
  if (out.empty()) out.emplace_back();
  return out;
}

dns::Name service_domain(const dns::Name& zone_name) {
  return zone::service_domain_for(zone_name, zone::ZoneOptions{}.service_labels);
}

std::uint32_t zone_serial(client::Client& c, const dns::Name& zone_name) {
  const auto resp = c.query(zone_name, dns::RRType::SOA);
  for (const auto& rr : resp.answers) {
    if (rr.type == dns::RRType::SOA) return std::get<dns::SoaData>(rr.rdata).serial;
  }
  throw Error(Errc::not_found, "no SOA for " + zone_name.to_string() + " (" + dns::rcode_name(resp.header.rcode) + ")");
}

semdns_status finish_update(dns::Message resp, semdns_message** response) {
  const auto rcode = resp.header.rcode;
  if (response) *response = new semdns_message{std::move(resp), false, {}};
  if (rcode != dns::Rcode::noerror) {
    return fail(SEMDNS_E_REFUSED, std::string("server answered ") + dns::rcode_name(rcode));
  }
  return SEMDNS_OK;
}

}  // namespace

extern "C" {

const char* semdns_version(void) { return SEMDNS_VERSION_STRING; }

const char* semdns_status_name(semdns_status status) {
  if (status == SEMDNS_OK) return "ok";
  if (status == SEMDNS_E_INTERNAL) return "internal";
  if (status > SEMDNS_OK && status < SEMDNS_E_INTERNAL) return errc_name(static_cast<Errc>(status - 1));
  return "unknown";
}

const char* semdns_last_error(void) { return last_error.c_str(); }

void semdns_string_free(char* s) { std::free(s); }

// ---- geo --------------------------------------------------------------------

semdns_status semdns_geohash_encode(double latitude, double longitude, unsigned length, char** out) {
  return guarded([&] {
    require(out, "out is null");
    *out = dup(encode_geohash({latitude, longitude}, length));
    return SEMDNS_OK;
  });
}

semdns_status semdns_geohash_decode(const char* label, semdns_geo_cell* out) {
  return guarded([&] {
    require(label && out, "null argument");
    const auto cell = decode_geohash(label);
    const auto split = geohash_bit_split(std::strlen(label));
    fill_cell(cell, split.lat_bits, split.lng_bits, out);
    return SEMDNS_OK;
  });
}

semdns_status semdns_geohash_bits(const char* label, char** interleaved, char** lat_bits, char** lng_bits) {
  return guarded([&] {
    require(label && interleaved && lat_bits && lng_bits, "null argument");
    decode_geohash(label);  // validates length and alphabet
    const auto bits = b32_decode(label);
    const auto [lat, lng] = deinterleave(bits);
    std::unique_ptr<char, decltype(&std::free)> a(dup(bits.to_string()), &std::free);
    std::unique_ptr<char, decltype(&std::free)> b(dup(lat.to_string()), &std::free);
    *lng_bits = dup(lng.to_string());
    *interleaved = a.release();
    *lat_bits = b.release();
    return SEMDNS_OK;
  });
}

semdns_status semdns_geo_identifier(double latitude, double longitude, uint64_t* value, char** label) {
  return guarded([&] {
    require(value || label, "null argument");
    const auto id = make_geo_identifier({latitude, longitude});
    if (label) *label = dup(geo_identifier_to_label(id));
    if (value) *value = id.value;
    return SEMDNS_OK;
  });
}

semdns_status semdns_geo_identifier_decode(const char* label, uint64_t* value, semdns_geo_cell* out) {
  return guarded([&] {
    require(label, "label is null");
    const auto id = geo_identifier_from_label(label);
    const auto cell = decode_geo_identifier(id);
    if (value) *value = id.value;
    if (out) {
      const auto [lat, lng] = deinterleave(id.coordinate_bits());
      fill_cell(cell, static_cast<unsigned>(lat.size()), static_cast<unsigned>(lng.size()), out);
    }
    return SEMDNS_OK;
  });
}

// ---- contexts -----------------------------------------------------------------

semdns_status semdns_registry_standard(semdns_registry** out) {
  return guarded([&] {
    require(out, "out is null");
    *out = new semdns_registry{ContextRegistry::standard()};
    return SEMDNS_OK;
  });
}

semdns_status semdns_registry_load(const char* path, semdns_registry** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new semdns_registry{ContextRegistry::load(path)};
    return SEMDNS_OK;
  });
}

void semdns_registry_free(semdns_registry* registry) { delete registry; }

semdns_status semdns_encode_tree(const semdns_registry* registry, unsigned context_id, const char* const* steps,
                                 size_t step_count, char** out) {
  return guarded([&] {
    require(registry && out && (steps || step_count == 0), "null argument");
    if (context_id > 31) throw Error(Errc::unknown_context, "context id " + std::to_string(context_id));
    const auto& context = registry->registry.at(static_cast<std::uint8_t>(context_id));
    if (context.kind != ContextKind::tree) {
      throw Error(Errc::unknown_context, "context " + std::to_string(context_id) + " is not a tree context");
    }
    std::vector<PathStep> path;
    for (std::size_t i = 0; i < step_count; ++i) {
      require(steps[i], "null path step");
      const std::string_view step = steps[i];
      if (all_digits(step)) {
        if (step.size() > 19) throw Error(Errc::range, "index " + std::string(step) + " is too large");
        path.emplace_back(static_cast<std::uint64_t>(std::stoull(std::string(step))));
      } else {
        path.emplace_back(std::string(step));
      }
    }
    *out = dup(encode_tree_path(context, path).render());
    return SEMDNS_OK;
  });
}

semdns_status semdns_encode_logical(uint64_t building, uint64_t floor, uint64_t room, char** out) {
  return guarded([&] {
    require(out, "out is null");
    *out = dup(encode_logical({building, floor, room}).render());
    return SEMDNS_OK;
  });
}

// ---- names ----------------------------------------------------------------------

semdns_status semdns_derive_name(const uint8_t* key, size_t key_len, char** label, char** eui64) {
  return guarded([&] {
    require(key || key_len == 0, "key is null");
    require(label || eui64, "null argument");
    const auto name = derive_name({key, key_len});
    std::unique_ptr<char, decltype(&std::free)> l(label ? dup(name.label) : nullptr, &std::free);
    if (eui64) *eui64 = dup(derive_eui64(name).to_hex());
    if (label) *label = l.release();
    return SEMDNS_OK;
  });
}

semdns_status semdns_verify_name(const char* label, const uint8_t* key, size_t key_len, int* match) {
  return guarded([&] {
    require(label && match && (key || key_len == 0), "null argument");
    const auto verdict = verify_name(label, {key, key_len});
    if (verdict == NameVerdict::malformed) throw Error(Errc::decode, "not a self-certifying name: " + std::string(label));
    *match = verdict == NameVerdict::match ? 1 : 0;
    return SEMDNS_OK;
  });
}

// ---- zones ---------------------------------------------------------------------

semdns_status semdns_zone_load(const char* path, const char* origin, const char* journal, semdns_zone** out) {
  return guarded([&] {
    require(path && out, "null argument");
    const dns::Name name = origin ? dns::Name::parse(origin) : dns::Name();
    std::optional<std::filesystem::path> j;
    if (journal) j = journal;
    *out = new semdns_zone{zone::LiveZone::open(path, name, {}, j)};
    return SEMDNS_OK;
  });
}

void semdns_zone_free(semdns_zone* zone) { delete zone; }

uint32_t semdns_zone_serial(const semdns_zone* zone) { return zone ? zone->live->snapshot()->serial() : 0; }

semdns_status semdns_zone_export(const semdns_zone* zone, char** out) {
  return guarded([&] {
    require(zone && out, "null argument");
    *out = dup(zone::export_master_file(*zone->live->snapshot()));
    return SEMDNS_OK;
  });
}

// ---- messages ------------------------------------------------------------------

const char* semdns_message_status(const semdns_message* message) {
  return message ? dns::rcode_name(message->message.header.rcode) : "";
}

int semdns_message_rcode(const semdns_message* message) {
  return message ? static_cast<int>(message->message.header.rcode) : -1;
}

size_t semdns_message_answer_count(const semdns_message* message) {
  if (!message) return 0;
  return message->transfer ? message->records.size() : message->message.answers.size();
}

semdns_status semdns_message_format(const semdns_message* message, semdns_format format, char** out) {
  return guarded([&] {
    require(message && out, "null argument");
    std::string text;
    if (message->transfer) {
      if (format == SEMDNS_FORMAT_JSON) {
        nlohmann::ordered_json doc;
        doc["status"] = dns::rcode_name(message->message.header.rcode);
        doc["records"] = nlohmann::ordered_json::parse(client::format_records_json(message->records));
        text = doc.dump(2) + "\n";
      } else {
        text = client::format_records(message->records);
      }
    } else if (format == SEMDNS_FORMAT_JSON) {
      text = client::format_json(message->message) + "\n";
    } else {
      text = client::format_dig(message->message);
    }
    *out = dup(text);
    return SEMDNS_OK;
  });
}

void semdns_message_free(semdns_message* message) { delete message; }

// ---- server ----------------------------------------------------------------------

semdns_status semdns_server_create(const char* config_path, const char* config_json, int port_override,
                                   semdns_server** out) {
  return guarded([&] {
    require(out, "out is null");
    require(config_path || config_json, "a config path or JSON text is required");
    auto config = config_path ? server::load_server_config(config_path)
                              : server::parse_server_config(config_json, std::filesystem::current_path());
    server::apply_environment(config);
    if (port_override >= 0) {
      if (port_override > 65535) throw Error(Errc::range, "port " + std::to_string(port_override));
      config.port = static_cast<std::uint16_t>(port_override);
    }
    server::validate(config);
    *out = new semdns_server{std::make_unique<server::Server>(std::move(config))};
    return SEMDNS_OK;
  });
}

semdns_status semdns_server_start(semdns_server* server) {
  return guarded([&] {
    require(server, "server is null");
    server->server->start();
    return SEMDNS_OK;
  });
}

uint16_t semdns_server_port(const semdns_server* server) { return server ? server->server->port() : 0; }

void semdns_server_stop(semdns_server* server) {
  if (server) server->server->stop();
}

semdns_status semdns_server_wait(semdns_server* server) {
  return guarded([&] {
    require(server, "server is null");
    server->server->wait();
    return SEMDNS_OK;
  });
}

void semdns_server_free(semdns_server* server) { delete server; }

// ---- client ------------------------------------------------------------------------

semdns_status semdns_client_create(const char* host, uint16_t port, unsigned timeout_ms, semdns_client** out) {
  return guarded([&] {
    require(host && out, "null argument");
    const auto timeout = std::chrono::milliseconds(timeout_ms ? timeout_ms : 3000);
    *out = new semdns_client{std::make_unique<client::Client>(host, port, timeout)};
    return SEMDNS_OK;
  });
}

void semdns_client_free(semdns_client* client) { delete client; }

semdns_status semdns_client_query(semdns_client* client, const char* name, const char* type, semdns_message** out) {
  return guarded([&] {
    require(client && name && type && out, "null argument");
    const auto t = dns::type_from_name(type);
    if (!t) throw Error(Errc::invalid_argument, "unknown record type " + std::string(type));
    *out = new semdns_message{client->client->query(dns::Name::parse(name), *t), false, {}};
    return SEMDNS_OK;
  });
}

namespace {

semdns_message* transfer_message(std::vector<dns::Message> messages) {
  auto* m = new semdns_message{messages.front(), true, client::transfer_records(messages)};
  return m;
}

}  // namespace

semdns_status semdns_client_axfr(semdns_client* client, const char* name, semdns_message** out) {
  return guarded([&] {
    require(client && name && out, "null argument");
    *out = transfer_message(client->client->axfr(dns::Name::parse(name)));
    return SEMDNS_OK;
  });
}

semdns_status semdns_client_ixfr(semdns_client* client, const char* name, uint32_t serial, semdns_message** out) {
  return guarded([&] {
    require(client && name && out, "null argument");
    *out = transfer_message(client->client->ixfr(dns::Name::parse(name), serial));
    return SEMDNS_OK;
  });
}

semdns_status semdns_client_register(semdns_client* client, const semdns_registration* reg, const char* secret,
                                     int* changed, char** srv_owner, semdns_message** response) {
  return guarded([&] {
    require(client && reg && reg->zone && reg->instance && reg->identifier && reg->target, "null argument");
    require(reg->txt || reg->txt_count == 0, "txt is null");
    auto& c = *client->client;
    const dns::Name zone_name = dns::Name::parse(reg->zone);
    const dns::Name svc = service_domain(zone_name);

    zone::SplitPolicy policy;
    if (reg->split_length == 0) {
      policy = zone::SplitPolicy::fixed(63);
    } else if (reg->split_length < 0) {
      policy = zone::SplitPolicy::dynamic();
    } else {
      if (reg->split_length > 63) throw Error(Errc::range, "split length " + std::to_string(reg->split_length));
      policy = zone::SplitPolicy::fixed(static_cast<std::size_t>(reg->split_length));
    }
    const zone::LengthLookup lookup = [&](const std::vector<std::string>& labels) -> std::optional<std::size_t> {
      const auto resp = c.query(dns::Name(labels).concat(svc), dns::RRType::TXT);
      for (const auto& rr : resp.answers) {
        if (rr.type != dns::RRType::TXT) continue;
        if (auto n = zone::parse_length_declaration(std::get<dns::TxtData>(rr.rdata).joined())) return n;
      }
      return std::nullopt;
    };
    const std::string identifier = to_lower(reg->identifier);
    const auto labels = zone::split_labels(identifier, policy, lookup);
    const dns::Name ptr_owner = dns::Name(labels).concat(svc);
    const dns::Name owner = ptr_owner.prepend(reg->instance);

    std::vector<dns::ResourceRecord> updates;
    updates.push_back(dns::make_srv(owner, reg->ttl, reg->priority, reg->weight, reg->port,
                                    dns::Name::parse(reg->target)));
    updates.push_back(dns::make_name_record(ptr_owner, dns::RRType::PTR, reg->ttl, owner));
    for (std::size_t i = 0; i < reg->txt_count; ++i) {
      require(reg->txt[i], "null TXT entry");
      const std::string pair = reg->txt[i];
      const auto eq = pair.find('=');
      if (eq == std::string::npos || eq == 0) throw Error(Errc::invalid_argument, "TXT data must be key=value: " + pair);
      updates.push_back(dns::make_txt(owner, reg->ttl, chunks(pair)));
    }

    const std::uint32_t before = changed ? zone_serial(c, zone_name) : 0;
    auto resp = c.update(client::make_update(zone_name, std::move(updates), c.next_id()), secret ? secret : "");
    const bool ok = resp.header.rcode == dns::Rcode::noerror;
    if (ok && changed) *changed = zone_serial(c, zone_name) != before ? 1 : 0;
    if (ok && srv_owner) *srv_owner = dup(owner.to_string());
    return finish_update(std::move(resp), response);
  });
}

semdns_status semdns_client_update_txt(semdns_client* client, const char* zone, const char* owner, const char* key,
                                       const char* value, uint32_t ttl, const char* secret,
                                       semdns_message** response) {
  return guarded([&] {
    require(client && zone && owner && key && value, "null argument");
    require(*key && !std::strchr(key, '='), "key must be non-empty and contain no '='");
    auto& c = *client->client;
    const dns::Name zone_name = dns::Name::parse(zone);
    const dns::Name name = dns::Name::parse(owner, zone_name);
    std::vector<dns::ResourceRecord> updates = {
        dns::make_txt(name, ttl, chunks(std::string(key) + "=" + value))};
    auto resp = c.update(client::make_update(zone_name, std::move(updates), c.next_id()), secret ? secret : "");
    return finish_update(std::move(resp), response);
  });
}

semdns_status semdns_client_delete_txt(semdns_client* client, const char* zone, const char* owner, const char* key,
                                       const char* secret, int* removed, semdns_message** response) {
  return guarded([&] {
    require(client && zone && owner && key, "null argument");
    require(*key && !std::strchr(key, '='), "key must be non-empty and contain no '='");
    auto& c = *client->client;
    const dns::Name zone_name = dns::Name::parse(zone);
    const dns::Name name = dns::Name::parse(owner, zone_name);
    std::vector<dns::ResourceRecord> updates;
    for (auto rr : c.query(name, dns::RRType::TXT).answers) {
      if (rr.type != dns::RRType::TXT || rr.owner != name) continue;
      const auto k = zone::txt_key(rr);
      if (!k || to_lower(*k) != to_lower(key)) continue;
      rr.klass = static_cast<std::uint16_t>(dns::RRClass::NONE);
      rr.ttl = 0;
      updates.push_back(std::move(rr));
    }
    if (removed) *removed = updates.empty() ? 0 : 1;
    if (updates.empty()) return SEMDNS_OK;
    auto resp = c.update(client::make_update(zone_name, std::move(updates), c.next_id()), secret ? secret : "");
    return finish_update(std::move(resp), response);
  });
}

}  // extern "C"
