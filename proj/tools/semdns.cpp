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

// semdns command line tool. Links only the C interface.

#include <cctype>
#include <csignal>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "semdns/semdns.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNetwork = 2;
constexpr int kExitAnswer = 3;

const char* const kExitCodes =
    "Exit codes:\n"
    "  0  success (NOERROR, even with an empty answer)\n"
    "  1  usage error or invalid input\n"
    "  2  network failure or timeout\n"
    "  3  NXDOMAIN, REFUSED or another error answer; name verification mismatch\n"
    "\n"
    "The server address comes from --server or SEMDNS_SERVER (host:port,\n"
    "default 127.0.0.1:5353).";

struct Failure {
  semdns_status status;
  std::string message;
};

/// Owned C string from the library.
class CString {
 public:
  CString() = default;
  ~CString() { semdns_string_free(p_); }
  CString(const CString&) = delete;
  CString& operator=(const CString&) = delete;
  char** out() { return &p_; }
  std::string str() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

template <typename T, void (*Free)(T*)>
class Handle {
 public:
  Handle() = default;
  ~Handle() { Free(p_); }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  T** out() { return &p_; }
  T* get() const { return p_; }

 private:
  T* p_ = nullptr;
};

using Message = Handle<semdns_message, semdns_message_free>;
using Client = Handle<semdns_client, semdns_client_free>;
using Registry = Handle<semdns_registry, semdns_registry_free>;
using Zone = Handle<semdns_zone, semdns_zone_free>;
using Server = Handle<semdns_server, semdns_server_free>;

void check(semdns_status status) {
  if (status != SEMDNS_OK) throw Failure{status, semdns_last_error()};
}

int exit_code_for(semdns_status status) {
  switch (status) {
    case SEMDNS_E_NETWORK:
    case SEMDNS_E_TIMEOUT:
      return kExitNetwork;
    case SEMDNS_E_REFUSED:
      return kExitAnswer;
    default:
      return kExitUsage;
  }
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string fixed(double v) { return format_double("%.9f", v); }
std::string error_bound(double v) { return format_double("%.3g", v); }

json cell_json(const semdns_geo_cell& c) {
  return json{{"latitude", c.latitude},   {"longitude", c.longitude}, {"lat_error", c.lat_error},
              {"lng_error", c.lng_error}, {"lat_bits", c.lat_bits},   {"lng_bits", c.lng_bits}};
}

void print_cell(const semdns_geo_cell& c) {
  std::cout << "center    : " << fixed(c.latitude) << ' ' << fixed(c.longitude) << '\n'
            << "error     : +-" << error_bound(c.lat_error) << " lat, +-" << error_bound(c.lng_error) << " lng\n"
            << "bits      : " << c.lat_bits << " lat, " << c.lng_bits << " lng\n";
}

struct Common {
  bool json = false;
  bool verbose = false;
  std::string server;
  unsigned timeout_ms = 3000;
};

struct Endpoint {
  std::string host;
  std::uint16_t port = 5353;
};

Endpoint endpoint(const Common& common) {
  std::string text = common.server;
  if (text.empty()) {
    const char* env = std::getenv("SEMDNS_SERVER");
    text = env && *env ? env : "127.0.0.1:5353";
  }
  Endpoint ep;
  std::string port;
  if (!text.empty() && text.front() == '[') {
    const auto close = text.find(']');
    if (close == std::string::npos) throw Failure{SEMDNS_E_INVALID_ARGUMENT, "bad server address " + text};
    ep.host = text.substr(1, close - 1);
    if (close + 1 < text.size() && text[close + 1] == ':') port = text.substr(close + 2);
  } else if (const auto colon = text.rfind(':'); colon != std::string::npos && text.find(':') == colon) {
    ep.host = text.substr(0, colon);
    port = text.substr(colon + 1);
  } else {
    ep.host = text;
  }
  if (!port.empty()) {
    try {
      std::size_t used = 0;
      const unsigned long n = std::stoul(port, &used);
      if (used != port.size() || n == 0 || n > 65535) throw std::out_of_range(port);
      ep.port = static_cast<std::uint16_t>(n);
    } catch (const std::exception&) {
      throw Failure{SEMDNS_E_INVALID_ARGUMENT, "bad server port " + port};
    }
  }
  if (ep.host.empty()) throw Failure{SEMDNS_E_INVALID_ARGUMENT, "bad server address " + text};
  return ep;
}

void connect(const Common& common, Client& client) {
  const auto ep = endpoint(common);
  check(semdns_client_create(ep.host.c_str(), ep.port, common.timeout_ms, client.out()));
}

int print_message(const Common& common, const semdns_message* msg) {
  CString text;
  check(semdns_message_format(msg, common.json ? SEMDNS_FORMAT_JSON : SEMDNS_FORMAT_DIG, text.out()));
  std::cout << text.str();
  return semdns_message_rcode(msg) == 0 ? kExitOk : kExitAnswer;
}

std::vector<std::uint8_t> hex_bytes(const std::string& hex) {
  std::vector<std::uint8_t> out;
  std::string digits;
  for (char c : hex) {
    if (c == ':' || c == ' ') continue;
    if (!std::isxdigit(static_cast<unsigned char>(c))) throw Failure{SEMDNS_E_INVALID_ARGUMENT, "key is not hex"};
    digits.push_back(c);
  }
  if (digits.size() % 2) throw Failure{SEMDNS_E_INVALID_ARGUMENT, "key hex has an odd number of digits"};
  for (std::size_t i = 0; i < digits.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(std::stoul(digits.substr(i, 2), nullptr, 16)));
  }
  return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{SEMDNS_E_IO, "cannot read " + path};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string parent_name(const std::string& name) {
  const auto dot = name.find('.');
  return dot == std::string::npos ? "." : name.substr(dot + 1);
}

semdns_server* volatile g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) semdns_server_stop(g_server);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic DNS names for IoT devices: identifiers, zones, server and client"};
  app.require_subcommand(1, 1);
  app.footer(kExitCodes);
  app.set_version_flag("--version", std::string(semdns_version()));

  Common common;
  const auto add_output = [&](CLI::App* sub) {
    sub->add_flag("--json", common.json, "Machine-readable JSON output");
    sub->add_flag("-v,--verbose", common.verbose, "Show details");
    sub->footer(kExitCodes);
  };
  const auto add_network = [&](CLI::App* sub) {
    add_output(sub);
    sub->add_option("-s,--server", common.server, "Server host:port (default $SEMDNS_SERVER or 127.0.0.1:5353)");
    sub->add_option("--timeout", common.timeout_ms, "Reply timeout in milliseconds")->check(CLI::Range(1u, 600000u));
  };
  std::function<int()> run;

  // encode-geo
  double lat = 0, lng = 0;
  unsigned length = 12;
  bool geo_identifier = false;
  auto* encode_geo = app.add_subcommand("encode-geo", "Encode a coordinate as a geohash label");
  encode_geo->add_option("latitude", lat, "Latitude in degrees")->required();
  encode_geo->add_option("longitude", lng, "Longitude in degrees")->required();
  encode_geo->add_option("length", length, "Label length, 1..12")->capture_default_str();
  encode_geo->add_flag("--identifier", geo_identifier, "Emit the 64-bit geo identifier label instead");
  add_output(encode_geo);
  encode_geo->callback([&] {
    run = [&] {
      if (geo_identifier) {
        std::uint64_t value = 0;
        CString label;
        check(semdns_geo_identifier(lat, lng, &value, label.out()));
        semdns_geo_cell cell{};
        check(semdns_geo_identifier_decode(label.str().c_str(), nullptr, &cell));
        char hex[17];
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(value));
        if (common.json) {
          json doc{{"identifier", label.str()}, {"value", hex}};
          doc.update(cell_json(cell));
          std::cout << doc.dump(2) << '\n';
        } else {
          std::cout << label.str() << '\n';
          if (common.verbose) {
            std::cout << "value     : " << hex << '\n';
            print_cell(cell);
          }
        }
        return kExitOk;
      }
      CString label;
      check(semdns_geohash_encode(lat, lng, length, label.out()));
      semdns_geo_cell cell{};
      check(semdns_geohash_decode(label.str().c_str(), &cell));
      CString bits, lat_bits, lng_bits;
      check(semdns_geohash_bits(label.str().c_str(), bits.out(), lat_bits.out(), lng_bits.out()));
      if (common.json) {
        json doc{{"geohash", label.str()}};
        doc.update(cell_json(cell));
        doc["bits"] = bits.str();
        std::cout << doc.dump(2) << '\n';
      } else {
        std::cout << label.str() << '\n';
        if (common.verbose) {
          std::cout << "interleaved: " << bits.str() << '\n'
                    << "lat bits  : " << lat_bits.str() << '\n'
                    << "lng bits  : " << lng_bits.str() << '\n';
          print_cell(cell);
        }
      }
      return kExitOk;
    };
  });

  // decode-geo
  std::string geo_label;
  auto* decode_geo = app.add_subcommand("decode-geo", "Decode a geohash or 13-symbol geo identifier label");
  decode_geo->add_option("label", geo_label, "Label to decode")->required();
  add_output(decode_geo);
  decode_geo->callback([&] {
    run = [&] {
      semdns_geo_cell cell{};
      if (geo_label.size() == 13) {
        check(semdns_geo_identifier_decode(geo_label.c_str(), nullptr, &cell));
      } else {
        check(semdns_geohash_decode(geo_label.c_str(), &cell));
      }
      if (common.json) {
        json doc{{"label", geo_label}};
        doc.update(cell_json(cell));
        std::cout << doc.dump(2) << '\n';
      } else {
        std::cout << fixed(cell.latitude) << ' ' << fixed(cell.longitude) << '\n';
        if (common.verbose) print_cell(cell);
      }
      return kExitOk;
    };
  });

  // encode-tree
  unsigned context_id = 1;
  std::vector<std::string> steps;
  std::string registry_file;
  auto* encode_tree = app.add_subcommand("encode-tree", "Encode a semantic tree path (indices or labels)");
  encode_tree->add_option("context", context_id, "Tree context id")->required();
  encode_tree->add_option("steps", steps, "Path steps, e.g. properties temperature unit degree_Celsius");
  encode_tree->add_option("--registry", registry_file, "Context registry file (default: built-in contexts)");
  add_output(encode_tree);
  encode_tree->callback([&] {
    run = [&] {
      Registry registry;
      if (registry_file.empty()) {
        check(semdns_registry_standard(registry.out()));
      } else {
        check(semdns_registry_load(registry_file.c_str(), registry.out()));
      }
      std::vector<const char*> argv_steps;
      for (const auto& s : steps) argv_steps.push_back(s.c_str());
      CString label;
      check(semdns_encode_tree(registry.get(), context_id, argv_steps.data(), argv_steps.size(), label.out()));
      if (common.json) {
        std::cout << json{{"context", context_id}, {"path", steps}, {"identifier", label.str()}}.dump(2) << '\n';
      } else {
        std::cout << label.str() << '\n';
      }
      return kExitOk;
    };
  });

  // encode-logical
  std::uint64_t building = 0, floor = 0, room = 0;
  auto* encode_logical = app.add_subcommand("encode-logical", "Encode a building/floor/room location");
  encode_logical->add_option("building", building, "Building, 0..31")->required();
  encode_logical->add_option("floor", floor, "Floor, 0..31")->required();
  encode_logical->add_option("room", room, "Room, 0..1023")->required();
  add_output(encode_logical);
  encode_logical->callback([&] {
    run = [&] {
      CString label;
      check(semdns_encode_logical(building, floor, room, label.out()));
      if (common.json) {
        std::cout << json{{"building", building}, {"floor", floor}, {"room", room}, {"identifier", label.str()}}.dump(2)
                  << '\n';
      } else {
        std::cout << label.str() << '\n';
      }
      return kExitOk;
    };
  });

  // derive-name
  std::string key_hex, key_file, verify_label;
  auto* derive = app.add_subcommand("derive-name", "Derive the self-certifying name and EUI-64 of a public key");
  auto* key_hex_opt = derive->add_option("--key-hex", key_hex, "Public key bytes in hex");
  auto* key_file_opt = derive->add_option("--key-file", key_file, "File holding the public key bytes");
  key_hex_opt->excludes(key_file_opt);
  derive->add_option("--verify", verify_label, "Check that this label was derived from the key");
  add_output(derive);
  derive->callback([&] {
    run = [&] {
      if (key_hex_opt->count() + key_file_opt->count() != 1) {
        throw Failure{SEMDNS_E_INVALID_ARGUMENT, "give exactly one of --key-hex or --key-file"};
      }
      const auto key = key_file.empty() ? hex_bytes(key_hex) : read_file(key_file);
      if (!verify_label.empty()) {
        int match = 0;
        check(semdns_verify_name(verify_label.c_str(), key.data(), key.size(), &match));
        if (common.json) {
          std::cout << json{{"label", verify_label}, {"match", match != 0}}.dump(2) << '\n';
        } else {
          std::cout << (match ? "match" : "mismatch") << '\n';
        }
        return match ? kExitOk : kExitAnswer;
      }
      CString label, eui;
      check(semdns_derive_name(key.data(), key.size(), label.out(), eui.out()));
      if (common.json) {
        std::cout << json{{"name", label.str()}, {"eui64", eui.str()}}.dump(2) << '\n';
      } else {
        std::cout << "name  " << label.str() << '\n' << "eui64 " << eui.str() << '\n';
      }
      return kExitOk;
    };
  });

  // register
  std::string device, reg_zone = "_iot._udp.", reg_target, reg_split = "0", reg_secret;
  std::uint16_t reg_port = 0, reg_priority = 10, reg_weight = 20;
  std::uint32_t reg_ttl = 0;
  std::vector<std::string> reg_txt;
  auto* reg = app.add_subcommand("register", "Register a device (SRV, PTR and TXT) with a dynamic UPDATE");
  reg->add_option("device", device, "instance@identifier, e.g. temperature@dr56")->required();
  reg->add_option("--port", reg_port, "Service port")->required();
  reg->add_option("--target", reg_target, "Host name of the device")->required();
  reg->add_option("--txt", reg_txt, "key=value data (repeatable)");
  reg->add_option("--zone", reg_zone, "Zone origin")->capture_default_str();
  reg->add_option("--split", reg_split, "Identifier label length: 0 one label, N fixed, 'dynamic' from len= TXT")
      ->capture_default_str();
  reg->add_option("--priority", reg_priority, "SRV priority")->capture_default_str();
  reg->add_option("--weight", reg_weight, "SRV weight")->capture_default_str();
  reg->add_option("--ttl", reg_ttl, "TTL; 0 uses the zone's discovery TTL")->capture_default_str();
  reg->add_option("--secret", reg_secret, "Update token secret (default $SEMDNS_UPDATE_SECRET)");
  add_network(reg);
  reg->callback([&] {
    run = [&] {
      const auto at = device.find('@');
      if (at == std::string::npos || at == 0 || at + 1 == device.size()) {
        throw Failure{SEMDNS_E_INVALID_ARGUMENT, "device must be instance@identifier"};
      }
      const std::string instance = device.substr(0, at), identifier = device.substr(at + 1);
      int split = 0;
      if (reg_split == "dynamic") {
        split = -1;
      } else {
        try {
          std::size_t used = 0;
          split = std::stoi(reg_split, &used);
          if (used != reg_split.size() || split < 0 || split > 63) throw std::out_of_range(reg_split);
        } catch (const std::exception&) {
          throw Failure{SEMDNS_E_INVALID_ARGUMENT, "--split must be 0..63 or 'dynamic'"};
        }
      }
      if (reg_secret.empty()) {
        if (const char* env = std::getenv("SEMDNS_UPDATE_SECRET")) reg_secret = env;
      }
      std::vector<const char*> txt;
      for (const auto& t : reg_txt) txt.push_back(t.c_str());
      semdns_registration r{};
      r.zone = reg_zone.c_str();
      r.instance = instance.c_str();
      r.identifier = identifier.c_str();
      r.target = reg_target.c_str();
      r.port = reg_port;
      r.priority = reg_priority;
      r.weight = reg_weight;
      r.ttl = reg_ttl;
      r.split_length = split;
      r.txt = txt.data();
      r.txt_count = txt.size();

      Client client;
      connect(common, client);
      int changed = 0;
      CString owner;
      Message response;
      const auto status = semdns_client_register(client.get(), &r, reg_secret.c_str(), &changed, owner.out(),
                                                 response.out());
      if (status != SEMDNS_OK) {
        const std::string message = semdns_last_error();
        if (response.get() && common.verbose) print_message(common, response.get());
        throw Failure{status, message};
      }
      if (common.json) {
        std::cout << json{{"status", semdns_message_status(response.get())},
                          {"srv_owner", owner.str()},
                          {"ptr_owner", parent_name(owner.str())},
                          {"changed", changed != 0}}
                         .dump(2)
                  << '\n';
      } else {
        if (common.verbose) print_message(common, response.get());
        std::cout << "SRV " << owner.str() << '\n' << "PTR " << parent_name(owner.str()) << '\n';
        if (!changed) std::cout << "unchanged\n";
      }
      return kExitOk;
    };
  });

  // update-txt
  std::string txt_owner, txt_pair, txt_zone = "_iot._udp.", txt_secret;
  std::uint32_t txt_ttl = 0;
  bool txt_delete = false;
  auto* update_txt = app.add_subcommand("update-txt", "Replace or delete key=value TXT data at an owner");
  update_txt->add_option("owner", txt_owner, "Owner name, relative to the zone unless it ends in a dot")->required();
  update_txt->add_option("data", txt_pair, "key=value to set, or key with --delete")->required();
  update_txt->add_option("--zone", txt_zone, "Zone origin")->capture_default_str();
  update_txt->add_option("--ttl", txt_ttl, "TTL; 0 uses the zone's discovery TTL")->capture_default_str();
  update_txt->add_flag("--delete", txt_delete, "Delete the TXT with this key");
  update_txt->add_option("--secret", txt_secret, "Update token secret (default $SEMDNS_UPDATE_SECRET)");
  add_network(update_txt);
  update_txt->callback([&] {
    run = [&] {
      if (txt_secret.empty()) {
        if (const char* env = std::getenv("SEMDNS_UPDATE_SECRET")) txt_secret = env;
      }
      const auto eq = txt_pair.find('=');
      std::string key = txt_pair.substr(0, eq);
      Client client;
      connect(common, client);
      Message response;
      bool changed = true;
      semdns_status status;
      if (txt_delete) {
        if (eq != std::string::npos) throw Failure{SEMDNS_E_INVALID_ARGUMENT, "--delete takes a key without '='"};
        int removed = 0;
        status = semdns_client_delete_txt(client.get(), txt_zone.c_str(), txt_owner.c_str(), key.c_str(),
                                          txt_secret.c_str(), &removed, response.out());
        changed = removed != 0;
      } else {
        if (eq == std::string::npos) throw Failure{SEMDNS_E_INVALID_ARGUMENT, "data must be key=value"};
        status = semdns_client_update_txt(client.get(), txt_zone.c_str(), txt_owner.c_str(), key.c_str(),
                                          txt_pair.c_str() + eq + 1, txt_ttl, txt_secret.c_str(), response.out());
      }
      if (status != SEMDNS_OK) {
        const std::string message = semdns_last_error();
        if (response.get() && common.verbose) print_message(common, response.get());
        throw Failure{status, message};
      }
      const char* rcode = response.get() ? semdns_message_status(response.get()) : "NOERROR";
      if (common.json) {
        std::cout << json{{"status", rcode}, {"owner", txt_owner}, {"key", key}, {"deleted", txt_delete},
                          {"changed", changed}}
                         .dump(2)
                  << '\n';
      } else {
        if (common.verbose && response.get()) print_message(common, response.get());
        std::cout << (txt_delete ? (changed ? "deleted " : "absent ") : "updated ") << key << " at " << txt_owner
                  << '\n';
      }
      return kExitOk;
    };
  });

  // query
  std::string query_name, query_type = "A";
  auto* query = app.add_subcommand("query", "Send one query and print the response like dig");
  query->add_option("name", query_name, "Owner name")->required();
  query->add_option("type", query_type, "Record type, e.g. PTR, SRV, TXT, ANY")->capture_default_str();
  add_network(query);
  query->callback([&] {
    run = [&] {
      Client client;
      connect(common, client);
      Message msg;
      check(semdns_client_query(client.get(), query_name.c_str(), query_type.c_str(), msg.out()));
      return print_message(common, msg.get());
    };
  });

  // axfr / ixfr
  std::string xfr_name;
  std::uint32_t xfr_serial = 0;
  auto* axfr = app.add_subcommand("axfr", "Full zone transfer");
  axfr->add_option("name", xfr_name, "Zone or subtree name")->required();
  add_network(axfr);
  axfr->callback([&] {
    run = [&] {
      Client client;
      connect(common, client);
      Message msg;
      check(semdns_client_axfr(client.get(), xfr_name.c_str(), msg.out()));
      return print_message(common, msg.get());
    };
  });
  auto* ixfr = app.add_subcommand("ixfr", "Incremental transfer since a serial");
  ixfr->add_option("name", xfr_name, "Zone or subtree name")->required();
  ixfr->add_option("--serial", xfr_serial, "Serial the client holds")->required();
  add_network(ixfr);
  ixfr->callback([&] {
    run = [&] {
      Client client;
      connect(common, client);
      Message msg;
      check(semdns_client_ixfr(client.get(), xfr_name.c_str(), xfr_serial, msg.out()));
      return print_message(common, msg.get());
    };
  });

  // export-zone
  std::string zone_file, zone_origin, zone_journal;
  auto* export_zone = app.add_subcommand("export-zone", "Load a zone and its journal and print the master file");
  export_zone->add_option("file", zone_file, "Master file")->required();
  export_zone->add_option("--origin", zone_origin, "Origin (default: from the file)");
  export_zone->add_option("--journal", zone_journal, "Journal to replay");
  add_output(export_zone);
  export_zone->callback([&] {
    run = [&] {
      Zone zone;
      check(semdns_zone_load(zone_file.c_str(), zone_origin.empty() ? nullptr : zone_origin.c_str(),
                             zone_journal.empty() ? nullptr : zone_journal.c_str(), zone.out()));
      CString text;
      check(semdns_zone_export(zone.get(), text.out()));
      if (common.json) {
        std::cout << json{{"serial", semdns_zone_serial(zone.get())}, {"master_file", text.str()}}.dump(2) << '\n';
      } else {
        std::cout << text.str();
      }
      return kExitOk;
    };
  });

  // serve
  std::string config_file;
  int serve_port = -1;
  auto* serve = app.add_subcommand("serve", "Run the authoritative server until SIGINT or SIGTERM");
  serve->add_option("-c,--config", config_file, "JSON configuration file")->required();
  serve->add_option("-p,--port", serve_port, "Port override; 0 picks a free port")->check(CLI::Range(0, 65535));
  serve->footer(kExitCodes);
  serve->callback([&] {
    run = [&] {
      Server server;
      check(semdns_server_create(config_file.c_str(), nullptr, serve_port, server.out()));
      check(semdns_server_start(server.get()));
      g_server = server.get();
      struct sigaction sa {};
      sa.sa_handler = on_signal;
      sigemptyset(&sa.sa_mask);
      sigaction(SIGINT, &sa, nullptr);
      sigaction(SIGTERM, &sa, nullptr);
      std::cout << "listening on port " << semdns_server_port(server.get()) << std::endl;
      const auto status = semdns_server_wait(server.get());
      g_server = nullptr;
      check(status);
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }
  try {
    return run();
  } catch (const Failure& f) {
    std::cerr << "error: " << semdns_status_name(f.status) << ": " << f.message << '\n';
    return exit_code_for(f.status);
  }
}
