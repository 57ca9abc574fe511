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

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "semdns/bits.hpp"
#include "semdns/dns/master_file.hpp"
#include "semdns/error.hpp"
#include "semdns/zone/live_zone.hpp"

using namespace semdns;
using namespace semdns::zone;
using dns::RRType;

namespace {

Name N(std::string_view s) { return Name::parse(s); }

Zone fixture() { return Zone::load(SEMDNS_TEST_DATA "/iot.zone", N("_iot._udp.")); }

Zone empty_zone(const std::string& origin = "_iot._udp.", ZoneOptions options = {}) {
  dns::SoaData soa{N("ns1.unipr.it."), N("hostmaster.unipr.it."), 1, 3600, 600, 86400, 100};
  return Zone(dns::make_soa(N(origin), 100, soa), std::move(options));
}

std::vector<std::string> targets(const std::vector<ResourceRecord>& ptrs) {
  std::vector<std::string> out;
  for (const auto& rr : ptrs) out.push_back(std::get<dns::NameData>(rr.rdata).name.to_string());
  return out;
}

std::vector<std::string> lines(const std::vector<ResourceRecord>& records) {
  std::vector<std::string> out;
  for (const auto& rr : records) out.push_back(rr.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string random_geohash(std::mt19937_64& rng, std::size_t len) {
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(kBase32Alphabet[rng() % 32]);
  return s;
}

DeviceRegistration temperature_dr56() {
  DeviceRegistration reg;
  reg.instance = "temperature";
  reg.identifier = "dr56";
  reg.port = 8080;
  reg.target = N("dr56.unipr.it.");
  reg.txt = {{"temperature", "14"}};
  return reg;
}

}  // namespace

TEST_CASE("register_device produces the transcript records") {
  auto zone = empty_zone();
  const auto result = register_device(zone, temperature_dr56());
  CHECK(result.changed);
  CHECK(result.srv_owner == N("temperature.dr56._iot._udp."));
  CHECK(result.ptr_owner == N("dr56._iot._udp."));
  const auto diff = zone.commit();
  REQUIRE(diff);
  CHECK(zone.serial() == 2);

  const auto at_owner = zone.find(N("temperature.dr56._iot._udp."));
  REQUIRE(at_owner.size() == 2);
  CHECK(at_owner[0].to_string() == "temperature.dr56._iot._udp. 100 IN SRV 10 20 8080 dr56.unipr.it.");
  CHECK(at_owner[1].to_string() == "temperature.dr56._iot._udp. 100 IN TXT \"temperature=14\"");

  // Empty zone: SOA plus exactly the new records.
  CHECK(zone.record_count() == 4);
  CHECK(diff->added.size() == 3);

  SUBCASE("re-registering is a flagged no-op") {
    const auto again = register_device(zone, temperature_dr56());
    CHECK_FALSE(again.changed);
    CHECK_FALSE(zone.commit());
    CHECK(zone.serial() == 2);
  }
  SUBCASE("a new port replaces the SRV") {
    auto reg = temperature_dr56();
    reg.port = 9090;
    CHECK(register_device(zone, reg).changed);
    zone.commit();
    CHECK(zone.find(result.srv_owner, RRType::SRV).size() == 1);
  }
}

TEST_CASE("registration errors") {
  auto zone = empty_zone();
  auto reg = temperature_dr56();
  reg.identifier = "dr5-";
  CHECK_THROWS_AS(register_device(zone, reg), Error);
  reg = temperature_dr56();
  reg.instance = "bad.label";
  CHECK_THROWS_AS(register_device(zone, reg), Error);
  reg = temperature_dr56();
  reg.target = Name();
  CHECK_THROWS_AS(register_device(zone, reg), Error);
  reg = temperature_dr56();
  reg.txt = {{"a=b", "1"}};
  CHECK_THROWS_AS(register_device(zone, reg), Error);
  CHECK_FALSE(zone.has_pending());
}

TEST_CASE("discovery over the three-device fixture") {
  const auto zone = fixture();
  const auto found = ptr_discover(zone, N("_dr._iot._udp."));
  CHECK(targets(found) == std::vector<std::string>{"humidity.dr12._iot._udp.", "temperature.dr34._iot._udp.",
                                                   "temperature.dr56._iot._udp."});
  for (const auto& rr : found) {
    CHECK(rr.owner == N("_dr._iot._udp."));
    CHECK(rr.ttl == 100);
  }
  CHECK(ptr_discover(zone, N("nosuch._iot._udp.")).empty());
  CHECK(ptr_discover(zone, N("_dr5._iot._udp.")) .size() == 1);
  CHECK(targets(ptr_discover(zone, N("dr56._iot._udp."))) == std::vector<std::string>{"temperature.dr56._iot._udp."});
  // Below the minimum prefix only exact owners answer.
  CHECK(ptr_discover(zone, N("_d._iot._udp.")).empty());
  CHECK(ptr_discover(zone, N("example.org.")).empty());
}

TEST_CASE("discovery containment over random registrations") {
  std::mt19937_64 rng(7);
  auto zone = empty_zone("iot.org.", {.split = SplitPolicy::fixed(2)});
  for (int i = 0; i < 200; ++i) {
    DeviceRegistration reg;
    reg.instance = "sensor" + std::to_string(i);
    reg.identifier = random_geohash(rng, 2 + rng() % 5);
    reg.port = 5683;
    reg.target = N("gw.iot.org.");
    register_device(zone, reg);
  }
  zone.commit();
  for (int i = 0; i < 200; ++i) {
    const auto p = random_geohash(rng, 2 + rng() % 3);
    const auto labels = split_labels(p, zone);
    const auto parent = ptr_discover(zone, Name(labels).concat(zone.service_domain()));
    const auto child_id = p + std::string(1, kBase32Alphabet[rng() % 32]);
    const auto child = ptr_discover(zone, Name(split_labels(child_id, zone)).concat(zone.service_domain()));
    const auto pt = targets(parent);
    for (const auto& t : targets(child)) CHECK(std::find(pt.begin(), pt.end(), t) != pt.end());
  }
}

TEST_CASE("static splitting") {
  CHECK(split_labels("dr5r7p", SplitPolicy::fixed(2)) == std::vector<std::string>{"7p", "5r", "dr"});
  auto zone = empty_zone("iot.org.", {.split = SplitPolicy::fixed(2)});
  const auto owner = Name(split_labels("dr5r7p", zone)).concat(zone.service_domain());
  CHECK(owner.to_string() == "7p.5r.dr._iot._udp.iot.org.");
  CHECK(split_labels("dr5", SplitPolicy::fixed(8)) == std::vector<std::string>{"dr5"});
  CHECK(split_labels("dr5r7", SplitPolicy::fixed(2)) == std::vector<std::string>{"7", "5r", "dr"});
  CHECK_THROWS_AS(split_labels("", SplitPolicy::fixed(2)), Error);
  CHECK_THROWS_AS(SplitPolicy::fixed(64), Error);
}

TEST_CASE("dynamic splitting reads len= declarations") {
  auto zone = empty_zone("iot.org.", {.split = SplitPolicy::dynamic()});
  const auto& svc = zone.service_domain();
  zone.add(dns::make_txt(svc, 100, {"len=2"}));
  zone.add(dns::make_txt(N("12").concat(svc), 100, {"len=3"}));
  zone.add(dns::make_txt(N("345.12").concat(svc), 100, {"len=1"}));
  zone.commit();
  const auto labels = split_labels("123456", zone);
  CHECK(labels == std::vector<std::string>{"6", "345", "12"});
  CHECK(Name(labels).concat(svc).to_string() == "6.345.12._iot._udp.iot.org.");
  // The last label may be shorter than declared.
  CHECK(split_labels("12345", zone) == std::vector<std::string>{"345", "12"});

  try {
    split_labels("129999", zone);
    FAIL("expected a missing declaration");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::policy);
  }
  zone.add(dns::make_txt(N("999.12").concat(svc), 100, {"len=0"}));
  CHECK_THROWS_AS(split_labels("1299990", zone), Error);
  CHECK_THROWS_AS(split_labels("12", empty_zone("x.", {.split = SplitPolicy::dynamic()})), Error);
}

TEST_CASE("splitting is lossless") {
  std::mt19937_64 rng(3);
  auto dyn = empty_zone("iot.org.", {.split = SplitPolicy::dynamic()});
  dyn.add(dns::make_txt(dyn.service_domain(), 100, {"len=3"}));
  const auto multi = SplitPolicy::multi(2, {{"dr", "drb", 1}, {"", "z", 2}});
  for (int i = 0; i < 1000; ++i) {
    const auto id = random_geohash(rng, 1 + rng() % 12);
    for (std::size_t s = 1; s <= 12; ++s) CHECK(join_labels(split_labels(id, SplitPolicy::fixed(s))) == id);
    CHECK(join_labels(split_labels(id, multi)) == id);
    if (id.size() <= 3) CHECK(join_labels(split_labels(id, dyn)) == id);
  }
  CHECK(split_labels("drbx5", multi) == std::vector<std::string>{"5", "x", "b", "dr"});
  CHECK(split_labels("zxy12", multi) == std::vector<std::string>{"12", "xy", "z"});
}

TEST_CASE("multi-length CNAME fan-out") {
  auto zone = empty_zone("iot.org.", {.split = SplitPolicy::fixed(2)});
  MultiCnameRequest req{"12", "12a", 1, N("server.handling.a.12.area."), "0123456789abcdef"};
  const auto result = generate_multi_cnames(zone, req);
  const auto diff = zone.commit();
  CHECK(result.cnames_added == 16);
  CHECK(result.ns_owner.to_string() == "a.12._iot._udp.iot.org.");
  REQUIRE(diff->added.size() == 17);
  CHECK(zone.find(result.ns_owner, RRType::NS).front().rdata_text() == "server.handling.a.12.area.");
  CHECK(zone.find(N("a0.12._iot._udp.iot.org."), RRType::CNAME).front().rdata_text() ==
        "0.a.12._iot._udp.iot.org.");
  CHECK(zone.find(N("af.12._iot._udp.iot.org."), RRType::CNAME).front().rdata_text() ==
        "f.a.12._iot._udp.iot.org.");
  CHECK(zone.options().split.mode == SplitPolicy::Mode::multi);

  SUBCASE("re-pointing touches only the NS record") {
    req.ns_target = N("other.server.");
    const auto again = generate_multi_cnames(zone, req);
    const auto step = zone.commit();
    CHECK(again.ns_changed);
    CHECK(again.cnames_added == 0);
    REQUIRE(step->deleted.size() == 1);
    REQUIRE(step->added.size() == 1);
    CHECK(step->deleted[0].type == RRType::NS);
    CHECK(step->added[0].rdata_text() == "other.server.");
  }
  SUBCASE("zero children gives only the NS record") {
    auto z = empty_zone("iot.org.", {.split = SplitPolicy::fixed(2)});
    generate_multi_cnames(z, {"12", "12b", 0, N("ns.example.")});
    CHECK(z.commit()->added.size() == 1);
  }
  SUBCASE("an alias owner with other data collides") {
    auto z = empty_zone("iot.org.", {.split = SplitPolicy::fixed(2)});
    z.add(dns::make_txt(N("a3.12._iot._udp.iot.org."), 100, {"x=1"}));
    try {
      generate_multi_cnames(z, req);
      FAIL("expected a collision");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::collision);
    }
  }
}

TEST_CASE("CNAME transparency for flat and nested spellings") {
  std::mt19937_64 rng(11);
  auto zone = empty_zone("iot.org.", {.split = SplitPolicy::fixed(2)});
  generate_multi_cnames(zone, {"12", "12a", 1, N("server.handling.a.12.area.")});
  for (int i = 0; i < 50; ++i) {
    DeviceRegistration reg;
    reg.instance = "dev" + std::to_string(i);
    reg.identifier = "12a" + random_geohash(rng, 1 + rng() % 4);
    reg.port = 1;
    reg.target = N("gw.iot.org.");
    register_device(zone, reg);
  }
  zone.commit();
  const auto& svc = zone.service_domain();
  for (char c : std::string(kBase32Alphabet)) {
    const std::string s(1, c);
    const auto flat = targets(ptr_discover(zone, N("a" + s + ".12").concat(svc)));
    const auto nested = targets(ptr_discover(zone, N(s + ".a.12").concat(svc)));
    const auto underscored = targets(ptr_discover(zone, N("_a" + s + "._12").concat(svc)));
    CHECK(flat == nested);
    CHECK(underscored == nested);
  }
  CHECK(targets(ptr_discover(zone, N("a.12").concat(svc))).size() == 50);
}

TEST_CASE("update_txt replacement and size guard") {
  auto zone = fixture();
  const Name owner = N("temperature.dr56._iot._udp.");
  CHECK(update_txt(zone, owner, "temperature", "15", 3600));
  zone.commit();
  CHECK(update_txt(zone, owner, "temperature", "16", 3600));
  zone.commit();
  CHECK(zone.serial() == 3);
  const auto txt = zone.find(owner, RRType::TXT);
  REQUIRE(txt.size() == 1);
  CHECK(txt[0].to_string() == "temperature.dr56._iot._udp. 3600 IN TXT \"temperature=16\"");

  CHECK_FALSE(update_txt(zone, owner, "temperature", "16", 3600));
  CHECK_FALSE(zone.commit());

  try {
    update_txt(zone, owner, "temperature", std::string(2000, '9'), 3600);
    FAIL("expected the size guard");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::size_guard);
  }
  CHECK_FALSE(zone.has_pending());
  CHECK_THROWS_AS(update_txt(zone, owner, "a=b", "1", 60), Error);
  CHECK_THROWS_AS(update_txt(zone, owner, "", "1", 60), Error);
  CHECK_THROWS_AS(update_txt(zone, N("x.example."), "k", "1", 60), Error);

  // Values longer than one character-string are chunked.
  CHECK(update_txt(zone, owner, "blob", std::string(600, 'z'), 60));
  const auto blob = zone.find(owner, RRType::TXT).back();
  CHECK(std::get<dns::TxtData>(blob.rdata).strings.size() == 3);
  CHECK(*txt_key(blob) == "blob");

  CHECK(delete_txt(zone, owner, "blob"));
  CHECK_FALSE(delete_txt(zone, owner, "blob"));
}

TEST_CASE("axfr snapshots") {
  const auto empty = empty_zone();
  const auto snap = axfr_snapshot(empty);
  REQUIRE(snap.size() == 2);
  CHECK(snap[0].type == RRType::SOA);
  CHECK(snap[1].type == RRType::SOA);

  const auto zone = fixture();
  const auto all = axfr_snapshot(zone);
  CHECK(all.front() == zone.soa());
  CHECK(all.back() == zone.soa());
  CHECK(all.size() == zone.record_count() + 1);
  const auto file = dns::load_master_file(SEMDNS_TEST_DATA "/iot.zone");
  std::vector<ResourceRecord> inner(all.begin(), all.end() - 1);
  CHECK(lines(inner) == lines(file.records));

  const auto sub = axfr_snapshot(zone, N("temperature.dr56._iot._udp."));
  CHECK(sub.size() == 4);
}

TEST_CASE("ixfr diffs") {
  auto zone = fixture();
  CHECK(ixfr_diff(zone, zone.serial()).steps.empty());
  CHECK_FALSE(ixfr_diff(zone, zone.serial()).full);
  CHECK(ixfr_records(zone, ixfr_diff(zone, zone.serial())).size() == 1);

  const auto before = zone.serial();
  update_txt(zone, N("temperature.dr56._iot._udp."), "temperature", "15", 3600);
  zone.commit();
  const auto diff = ixfr_diff(zone, before);
  REQUIRE(diff.steps.size() == 1);
  REQUIRE(diff.steps[0].deleted.size() == 1);
  REQUIRE(diff.steps[0].added.size() == 1);
  CHECK(diff.steps[0].deleted[0].rdata_text() == "\"temperature=14\"");
  CHECK(diff.steps[0].added[0].rdata_text() == "\"temperature=15\"");

  const auto framed = ixfr_records(zone, diff);
  REQUIRE(framed.size() == 6);
  CHECK(framed[0] == zone.soa());
  CHECK(framed[1] == diff.steps[0].old_soa);
  CHECK(framed[3] == diff.steps[0].new_soa);
  CHECK(framed[5] == zone.soa());

  // A subtree elsewhere sees the serial step without data.
  const auto other = ixfr_diff(zone, before, N("dr12._iot._udp."));
  CHECK(other.steps.at(0).added.empty());

  CHECK(ixfr_diff(zone, before + 10).full);
  CHECK(ixfr_diff(zone, 0).full);
}

TEST_CASE("journal retention falls back to full transfers") {
  ZoneOptions options;
  options.journal_retention = 3;
  auto zone = empty_zone("_iot._udp.", options);
  for (int i = 0; i < 6; ++i) {
    update_txt(zone, N("x._iot._udp."), "n", std::to_string(i), 60);
    zone.commit();
  }
  CHECK(zone.journal().size() == 3);
  CHECK(zone.serial() == 7);
  CHECK_FALSE(ixfr_diff(zone, 4).full);
  CHECK(ixfr_diff(zone, 3).full);
}

TEST_CASE("master file export") {
  const auto zone = fixture();
  const auto text = export_master_file(zone);
  CHECK(text.find("temperature.dr56._iot._udp. 100 IN SRV 10 20 8080 dr56.unipr.it.\n") != std::string::npos);
  const auto reimported = Zone::from_records(dns::parse_master_file(text).records);
  CHECK(export_master_file(reimported) == text);

  const auto unipr = Zone::load(SEMDNS_TEST_DATA "/unipr.zone", N("unipr.it."));
  CHECK(export_master_file(unipr).find("dr56.unipr.it. 100 IN A 160.78.28.203\n") != std::string::npos);
}

TEST_CASE("zone loading rejects bad files") {
  CHECK_THROWS_AS(Zone::from_records({}), Error);
  auto soa = empty_zone().soa();
  CHECK_THROWS_AS(Zone::from_records({soa, soa}), Error);
  CHECK_THROWS_AS(Zone::from_records({soa, dns::make_a(N("a.other."), 1, "1.2.3.4")}), Error);
  CHECK_THROWS_AS(Zone::load(SEMDNS_TEST_DATA "/missing.zone", Name()), Error);
  CHECK_THROWS_AS(Zone::load(SEMDNS_TEST_DATA "/unipr.zone", N("other.it.")), Error);
}

TEST_CASE("journal persistence across restarts") {
  const auto dir = std::filesystem::temp_directory_path() / ("semdns-journal-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto journal = dir / "iot.journal";
  std::filesystem::remove(journal);
  const Name owner = N("temperature.dr56._iot._udp.");

  std::uint32_t first = 0;
  {
    auto live = LiveZone::open(SEMDNS_TEST_DATA "/iot.zone", N("_iot._udp."), {}, journal);
    first = live->snapshot()->serial();
    for (int v = 15; v < 20; ++v) {
      live->mutate([&](Zone& z) { update_txt(z, owner, "temperature", std::to_string(v), 3600); });
    }
    CHECK(live->snapshot()->serial() == first + 5);
    CHECK_FALSE(live->mutate([&](Zone& z) { update_txt(z, owner, "temperature", "19", 3600); }));
    CHECK_THROWS(live->mutate([&](Zone& z) {
      update_txt(z, owner, "other", "1", 60);
      throw Error(Errc::policy, "abort");
    }));
    CHECK(live->snapshot()->find(owner, RRType::TXT).size() == 1);
  }
  {
    auto live = LiveZone::open(SEMDNS_TEST_DATA "/iot.zone", N("_iot._udp."), {}, journal);
    CHECK(live->replayed_on_open() == 5);
    const auto zone = live->snapshot();
    CHECK(zone->serial() == first + 5);
    CHECK(zone->find(owner, RRType::TXT).front().rdata_text() == "\"temperature=19\"");
    const auto diff = ixfr_diff(*zone, first);
    CHECK_FALSE(diff.full);
    CHECK(diff.steps.size() == 5);
  }
  {
    // A torn final step is ignored.
    std::ofstream(journal, std::ios::app) << "diff 6 7\n- temperature.dr56._iot._udp. 3600 IN TXT \"t=1\"\n";
    auto live = LiveZone::open(SEMDNS_TEST_DATA "/iot.zone", N("_iot._udp."), {}, journal);
    CHECK(live->snapshot()->serial() == first + 5);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("catalog picks the closest origin") {
  ZoneCatalog catalog;
  catalog.add(std::make_shared<LiveZone>(fixture()));
  catalog.add(std::make_shared<LiveZone>(Zone::load(SEMDNS_TEST_DATA "/unipr.zone", N("unipr.it."))));
  catalog.add(std::make_shared<LiveZone>(empty_zone("lab.unipr.it.")));
  CHECK(catalog.find(N("dr56.unipr.it."))->origin() == N("unipr.it."));
  CHECK(catalog.find(N("x.lab.unipr.it."))->origin() == N("lab.unipr.it."));
  CHECK(catalog.find(N("_dr._iot._udp."))->origin() == N("_iot._udp."));
  CHECK_FALSE(catalog.find(N("example.org.")));
  CHECK_THROWS_AS(catalog.add(std::make_shared<LiveZone>(empty_zone("unipr.it."))), Error);
}
