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

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "semdns/client/client.hpp"
#include "semdns/client/format.hpp"
#include "semdns/error.hpp"
#include "semdns/log.hpp"
#include "semdns/server/server.hpp"

using namespace semdns;
using namespace semdns::server;
using client::Client;
using dns::Message;
using dns::Name;
using dns::Rcode;
using dns::RRType;

namespace {

Name N(std::string_view s) { return Name::parse(s); }

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("semdns-server-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

ServerConfig fixture_config(const std::filesystem::path& journal_dir = {}) {
  ServerConfig c;
  c.port = 0;
  c.update_secret = "s3cret";
  ZoneSource iot{SEMDNS_TEST_DATA "/iot.zone"};
  if (!journal_dir.empty()) iot.journal = journal_dir / "iot.journal";
  c.zones.push_back(iot);
  c.zones.push_back(ZoneSource{SEMDNS_TEST_DATA "/unipr.zone"});
  return c;
}

std::vector<std::string> rdata(const std::vector<dns::ResourceRecord>& records) {
  std::vector<std::string> out;
  for (const auto& rr : records) out.push_back(rr.rdata_text());
  return out;
}

Responder fixture_responder(ServerConfig c = fixture_config()) {
  return Responder(load_catalog(c), ResponderOptions{c.datagram_cap, c.update_secret, AddressList(c.update_allow)});
}

Message ask(const Responder& r, std::string_view name, RRType type) {
  return r.answer_query(client::make_query(N(name), type, 7, false));
}

dns::ResourceRecord txt_update(std::string_view owner, std::string text, std::uint32_t ttl = 3600) {
  return dns::make_txt(N(owner), ttl, {std::move(text)});
}

struct Quiet {
  Quiet() { log::set_level(log::Level::off); }
} quiet;

}  // namespace

TEST_CASE("answers for the three transcript exchanges") {
  const auto r = fixture_responder();
  const auto ptr = ask(r, "_dr._iot._udp.", RRType::PTR);
  CHECK(ptr.header.rcode == Rcode::noerror);
  CHECK(ptr.header.aa);
  CHECK(rdata(ptr.answers) == std::vector<std::string>{"humidity.dr12._iot._udp.", "temperature.dr34._iot._udp.",
                                                       "temperature.dr56._iot._udp."});
  for (const auto& rr : ptr.answers) CHECK(rr.ttl == 100);

  const auto any = ask(r, "temperature.dr56._iot._udp.", RRType::ANY);
  CHECK(rdata(any.answers) == std::vector<std::string>{"10 20 8080 dr56.unipr.it.", "\"temperature=14\""});
  CHECK(any.answers[0].ttl == 100);
  CHECK(any.answers[1].ttl == 100);

  const auto a = ask(r, "dr56.unipr.it.", RRType::A);
  CHECK(rdata(a.answers) == std::vector<std::string>{"160.78.28.203"});
  CHECK(a.answers[0].ttl == 100);
}

TEST_CASE("negative and error answers") {
  const auto r = fixture_responder();
  auto m = ask(r, "nosuch._iot._udp.", RRType::PTR);
  CHECK(m.header.rcode == Rcode::nxdomain);
  REQUIRE(m.authority.size() == 1);
  CHECK(m.authority[0].type == RRType::SOA);

  m = ask(r, "temperature.dr56._iot._udp.", RRType::A);
  CHECK(m.header.rcode == Rcode::noerror);
  CHECK(m.answers.empty());

  m = ask(r, "example.org.", RRType::A);
  CHECK(m.header.rcode == Rcode::refused);
  CHECK_FALSE(m.header.aa);

  auto q = client::make_query(N("dr56.unipr.it."), RRType::A, 9, false);
  q.header.opcode = dns::Opcode::notify;
  CHECK(r.answer_query(q).header.rcode == Rcode::notimp);

  q = client::make_query(N("dr56.unipr.it."), RRType::A, 9, false);
  q.questions.push_back(q.questions.front());
  const auto two = r.handle(dns::encode(q), Transport::datagram, "127.0.0.1");
  CHECK(dns::decode(two.at(0)).header.rcode == Rcode::formerr);

  const std::vector<std::uint8_t> garbage = {0x12, 0x34, 0x01, 0x00, 0x00, 0x01, 0, 0, 0, 0, 0, 0, 0x05, 'a'};
  const auto bad = r.handle(garbage, Transport::datagram, "127.0.0.1");
  REQUIRE(bad.size() == 1);
  const auto decoded = dns::decode(bad[0]);
  CHECK(decoded.header.id == 0x1234);
  CHECK(decoded.header.rcode == Rcode::formerr);
  CHECK(r.handle(std::vector<std::uint8_t>(5, 0), Transport::datagram, "x").empty());

  // Responses are never answered.
  auto resp = client::make_query(N("dr56.unipr.it."), RRType::A, 9, false);
  resp.header.qr = true;
  CHECK(r.handle(dns::encode(resp), Transport::datagram, "x").empty());
}

TEST_CASE("CNAME chasing and referrals") {
  ServerConfig c = fixture_config();
  auto catalog = load_catalog(c);
  catalog->exact(N("unipr.it."))->mutate([](zone::Zone& z) {
    z.add(dns::make_name_record(N("www.unipr.it."), RRType::CNAME, 100, N("dr56.unipr.it.")));
    z.add(dns::make_name_record(N("lab.unipr.it."), RRType::NS, 100, N("ns.lab.unipr.it.")));
    z.add(dns::make_a(N("ns.lab.unipr.it."), 100, "10.0.0.1"));
  });
  const Responder r(catalog, {});
  auto m = ask(r, "www.unipr.it.", RRType::A);
  REQUIRE(m.answers.size() == 2);
  CHECK(m.answers[0].type == RRType::CNAME);
  CHECK(m.answers[1].rdata_text() == "160.78.28.203");

  m = ask(r, "host.lab.unipr.it.", RRType::A);
  CHECK_FALSE(m.header.aa);
  CHECK(m.answers.empty());
  REQUIRE(m.authority.size() == 1);
  CHECK(m.authority[0].type == RRType::NS);
  CHECK(rdata(m.additional) == std::vector<std::string>{"10.0.0.1"});
}

TEST_CASE("datagram limits and truncation") {
  auto q = client::make_query(N("x."), RRType::A, 1, false);
  CHECK(datagram_limit(q, 1460) == 512);
  q = client::make_query(N("x."), RRType::A, 1, true);
  q.additional[0].klass = 4096;
  CHECK(datagram_limit(q, 1460) == 1460);
  q.additional[0].klass = 100;
  CHECK(datagram_limit(q, 1460) == 512);

  Message big;
  big.header.qr = true;
  big.questions.push_back({N("_dr._iot._udp."), RRType::PTR, 1});
  for (int i = 0; i < 200; ++i) {
    big.answers.push_back(
        dns::make_name_record(N("_dr._iot._udp."), RRType::PTR, 100, N("s" + std::to_string(i) + ".example.")));
  }
  const auto bytes = fit_datagram(big, 1460);
  CHECK(bytes.size() <= 1460);
  const auto cut = dns::decode(bytes);
  CHECK(cut.header.tc);
  CHECK(cut.answers.empty());
  CHECK(cut.questions.size() == 1);
}

TEST_CASE("transfers through the responder") {
  const auto r = fixture_responder();
  const auto zone = r.catalog().find(N("_iot._udp."))->snapshot();

  auto axfr = r.answer_transfer(client::make_query(N("_iot._udp."), RRType::AXFR, 3, false));
  CHECK(client::transfer_records(axfr) == zone::axfr_snapshot(*zone));

  axfr = r.answer_transfer(client::make_query(N("temperature.dr56._iot._udp."), RRType::AXFR, 3, false));
  CHECK(client::transfer_records(axfr).size() == 4);

  axfr = r.answer_transfer(client::make_query(N("nothing._iot._udp."), RRType::AXFR, 3, false));
  CHECK(axfr.at(0).header.rcode == Rcode::nxdomain);

  const auto udp = r.handle(dns::encode(client::make_query(N("_iot._udp."), RRType::AXFR, 3, false)),
                            Transport::datagram, "127.0.0.1");
  CHECK(dns::decode(udp.at(0)).header.rcode == Rcode::refused);

  auto no_soa = client::make_query(N("_iot._udp."), RRType::IXFR, 3, false);
  CHECK(r.answer_transfer(no_soa).at(0).header.rcode == Rcode::formerr);

  // Many records are split across messages.
  ServerConfig c = fixture_config();
  auto catalog = load_catalog(c);
  catalog->exact(N("_iot._udp."))->mutate([](zone::Zone& z) {
    for (int i = 0; i < 2000; ++i) {
      z.add(dns::make_txt(N("bulk" + std::to_string(i) + "._iot._udp."), 60, {std::string(40, 'x')}));
    }
  });
  const Responder big(catalog, {});
  const auto messages = big.answer_transfer(client::make_query(N("_iot._udp."), RRType::AXFR, 3, false));
  CHECK(messages.size() > 3);
  for (const auto& m : messages) CHECK(dns::encode(m).size() <= 16384 + 512);
  CHECK(client::transfer_records(messages).size() == catalog->exact(N("_iot._udp."))->snapshot()->record_count() + 1);
}

TEST_CASE("update authorization") {
  const auto r = fixture_responder();
  const auto owner = "temperature.dr56._iot._udp.";
  const auto update = client::make_update(N("_iot._udp."), {txt_update(owner, "temperature=15")}, 11);
  const auto live = r.catalog().exact(N("_iot._udp."));
  const auto serial = live->snapshot()->serial();
  const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();

  SUBCASE("unsigned is refused") {
    const auto out = r.handle(dns::encode(update), Transport::datagram, "127.0.0.1");
    CHECK(dns::decode(out.at(0)).header.rcode == Rcode::refused);
    CHECK(live->snapshot()->serial() == serial);
  }
  SUBCASE("wrong secret is refused") {
    const auto out = r.handle(sign_update(update, "other", now), Transport::datagram, "127.0.0.1");
    CHECK(dns::decode(out.at(0)).header.rcode == Rcode::refused);
    CHECK(live->snapshot()->serial() == serial);
  }
  SUBCASE("stale token is refused") {
    const auto out = r.handle(sign_update(update, "s3cret", now - 3600), Transport::datagram, "127.0.0.1");
    CHECK(dns::decode(out.at(0)).header.rcode == Rcode::refused);
  }
  SUBCASE("tampered message is refused") {
    auto bytes = sign_update(update, "s3cret", now);
    bytes[1] ^= 1;  // the id is covered by the token
    const auto out = r.handle(bytes, Transport::datagram, "127.0.0.1");
    CHECK(dns::decode(out.at(0)).header.rcode == Rcode::refused);
  }
  SUBCASE("signed update applies") {
    const auto out = r.handle(sign_update(update, "s3cret", now), Transport::datagram, "127.0.0.1");
    const auto resp = dns::decode(out.at(0));
    CHECK(resp.header.rcode == Rcode::noerror);
    CHECK(resp.header.id == 11);
    CHECK(live->snapshot()->serial() == serial + 1);
    CHECK(rdata(ask(r, owner, RRType::TXT).answers) == std::vector<std::string>{"\"temperature=15\""});

    const auto diff = zone::ixfr_diff(*live->snapshot(), serial);
    REQUIRE(diff.steps.size() == 1);
    CHECK(rdata(diff.steps[0].deleted) == std::vector<std::string>{"\"temperature=14\""});
    CHECK(rdata(diff.steps[0].added) == std::vector<std::string>{"\"temperature=15\""});
  }
  SUBCASE("allow-listed source without token") {
    auto c = fixture_config();
    c.update_secret.clear();
    c.update_allow = {"10.0.0.0/8", "::1"};
    const auto allowed = fixture_responder(c);
    auto out = allowed.handle(dns::encode(update), Transport::datagram, "10.1.2.3");
    CHECK(dns::decode(out.at(0)).header.rcode == Rcode::noerror);
    out = allowed.handle(dns::encode(update), Transport::datagram, "192.168.1.1");
    CHECK(dns::decode(out.at(0)).header.rcode == Rcode::refused);
  }
  SUBCASE("no policy refuses everything") {
    auto c = fixture_config();
    c.update_secret.clear();
    const auto closed = fixture_responder(c);
    const auto out = closed.handle(sign_update(update, "s3cret", now), Transport::datagram, "127.0.0.1");
    CHECK(dns::decode(out.at(0)).header.rcode == Rcode::refused);
  }
}

TEST_CASE("update scope rules") {
  const auto r = fixture_responder();
  const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  const auto send = [&](const Message& m) {
    return dns::decode(r.handle(sign_update(m, "s3cret", now), Transport::datagram, "127.0.0.1").at(0)).header.rcode;
  };
  const auto live = r.catalog().exact(N("_iot._udp."));
  const auto serial = live->snapshot()->serial();

  CHECK(send(client::make_update(N("_iot._udp."), {dns::make_a(N("x._iot._udp."), 60, "1.2.3.4")}, 1)) ==
        Rcode::refused);
  CHECK(send(client::make_update(N("other."), {txt_update("x.other.", "a=1")}, 1)) == Rcode::notauth);
  CHECK(send(client::make_update(N("_iot._udp."), {txt_update("x.unipr.it.", "a=1")}, 1)) == Rcode::notzone);
  CHECK(send(client::make_update(N("_iot._udp."), {txt_update("x._iot._udp.", "no key")}, 1)) == Rcode::refused);
  CHECK(send(client::make_update(N("_iot._udp."),
                                 {txt_update("temperature.dr56._iot._udp.", "t=" + std::string(240, 'x')),
                                  dns::make_txt(N("temperature.dr56._iot._udp."), 60,
                                                {"big=" + std::string(250, 'y'), std::string(255, 'z'),
                                                 std::string(255, 'z'), std::string(255, 'z'),
                                                 std::string(255, 'z')})},
                                 1)) == Rcode::refused);
  CHECK(live->snapshot()->serial() == serial);

  // Deleting one exact TXT and then all TXT at an owner.
  auto del = txt_update("temperature.dr56._iot._udp.", "temperature=14", 0);
  del.klass = static_cast<std::uint16_t>(dns::RRClass::NONE);
  CHECK(send(client::make_update(N("_iot._udp."), {del}, 1)) == Rcode::noerror);
  CHECK(live->snapshot()->find(N("temperature.dr56._iot._udp."), RRType::TXT).empty());
  CHECK(live->snapshot()->serial() == serial + 1);

  dns::ResourceRecord all;
  all.owner = N("humidity.dr12._iot._udp.");
  all.type = RRType::TXT;
  all.klass = static_cast<std::uint16_t>(dns::RRClass::ANY);
  all.rdata = dns::RawData{};
  CHECK(send(client::make_update(N("_iot._udp."), {all}, 1)) == Rcode::noerror);
  CHECK(live->snapshot()->find(N("humidity.dr12._iot._udp."), RRType::TXT).empty());
}

TEST_CASE("registration through UPDATE") {
  const auto r = fixture_responder();
  const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  const auto srv_owner = N("pressure.dr78._iot._udp.");
  std::vector<dns::ResourceRecord> records = {
      dns::make_srv(srv_owner, 100, 10, 20, 8080, N("dr78.unipr.it.")),
      dns::make_name_record(N("dr78._iot._udp."), RRType::PTR, 100, srv_owner),
      dns::make_txt(srv_owner, 100, {"pressure=1013"}),
  };
  const auto m = client::make_update(N("_iot._udp."), records, 5);
  const auto live = r.catalog().exact(N("_iot._udp."));
  const auto serial = live->snapshot()->serial();
  auto rcode = dns::decode(r.handle(sign_update(m, "s3cret", now), Transport::datagram, "::1").at(0)).header.rcode;
  CHECK(rcode == Rcode::noerror);
  CHECK(live->snapshot()->serial() == serial + 1);
  CHECK(ask(r, "_dr._iot._udp.", RRType::PTR).answers.size() == 4);

  // Same registration again: accepted, nothing changes.
  rcode = dns::decode(r.handle(sign_update(m, "s3cret", now), Transport::datagram, "::1").at(0)).header.rcode;
  CHECK(rcode == Rcode::noerror);
  CHECK(live->snapshot()->serial() == serial + 1);

  // PTR not naming the SRV owner.
  records[1] = dns::make_name_record(N("dr78._iot._udp."), RRType::PTR, 100, N("other.dr78._iot._udp."));
  rcode = dns::decode(r.handle(sign_update(client::make_update(N("_iot._udp."), records, 6), "s3cret", now),
                               Transport::datagram, "::1")
                          .at(0))
              .header.rcode;
  CHECK(rcode == Rcode::refused);
}

TEST_CASE("config parsing and environment") {
  const auto c = parse_server_config(R"({
    "listen": "0.0.0.0", "port": 5300, "datagram_cap": 1232,
    "update_secret": "k", "update_allow": ["127.0.0.1"],
    "zones": [{"file": "iot.zone", "journal": "iot.journal",
               "split": {"mode": "multi", "length": 2,
                         "delegations": [{"parent": "12", "delegated": "12a", "child_length": 1}]}}]
  })", "/srv/dns");
  CHECK(c.port == 5300);
  CHECK(c.datagram_cap == 1232);
  CHECK(c.zones.at(0).file == "/srv/dns/iot.zone");
  CHECK(c.zones.at(0).journal == std::filesystem::path("/srv/dns/iot.journal"));
  CHECK(c.zones.at(0).split.mode == zone::SplitPolicy::Mode::multi);
  CHECK(c.zones.at(0).split.delegations.size() == 1);

  CHECK_THROWS_AS(parse_server_config("{\"port\": 70000}"), Error);
  CHECK_THROWS_AS(parse_server_config("{\"port\": \"x\"}"), Error);
  CHECK_THROWS_AS(parse_server_config("{\"zones\": [{}]}"), Error);
  CHECK_THROWS_AS(parse_server_config("[1"), Error);
  CHECK_THROWS_AS(parse_server_config(R"({"zones":[{"file":"a","split":{"mode":"odd"}}]})"), Error);

  ServerConfig env_config;
  setenv("SEMDNS_PORT", "5454", 1);
  setenv("SEMDNS_UPDATE_ALLOW", "10.0.0.1, ::1", 1);
  apply_environment(env_config);
  unsetenv("SEMDNS_PORT");
  unsetenv("SEMDNS_UPDATE_ALLOW");
  CHECK(env_config.port == 5454);
  CHECK(env_config.update_allow == std::vector<std::string>{"10.0.0.1", "::1"});
  setenv("SEMDNS_PORT", "abc", 1);
  CHECK_THROWS_AS(apply_environment(env_config), Error);
  unsetenv("SEMDNS_PORT");

  ServerConfig empty;
  CHECK_THROWS_AS(validate(empty), Error);
  auto missing = fixture_config();
  missing.zones[0].file = "/nonexistent/zone";
  CHECK_THROWS_AS(validate(missing), Error);
  auto bad_allow = fixture_config();
  bad_allow.update_allow = {"not-an-ip"};
  CHECK_THROWS_AS(validate(bad_allow), Error);
  CHECK_NOTHROW(validate(fixture_config()));
}

TEST_CASE("end to end over loopback sockets") {
  TempDir dir;
  Server server(fixture_config(dir.path));
  server.start();
  REQUIRE(server.port() != 0);
  Client c("127.0.0.1", server.port(), std::chrono::seconds(2));

  const auto ptr = c.query(N("_dr._iot._udp."), RRType::PTR);
  CHECK(ptr.answers.size() == 3);
  CHECK(c.query(N("nosuch._iot._udp."), RRType::PTR).header.rcode == Rcode::nxdomain);
  CHECK(rdata(c.query(N("dr56.unipr.it."), RRType::A).answers) == std::vector<std::string>{"160.78.28.203"});

  // Reads leave the serial alone.
  const auto zone_serial = [&] { return server.responder().catalog().exact(N("_iot._udp."))->snapshot()->serial(); };
  const auto before = zone_serial();
  for (int i = 0; i < 20; ++i) c.query(N("temperature.dr56._iot._udp."), RRType::ANY);
  CHECK(zone_serial() == before);

  // Update, then IXFR from the old serial over the stream transport.
  const auto update = client::make_update(
      N("_iot._udp."), {txt_update("temperature.dr56._iot._udp.", "temperature=15")}, c.next_id());
  CHECK(c.update(update, "s3cret").header.rcode == Rcode::noerror);
  CHECK(rdata(c.query(N("temperature.dr56._iot._udp."), RRType::TXT).answers) ==
        std::vector<std::string>{"\"temperature=15\""});
  auto ixfr = client::transfer_records(c.ixfr(N("temperature.dr56._iot._udp."), before));
  REQUIRE(ixfr.size() == 6);
  CHECK(ixfr[2].rdata_text() == "\"temperature=14\"");
  CHECK(ixfr[4].rdata_text() == "\"temperature=15\"");
  CHECK(client::transfer_records(c.ixfr(N("_iot._udp."), zone_serial())).size() == 1);

  const auto axfr = client::transfer_records(c.axfr(N("_iot._udp.")));
  CHECK(axfr.front().type == RRType::SOA);
  CHECK(axfr.back().type == RRType::SOA);
  CHECK(axfr.size() == server.responder().catalog().exact(N("_iot._udp."))->snapshot()->record_count() + 1);

  // An answer above the cap is truncated over datagram and complete over stream.
  CHECK(c.update(client::make_update(N("_iot._udp."), {}, c.next_id()), "s3cret").header.rcode == Rcode::noerror);
  server.responder().catalog().exact(N("_iot._udp."))->mutate([](zone::Zone& z) {
    for (int i = 0; i < 80; ++i) {
      zone::DeviceRegistration reg;
      reg.instance = "sensor-with-a-long-instance-name-" + std::to_string(i);
      reg.identifier = "dr99";
      reg.port = 1;
      reg.target = N("gw.unipr.it.");
      zone::register_device(z, reg);
    }
  });
  const auto q = client::make_query(N("_dr9._iot._udp."), RRType::PTR, c.next_id(), true);
  const auto udp = c.exchange_datagram(dns::encode(q), q.header.id);
  CHECK(udp.header.tc);
  CHECK(dns::encode(udp).size() <= 1460);
  const auto full = c.exchange(q);
  CHECK_FALSE(full.header.tc);
  CHECK(full.answers.size() == 80);

  server.stop();
  server.wait();

  // Restart: journal history survives.
  Server again(fixture_config(dir.path));
  again.start();
  Client c2("127.0.0.1", again.port(), std::chrono::seconds(2));
  CHECK(rdata(c2.query(N("temperature.dr56._iot._udp."), RRType::TXT).answers) ==
        std::vector<std::string>{"\"temperature=15\""});
  ixfr = client::transfer_records(c2.ixfr(N("temperature.dr56._iot._udp."), before));
  CHECK(ixfr.size() > 6);
  CHECK(ixfr[2].rdata_text() == "\"temperature=14\"");
}

TEST_CASE("client errors") {
  Server server(fixture_config());
  server.start();
  const auto port = server.port();
  server.stop();
  server.wait();
  Client c("127.0.0.1", port, std::chrono::milliseconds(300));
  try {
    c.query(N("dr56.unipr.it."), RRType::A);
    FAIL("expected a network error");
  } catch (const Error& e) {
    CHECK((e.code() == Errc::network || e.code() == Errc::timeout));
  }
  CHECK_THROWS_AS(c.axfr(N("_iot._udp.")), Error);

  auto busy = fixture_config();
  Server first(busy);
  first.start();
  busy.port = first.port();
  Server second(busy);
  try {
    second.start();
    FAIL("expected the port to be busy");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::network);
  }
}

TEST_CASE("dig and JSON formatting") {
  const auto r = fixture_responder();
  auto m = ask(r, "_dr._iot._udp.", RRType::PTR);
  m.header.id = 4242;
  const auto dig = client::format_dig(m);
  CHECK(dig.find(";; ->>HEADER<<- opcode: QUERY, status: NOERROR, id: 4242\n") == 0);
  CHECK(dig.find(";; flags: qr aa; QUERY: 1, ANSWER: 3, AUTHORITY: 0, ADDITIONAL: 0\n") != std::string::npos);
  CHECK(dig.find(";_dr._iot._udp.\t\t\tIN\tPTR\n") != std::string::npos);
  CHECK(dig.find("_dr._iot._udp.\t\t100\tIN\tPTR\thumidity.dr12._iot._udp.\n") != std::string::npos);

  const auto any = client::format_dig(ask(r, "temperature.dr56._iot._udp.", RRType::ANY));
  CHECK(any.find(";temperature.dr56._iot._udp.\t\tIN\tANY\n") != std::string::npos);
  CHECK(any.find("temperature.dr56._iot._udp.\t100\tIN\tSRV\t10 20 8080 dr56.unipr.it.\n") != std::string::npos);
  CHECK(any.find("temperature.dr56._iot._udp.\t100\tIN\tTXT\t\"temperature=14\"\n") != std::string::npos);

  const auto json = client::format_json(ask(r, "dr56.unipr.it.", RRType::A), -1);
  CHECK(json ==
        R"({"id":7,"opcode":"QUERY","status":"NOERROR","flags":["qr","aa"],)"
        R"("question":[{"name":"dr56.unipr.it.","type":"A","class":"IN"}],)"
        R"("answer":[{"name":"dr56.unipr.it.","ttl":100,"class":"IN","type":"A","data":"160.78.28.203"}],)"
        R"("authority":[],"additional":[]})");
}
