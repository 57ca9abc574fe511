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

#include "semdns/server/responder.hpp"

#include <algorithm>
#include <chrono>

#include "semdns/error.hpp"
#include "semdns/log.hpp"

namespace semdns::server {

using dns::Message;
using dns::Name;
using dns::Rcode;
using dns::ResourceRecord;
using dns::RRType;

namespace {

constexpr int kMaxCnameHops = 8;

Message reply_to(const Message& query) {
  Message r;
  r.header.id = query.header.id;
  r.header.qr = true;
  r.header.opcode = query.header.opcode;
  r.header.rd = query.header.rd;
  r.header.cd = query.header.cd;
  r.questions = query.questions;
  return r;
}

Message with_rcode(const Message& query, Rcode rcode) {
  auto r = reply_to(query);
  r.header.rcode = rcode;
  return r;
}

const ResourceRecord* find_opt(const Message& m) {
  for (const auto& rr : m.additional) {
    if (rr.type == RRType::OPT) return &rr;
  }
  return nullptr;
}

ResourceRecord make_opt(std::size_t payload) {
  ResourceRecord opt;
  opt.type = RRType::OPT;
  opt.klass = static_cast<std::uint16_t>(std::min<std::size_t>(payload, 65535));
  opt.ttl = 0;
  opt.rdata = dns::RawData{};
  return opt;
}

std::size_t record_size_bound(const ResourceRecord& rr) {
  return rr.owner.wire_length() + 10 + dns::rdata_wire_size(rr);
}

std::vector<Message> chunk_transfer(const Message& query, const std::vector<ResourceRecord>& records,
                                    std::size_t max_size) {
  std::vector<Message> out;
  auto current = reply_to(query);
  current.header.aa = true;
  std::size_t size = dns::encode(current).size();
  for (const auto& rr : records) {
    const auto bound = record_size_bound(rr);
    if (!current.answers.empty() && size + bound > max_size) {
      out.push_back(std::move(current));
      current = reply_to(query);
      current.header.aa = true;
      current.questions.clear();
      size = dns::kHeaderSize;
    }
    current.answers.push_back(rr);
    size += bound;
  }
  out.push_back(std::move(current));
  return out;
}

bool is_transfer(RRType t) { return t == RRType::AXFR || t == RRType::IXFR; }

std::optional<Name> transfer_top(const zone::Zone& z, const Name& qname) {
  if (qname == z.origin()) return std::nullopt;
  return qname;
}

}  // namespace

std::size_t datagram_limit(const Message& query, std::size_t cap) {
  const auto* opt = find_opt(query);
  if (!opt) return std::min<std::size_t>(512, cap);
  return std::min<std::size_t>(cap, std::max<std::size_t>(512, opt->klass));
}

std::vector<std::uint8_t> fit_datagram(Message response, std::size_t limit) {
  auto bytes = dns::encode(response);
  if (bytes.size() <= limit) return bytes;
  response.header.tc = true;
  response.answers.clear();
  response.authority.clear();
  std::erase_if(response.additional, [](const auto& rr) { return rr.type != RRType::OPT; });
  bytes = dns::encode(response);
  if (bytes.size() > limit) {
    response.questions.clear();
    response.additional.clear();
    bytes = dns::encode(response);
  }
  return bytes;
}

Responder::Responder(std::shared_ptr<zone::ZoneCatalog> catalog, ResponderOptions options)
    : catalog_(std::move(catalog)), options_(std::move(options)) {
  if (options_.datagram_cap < 512) options_.datagram_cap = 512;
}

Message Responder::answer_query(const Message& query) const {
  if (query.header.opcode != dns::Opcode::query) return with_rcode(query, Rcode::notimp);
  if (query.questions.size() != 1) return with_rcode(query, Rcode::formerr);
  const auto& q = query.questions.front();
  if (q.klass != static_cast<std::uint16_t>(dns::RRClass::IN) &&
      q.klass != static_cast<std::uint16_t>(dns::RRClass::ANY)) {
    return with_rcode(query, Rcode::refused);
  }
  auto live = catalog_->find(q.name);
  if (!live) return with_rcode(query, Rcode::refused);
  auto zone = live->snapshot();

  auto r = reply_to(query);
  r.header.aa = true;
  if (is_transfer(q.type) || q.type == RRType::OPT) return with_rcode(query, Rcode::formerr);

  Name current = q.name;
  for (int hop = 0;; ++hop) {
    // Discovery spellings may name a subtree that another served zone holds.
    Name key = zone::discovery_name(*zone, current);
    if (auto closer = catalog_->find(key); closer && closer != live &&
                                           closer->origin().is_subdomain_of(live->origin())) {
      live = std::move(closer);
      zone = live->snapshot();
      key = zone::discovery_name(*zone, current);
    }
    if (const auto cut = zone->delegation_for(key)) {
      r.header.aa = !r.answers.empty();
      r.authority = zone->find(*cut, RRType::NS);
      for (const auto& ns : r.authority) {
        const auto& target = std::get<dns::NameData>(ns.rdata).name;
        if (zone->contains(target)) {
          for (auto& glue : zone->find(target, RRType::A)) r.additional.push_back(glue);
          for (auto& glue : zone->find(target, RRType::AAAA)) r.additional.push_back(glue);
        }
      }
      return r;
    }

    auto cname = zone->find(current, RRType::CNAME);
    if (cname.empty() && key != current) cname = zone->find(key, RRType::CNAME);
    if (!cname.empty() && q.type != RRType::CNAME && q.type != RRType::ANY) {
      auto alias = cname.front();
      alias.owner = current;  // answered under the spelling that was asked
      r.answers.push_back(alias);
      current = std::get<dns::NameData>(alias.rdata).name;
      if (hop + 1 >= kMaxCnameHops) return r;
      // Keep chasing in whichever served zone is closest to the target.
      if (auto next = catalog_->find(current); next != live) {
        if (!next) return r;
        live = std::move(next);
        zone = live->snapshot();
      }
      continue;
    }

    std::vector<ResourceRecord> found;
    if (q.type == RRType::PTR && current.is_subdomain_of(zone->service_domain())) {
      found = zone::ptr_discover(*zone, current);
    } else if (q.type == RRType::ANY) {
      found = zone->find(current);
    } else {
      found = zone->find(current, q.type);
    }
    if (!found.empty()) {
      r.answers.insert(r.answers.end(), found.begin(), found.end());
      return r;
    }
    if (!zone->name_exists(current)) r.header.rcode = Rcode::nxdomain;
    r.authority.push_back(zone->soa());
    return r;
  }
}

std::vector<Message> Responder::answer_transfer(const Message& query) const {
  const auto& q = query.questions.front();
  const auto live = catalog_->find(q.name);
  if (!live) return {with_rcode(query, Rcode::refused)};
  const auto zone = live->snapshot();  // one serial for the whole stream
  if (!zone->name_exists(q.name)) {
    auto r = with_rcode(query, Rcode::nxdomain);
    r.header.aa = true;
    r.authority.push_back(zone->soa());
    return {r};
  }
  const auto top = transfer_top(*zone, q.name);

  std::vector<ResourceRecord> records;
  if (q.type == RRType::AXFR) {
    records = zone::axfr_snapshot(*zone, top);
  } else {
    const ResourceRecord* client_soa = nullptr;
    for (const auto& rr : query.authority) {
      if (rr.type == RRType::SOA) client_soa = &rr;
    }
    if (!client_soa) return {with_rcode(query, Rcode::formerr)};
    const auto serial = std::get<dns::SoaData>(client_soa->rdata).serial;
    records = zone::ixfr_records(*zone, zone::ixfr_diff(*zone, serial, top));
  }
  return chunk_transfer(query, records, options_.transfer_message_size);
}

Message Responder::handle_update(std::span<const std::uint8_t> bytes, const Message& request,
                                 std::span<const std::size_t> additional_offsets, std::string_view source) const {
  auto r = reply_to(request);
  const auto refuse = [&](Rcode rcode, std::string_view why) {
    log::info("update rejected", {{"src", std::string(source)}, {"rcode", dns::rcode_name(rcode)},
                                  {"reason", std::string(why)}});
    r.header.rcode = rcode;
    return r;
  };

  if (request.questions.size() != 1 || request.questions.front().type != RRType::SOA) {
    return refuse(Rcode::formerr, "zone section must hold one SOA entry");
  }
  const auto& zname = request.questions.front().name;
  const auto live = catalog_->exact(zname);
  if (!live) return refuse(Rcode::notauth, "not authoritative for " + zname.to_string());

  // Authorization: a valid token, or an allowed source address.
  bool authorized = false;
  std::string why = "no update policy configured";
  if (!options_.update_secret.empty() && has_update_token(request)) {
    const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();
    const auto check = verify_update_token(bytes, request, additional_offsets, options_.update_secret, now);
    authorized = check == TokenCheck::valid;
    why = std::string("token ") + token_check_name(check);
  }
  if (!authorized && !options_.update_allow.empty()) {
    authorized = options_.update_allow.contains(source);
    if (!authorized && why == "no update policy configured") why = "source not allowed";
  }
  if (!authorized) return refuse(Rcode::refused, why);
  if (!request.answers.empty()) return refuse(Rcode::refused, "prerequisites are not supported");

  const auto& updates = request.authority;
  for (const auto& rr : updates) {
    if (!rr.owner.is_subdomain_of(zname)) return refuse(Rcode::notzone, rr.owner.to_string() + " is outside the zone");
  }

  const auto in = static_cast<std::uint16_t>(dns::RRClass::IN);
  const auto none = static_cast<std::uint16_t>(dns::RRClass::NONE);
  const auto any = static_cast<std::uint16_t>(dns::RRClass::ANY);

  // Registration: one SRV and one PTR naming it, plus TXT data at the SRV owner.
  const auto srv_count = std::count_if(updates.begin(), updates.end(), [](const auto& rr) { return rr.type == RRType::SRV; });
  std::optional<zone::DeviceRegistration> registration;
  Name registration_owner;
  if (srv_count > 0) {
    const auto srv = std::find_if(updates.begin(), updates.end(), [](const auto& rr) { return rr.type == RRType::SRV; });
    const auto ptr = std::find_if(updates.begin(), updates.end(), [](const auto& rr) { return rr.type == RRType::PTR; });
    if (srv_count != 1 || ptr == updates.end() || srv->klass != in || ptr->klass != in ||
        std::get<dns::NameData>(ptr->rdata).name != srv->owner || srv->owner.parent() != ptr->owner) {
      return refuse(Rcode::refused, "registration needs one SRV and one PTR naming it");
    }
    const auto snapshot = live->snapshot();
    const auto id = snapshot->identifier_of(ptr->owner);
    if (!id || id->empty()) return refuse(Rcode::refused, "registration owner is not below the service domain");
    zone::DeviceRegistration reg;
    reg.instance = srv->owner.first_label();
    reg.identifier = *id;
    const auto& data = std::get<dns::SrvData>(srv->rdata);
    reg.priority = data.priority;
    reg.weight = data.weight;
    reg.port = data.port;
    reg.target = data.target;
    reg.ttl = srv->ttl;
    for (const auto& rr : updates) {
      if (rr.type != RRType::TXT || rr.owner != srv->owner) continue;
      const auto key = zone::txt_key(rr);
      if (!key || rr.klass != in) return refuse(Rcode::refused, "registration TXT must be key=value");
      const auto joined = std::get<dns::TxtData>(rr.rdata).joined();
      reg.txt.emplace_back(*key, joined.substr(key->size() + 1));
      reg.txt_ttl = rr.ttl;
    }
    registration = std::move(reg);
    registration_owner = srv->owner;
  }

  for (const auto& rr : updates) {
    if (registration && (rr.type == RRType::SRV || rr.type == RRType::PTR ||
                         (rr.type == RRType::TXT && rr.owner == registration_owner))) {
      continue;
    }
    if (rr.type != RRType::TXT) return refuse(Rcode::refused, "only TXT data can be updated");
    if (rr.klass == in && !zone::txt_key(rr)) return refuse(Rcode::refused, "TXT data must be key=value");
    if (rr.klass != in && rr.klass != none && rr.klass != any) return refuse(Rcode::formerr, "bad update class");
  }

  try {
    const auto diff = live->mutate([&](zone::Zone& z) {
      if (registration) {
        const auto result = zone::register_device(z, *registration);
        if (result.srv_owner != registration_owner) {
          throw Error(Errc::policy, "owner " + registration_owner.to_string() + " does not follow the split policy (" +
                                        result.srv_owner.to_string() + ")");
        }
      }
      for (const auto& rr : updates) {
        if (rr.type != RRType::TXT || (registration && rr.owner == registration_owner)) continue;
        if (rr.klass == in) {
          const auto key = *zone::txt_key(rr);
          const auto joined = std::get<dns::TxtData>(rr.rdata).joined();
          zone::update_txt(z, rr.owner, key, joined.substr(key.size() + 1), rr.ttl);
        } else if (rr.klass == none) {
          auto stored = rr;
          stored.klass = in;
          z.remove(stored);
        } else {
          z.remove_rrset(rr.owner, RRType::TXT);
        }
      }
    });
    log::info("update applied", {{"src", std::string(source)},
                                 {"zone", zname.to_string()},
                                 {"records", std::to_string(updates.size())},
                                 {"serial", std::to_string(live->snapshot()->serial())},
                                 {"changed", diff ? "true" : "false"}});
  } catch (const Error& e) {
    return refuse(Rcode::refused, e.what());
  }
  return r;
}

std::vector<std::vector<std::uint8_t>> Responder::handle(std::span<const std::uint8_t> request, Transport transport,
                                                         std::string_view source) const {
  if (request.size() < dns::kHeaderSize) return {};
  Message query;
  std::vector<std::size_t> offsets;
  try {
    query = dns::decode(request, &offsets);
  } catch (const Error& e) {
    if (request[2] & 0x80) return {};  // a response; never answer those
    Message r;
    r.header.id = static_cast<std::uint16_t>(request[0] << 8 | request[1]);
    r.header.qr = true;
    r.header.opcode = static_cast<dns::Opcode>((request[2] >> 3) & 0x0F);
    r.header.rcode = Rcode::formerr;
    log::debug("malformed request", {{"src", std::string(source)}, {"error", e.what()}});
    return {dns::encode(r)};
  }
  if (query.header.qr) return {};

  const bool datagram = transport == Transport::datagram;
  const auto limit = datagram ? datagram_limit(query, options_.datagram_cap) : dns::kMaxMessageSize;
  const auto finish = [&](Message response) {
    if (find_opt(query) && !find_opt(response)) response.additional.push_back(make_opt(options_.datagram_cap));
    if (datagram) return fit_datagram(std::move(response), limit);
    auto bytes = dns::encode(response);
    if (bytes.size() > limit) bytes = fit_datagram(std::move(response), limit);
    return bytes;
  };

  if (query.header.opcode == dns::Opcode::update) {
    return {finish(handle_update(request, query, offsets, source))};
  }
  if (query.header.opcode != dns::Opcode::query) return {finish(with_rcode(query, Rcode::notimp))};
  if (query.questions.size() != 1) return {finish(with_rcode(query, Rcode::formerr))};

  const auto& q = query.questions.front();
  log::debug("query", {{"src", std::string(source)},
                       {"name", q.name.to_string()},
                       {"type", dns::type_name(q.type)},
                       {"transport", datagram ? "udp" : "tcp"}});
  if (is_transfer(q.type)) {
    if (!datagram) {
      std::vector<std::vector<std::uint8_t>> out;
      for (const auto& m : answer_transfer(query)) out.push_back(dns::encode(m));
      return out;
    }
    if (q.type == RRType::AXFR) return {finish(with_rcode(query, Rcode::refused))};
    // IXFR over datagram: the transfer if it fits in one message, else the current SOA.
    auto messages = answer_transfer(query);
    if (messages.size() == 1) {
      auto bytes = finish(messages.front());
      if (!(bytes[2] & 0x02)) return {bytes};
    }
    const auto live = catalog_->find(q.name);
    auto r = reply_to(query);
    r.header.aa = true;
    r.answers.push_back(live->snapshot()->soa());
    return {finish(std::move(r))};
  }
  return {finish(answer_query(query))};
}

}  // namespace semdns::server
