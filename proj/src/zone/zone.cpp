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

#include "semdns/zone/zone.hpp"

#include <algorithm>

#include "semdns/bits.hpp"
#include "semdns/dns/master_file.hpp"
#include "semdns/dns/wire.hpp"
#include "semdns/error.hpp"

namespace semdns::zone {

using dns::RRType;

namespace {

const dns::SoaData& soa_data(const ResourceRecord& rr) { return std::get<dns::SoaData>(rr.rdata); }

bool exact_equal(const ResourceRecord& a, const ResourceRecord& b) {
  return dns::same_rdata(a, b) && a.ttl == b.ttl;
}

/// Removes one exact match of `rr` from `list`; true if found.
bool take(std::vector<ResourceRecord>& list, const ResourceRecord& rr) {
  const auto it = std::find_if(list.begin(), list.end(), [&](const auto& x) { return exact_equal(x, rr); });
  if (it == list.end()) return false;
  list.erase(it);
  return true;
}

std::string strip_underscore(const std::string& label) {
  if (label.size() > 1 && label.front() == '_') return label.substr(1);
  return label;
}

bool is_identifier(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z');
  });
}

void validate_key(std::string_view key) {
  if (key.empty()) throw Error(Errc::invalid_argument, "TXT key must not be empty");
  if (key.find('=') != std::string_view::npos) {
    throw Error(Errc::invalid_argument, "TXT key must not contain '=': " + std::string(key));
  }
}

std::vector<std::string> txt_chunks(std::string_view key, std::string_view value) {
  const std::string text = std::string(key) + "=" + std::string(value);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size(); i += 255) out.push_back(text.substr(i, 255));
  return out;
}

std::uint32_t ttl_or_default(const Zone& zone, std::uint32_t ttl) {
  return ttl ? ttl : zone.options().discovery_ttl;
}

/// Records at `owner` after dropping those matching `drop` and adding `add`.
std::vector<ResourceRecord> projected(const Zone& zone, const Name& owner,
                                      const std::vector<ResourceRecord>& drop,
                                      const std::vector<ResourceRecord>& add) {
  auto records = zone.find(owner);
  std::erase_if(records, [&](const ResourceRecord& rr) {
    return std::any_of(drop.begin(), drop.end(), [&](const auto& d) { return dns::same_rdata(rr, d); });
  });
  for (const auto& rr : add) {
    std::erase_if(records, [&](const ResourceRecord& x) { return dns::same_rdata(x, rr); });
    records.push_back(rr);
  }
  return records;
}

void guard_size(const Zone& zone, const Name& owner, const std::vector<ResourceRecord>& records) {
  const auto size = any_response_size(owner, records);
  if (size > zone.options().datagram_cap) {
    throw Error(Errc::size_guard, "records at " + owner.to_string() + " would need " + std::to_string(size) +
                                      " bytes, above the " + std::to_string(zone.options().datagram_cap) +
                                      "-byte datagram cap");
  }
}

Name owner_for_identifier(const Zone& zone, std::string_view identifier) {
  if (identifier.empty()) return zone.service_domain();
  return Name(split_labels(identifier, zone)).concat(zone.service_domain());
}

}  // namespace

Name discovery_name(const Zone& zone, const Name& name) {
  if (!name.is_subdomain_of(zone.service_domain())) return name;
  auto labels = name.relative_to(zone.service_domain());
  for (auto& l : labels) l = strip_underscore(l);
  return Name(std::move(labels)).concat(zone.service_domain());
}

std::uint32_t Diff::from() const { return soa_data(old_soa).serial; }
std::uint32_t Diff::to() const { return soa_data(new_soa).serial; }

Name service_domain_for(const Name& origin, const std::vector<std::string>& service_labels) {
  const auto& labels = origin.labels();
  if (service_labels.empty()) return origin;
  for (std::size_t start = 0; start + service_labels.size() <= labels.size(); ++start) {
    bool match = true;
    for (std::size_t i = 0; match && i < service_labels.size(); ++i) {
      match = dns::iequals(labels[start + i], service_labels[i]);
    }
    if (match) return Name(std::vector<std::string>(labels.begin() + static_cast<std::ptrdiff_t>(start), labels.end()));
  }
  return Name(service_labels).concat(origin);
}

Zone::Zone(ResourceRecord soa, ZoneOptions options) : options_(std::move(options)), soa_(std::move(soa)) {
  if (soa_.type != RRType::SOA || !std::holds_alternative<dns::SoaData>(soa_.rdata)) {
    throw Error(Errc::invalid_argument, "zone needs an SOA record");
  }
  if (options_.journal_retention == 0) options_.journal_retention = 1;
  service_domain_ = service_domain_for(soa_.owner, options_.service_labels);
}

Zone Zone::from_records(std::vector<ResourceRecord> records, ZoneOptions options) {
  const auto soa_count = std::count_if(records.begin(), records.end(),
                                       [](const auto& rr) { return rr.type == RRType::SOA; });
  if (soa_count != 1) {
    throw Error(Errc::invalid_argument, "zone needs exactly one SOA record, found " + std::to_string(soa_count));
  }
  const auto soa = std::find_if(records.begin(), records.end(), [](const auto& rr) { return rr.type == RRType::SOA; });
  Zone zone(*soa, std::move(options));
  for (const auto& rr : records) {
    if (rr.type == RRType::SOA) continue;
    zone.add(rr);
  }
  zone.pending_added_.clear();
  zone.pending_deleted_.clear();
  return zone;
}

Zone Zone::load(const std::filesystem::path& path, const Name& origin, ZoneOptions options) {
  auto file = dns::load_master_file(path, origin);
  auto zone = from_records(std::move(file.records), std::move(options));
  if (!origin.is_root() && zone.origin() != origin) {
    throw Error(Errc::invalid_argument, "zone file " + path.string() + " has its SOA at " +
                                            zone.origin().to_string() + ", expected " + origin.to_string());
  }
  return zone;
}

std::uint32_t Zone::serial() const { return soa_data(soa_).serial; }

std::vector<ResourceRecord> Zone::find(const Name& owner) const {
  std::vector<ResourceRecord> out;
  if (owner == origin()) out.push_back(soa_);
  if (const auto it = nodes_.find(owner); it != nodes_.end()) {
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

std::vector<ResourceRecord> Zone::find(const Name& owner, RRType type) const {
  auto out = find(owner);
  std::erase_if(out, [&](const auto& rr) { return rr.type != type; });
  return out;
}

bool Zone::name_exists(const Name& name) const {
  if (name == origin()) return true;
  const auto it = nodes_.lower_bound(name);
  return it != nodes_.end() && it->first.is_subdomain_of(name);
}

std::optional<Name> Zone::delegation_for(const Name& name) const {
  if (!contains(name)) return std::nullopt;
  std::optional<Name> found;
  for (Name n = name; n != origin(); n = n.parent()) {
    if (!find(n, RRType::NS).empty()) found = n;
  }
  return found;
}

std::vector<ResourceRecord> Zone::records() const {
  std::vector<ResourceRecord> out;
  out.reserve(count_ + 1);
  out.push_back(soa_);
  for (const auto& [owner, list] : nodes_) out.insert(out.end(), list.begin(), list.end());
  return out;
}

std::vector<ResourceRecord> Zone::subtree(const Name& top) const {
  std::vector<ResourceRecord> out;
  for (auto it = nodes_.lower_bound(top); it != nodes_.end() && it->first.is_subdomain_of(top); ++it) {
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

void Zone::insert_now(const ResourceRecord& record) {
  nodes_[record.owner].push_back(record);
  ++count_;
  if (record.type == RRType::PTR) index_ptr(record.owner);
}

bool Zone::erase_now(const ResourceRecord& record) {
  const auto node = nodes_.find(record.owner);
  if (node == nodes_.end()) return false;
  auto& list = node->second;
  const auto it = std::find_if(list.begin(), list.end(), [&](const auto& x) { return dns::same_rdata(x, record); });
  if (it == list.end()) return false;
  list.erase(it);
  --count_;
  const bool ptr_left = std::any_of(list.begin(), list.end(), [](const auto& x) { return x.type == RRType::PTR; });
  if (record.type == RRType::PTR && !ptr_left) unindex_ptr(record.owner);
  if (list.empty()) nodes_.erase(node);
  return true;
}

void Zone::index_ptr(const Name& owner) {
  if (auto id = identifier_of(owner)) ptr_index_[*id].insert(owner);
}

void Zone::unindex_ptr(const Name& owner) {
  const auto id = identifier_of(owner);
  if (!id) return;
  const auto it = ptr_index_.find(*id);
  if (it == ptr_index_.end()) return;
  it->second.erase(owner);
  if (it->second.empty()) ptr_index_.erase(it);
}

bool Zone::add(ResourceRecord record) {
  if (record.type == RRType::SOA) throw Error(Errc::policy, "the SOA record changes only through commits");
  if (record.klass != static_cast<std::uint16_t>(dns::RRClass::IN)) {
    throw Error(Errc::invalid_argument, "only class IN records can be stored");
  }
  if (!contains(record.owner)) {
    throw Error(Errc::policy, record.owner.to_string() + " is outside zone " + origin().to_string());
  }
  const auto existing = find(record.owner);
  for (const auto& rr : existing) {
    if (dns::same_rdata(rr, record)) {
      if (rr.ttl == record.ttl) return false;
      remove(rr);
      break;
    }
  }
  const bool has_cname = std::any_of(existing.begin(), existing.end(), [&](const auto& rr) {
    return rr.type == RRType::CNAME && !dns::same_rdata(rr, record);
  });
  const bool has_other = std::any_of(existing.begin(), existing.end(),
                                     [](const auto& rr) { return rr.type != RRType::CNAME; });
  if (has_cname || (record.type == RRType::CNAME && has_other)) {
    throw Error(Errc::collision, "a CNAME cannot share the owner " + record.owner.to_string());
  }
  insert_now(record);
  if (!take(pending_deleted_, record)) pending_added_.push_back(std::move(record));
  return true;
}

bool Zone::remove(const ResourceRecord& record) {
  if (record.type == RRType::SOA) throw Error(Errc::policy, "the SOA record cannot be removed");
  const auto existing = find(record.owner);
  const auto it = std::find_if(existing.begin(), existing.end(),
                               [&](const auto& rr) { return dns::same_rdata(rr, record); });
  if (it == existing.end()) return false;
  const ResourceRecord stored = *it;
  erase_now(stored);
  if (!take(pending_added_, stored)) pending_deleted_.push_back(stored);
  return true;
}

std::size_t Zone::remove_rrset(const Name& owner, RRType type) {
  std::size_t n = 0;
  for (const auto& rr : find(owner, type)) n += remove(rr) ? 1 : 0;
  return n;
}

DiffPtr Zone::commit() {
  if (!has_pending()) return nullptr;
  auto diff = std::make_shared<Diff>();
  diff->old_soa = soa_;
  auto next = soa_;
  std::get<dns::SoaData>(next.rdata).serial = serial() + 1;
  diff->new_soa = next;
  diff->deleted = std::move(pending_deleted_);
  diff->added = std::move(pending_added_);
  pending_deleted_.clear();
  pending_added_.clear();
  soa_ = std::move(next);
  journal_.push_back(diff);
  while (journal_.size() > options_.journal_retention) journal_.pop_front();
  return diff;
}

void Zone::apply(DiffPtr diff) {
  if (has_pending()) throw Error(Errc::policy, "cannot replay a journal step over staged changes");
  if (diff->from() != serial()) {
    throw Error(Errc::invalid_argument, "journal step starts at serial " + std::to_string(diff->from()) +
                                            " but the zone is at " + std::to_string(serial()));
  }
  for (const auto& rr : diff->deleted) {
    if (!erase_now(rr)) throw Error(Errc::not_found, "journal deletes a missing record: " + rr.to_string());
  }
  for (const auto& rr : diff->added) insert_now(rr);
  soa_ = diff->new_soa;
  journal_.push_back(std::move(diff));
  while (journal_.size() > options_.journal_retention) journal_.pop_front();
}

void Zone::adopt_history(std::vector<DiffPtr> older) {
  if (older.empty()) return;
  std::uint32_t expected = journal_.empty() ? serial() : journal_.front()->from();
  for (auto it = older.rbegin(); it != older.rend(); ++it) {
    if ((*it)->to() != expected) throw Error(Errc::invalid_argument, "journal history is not contiguous");
    expected = (*it)->from();
  }
  journal_.insert(journal_.begin(), older.begin(), older.end());
  while (journal_.size() > options_.journal_retention) journal_.pop_front();
}

std::optional<std::string> Zone::identifier_of(const Name& name) const {
  if (!name.is_subdomain_of(service_domain_)) return std::nullopt;
  auto labels = name.relative_to(service_domain_);
  for (auto& l : labels) l = to_lower(strip_underscore(l));
  return join_labels(labels);
}

std::vector<Name> Zone::ptr_owners(std::string_view prefix, bool exact) const {
  std::vector<Name> out;
  const std::string key = to_lower(prefix);
  if (exact) {
    if (const auto it = ptr_index_.find(key); it != ptr_index_.end()) out.assign(it->second.begin(), it->second.end());
    return out;
  }
  for (auto it = ptr_index_.lower_bound(key); it != ptr_index_.end() && it->first.starts_with(key); ++it) {
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

std::vector<std::string> split_labels(std::string_view identifier, const Zone& zone) {
  LengthLookup lookup = [&zone](const std::vector<std::string>& labels) -> std::optional<std::size_t> {
    const Name owner = Name(labels).concat(zone.service_domain());
    for (const auto& rr : zone.find(owner, RRType::TXT)) {
      for (const auto& s : std::get<dns::TxtData>(rr.rdata).strings) {
        if (auto n = parse_length_declaration(s)) return n;
      }
    }
    return std::nullopt;
  };
  return split_labels(identifier, zone.options().split, lookup);
}

std::optional<std::string> txt_key(const ResourceRecord& record) {
  if (record.type != RRType::TXT) return std::nullopt;
  const auto* txt = std::get_if<dns::TxtData>(&record.rdata);
  if (!txt || txt->strings.empty()) return std::nullopt;
  const auto eq = txt->strings.front().find('=');
  if (eq == std::string::npos || eq == 0) return std::nullopt;
  return txt->strings.front().substr(0, eq);
}

std::size_t any_response_size(const Name& owner, const std::vector<ResourceRecord>& records) {
  dns::Message m;
  m.header.qr = true;
  m.header.aa = true;
  m.questions.push_back({owner, RRType::ANY, static_cast<std::uint16_t>(dns::RRClass::IN)});
  m.answers = records;
  return dns::encode(m).size();
}

std::vector<ResourceRecord> registration_records(const Zone& zone, const DeviceRegistration& reg) {
  if (reg.instance.empty() || reg.instance.size() > dns::kMaxLabelLength ||
      reg.instance.find('.') != std::string::npos) {
    throw Error(Errc::invalid_argument, "instance must be a single DNS label: '" + reg.instance + "'");
  }
  const std::string id = to_lower(reg.identifier);
  if (!is_identifier(id)) {
    throw Error(Errc::invalid_argument, "identifier '" + reg.identifier + "' must be letters and digits");
  }
  if (reg.target.is_root()) throw Error(Errc::invalid_argument, "registration needs a target host");
  for (const auto& [key, value] : reg.txt) validate_key(key);

  const Name ptr_owner = owner_for_identifier(zone, id);
  const Name srv_owner = ptr_owner.prepend(reg.instance);
  const auto ttl = ttl_or_default(zone, reg.ttl);

  std::vector<ResourceRecord> out;
  out.push_back(dns::make_srv(srv_owner, ttl, reg.priority, reg.weight, reg.port, reg.target));
  out.push_back(dns::make_name_record(ptr_owner, RRType::PTR, ttl, srv_owner));
  for (const auto& [key, value] : reg.txt) {
    out.push_back(dns::make_txt(srv_owner, ttl_or_default(zone, reg.txt_ttl.value_or(ttl)), txt_chunks(key, value)));
  }
  return out;
}

RegistrationResult register_device(Zone& zone, const DeviceRegistration& reg) {
  const auto records = registration_records(zone, reg);
  RegistrationResult result{records[0].owner, records[1].owner, false};

  // Replaced data: other SRVs at the instance owner and TXT with the same keys.
  std::vector<ResourceRecord> stale;
  for (const auto& rr : zone.find(result.srv_owner)) {
    if (rr.type == RRType::SRV && !dns::same_rdata(rr, records[0])) stale.push_back(rr);
    const auto key = txt_key(rr);
    if (!key) continue;
    for (std::size_t i = 2; i < records.size(); ++i) {
      if (dns::iequals(*txt_key(records[i]), *key) && !exact_equal(rr, records[i])) stale.push_back(rr);
    }
  }
  std::vector<ResourceRecord> at_owner = {records[0]};
  at_owner.insert(at_owner.end(), records.begin() + 2, records.end());
  guard_size(zone, result.srv_owner, projected(zone, result.srv_owner, stale, at_owner));

  for (const auto& rr : stale) result.changed |= zone.remove(rr);
  for (const auto& rr : records) result.changed |= zone.add(rr);
  return result;
}

bool update_txt(Zone& zone, const Name& owner, std::string_view key, std::string_view value,
                std::uint32_t ttl) {
  validate_key(key);
  if (!zone.contains(owner)) {
    throw Error(Errc::policy, owner.to_string() + " is outside zone " + zone.origin().to_string());
  }
  const auto record = dns::make_txt(owner, ttl_or_default(zone, ttl), txt_chunks(key, value));
  std::vector<ResourceRecord> existing;
  for (const auto& rr : zone.find(owner, RRType::TXT)) {
    if (const auto k = txt_key(rr); k && dns::iequals(*k, key)) existing.push_back(rr);
  }
  if (existing.size() == 1 && exact_equal(existing.front(), record)) return false;
  guard_size(zone, owner, projected(zone, owner, existing, {record}));
  for (const auto& rr : existing) zone.remove(rr);
  zone.add(record);
  return true;
}

bool delete_txt(Zone& zone, const Name& owner, std::string_view key) {
  validate_key(key);
  bool changed = false;
  for (const auto& rr : zone.find(owner, RRType::TXT)) {
    if (const auto k = txt_key(rr); k && dns::iequals(*k, key)) changed |= zone.remove(rr);
  }
  return changed;
}

MultiCnameResult generate_multi_cnames(Zone& zone, const MultiCnameRequest& request) {
  const auto parent = to_lower(request.parent);
  const auto delegated = to_lower(request.delegated);
  if (delegated.size() != parent.size() + 1 || !delegated.starts_with(parent)) {
    throw Error(Errc::invalid_argument,
                "delegated prefix '" + request.delegated + "' must extend '" + request.parent + "' by one symbol");
  }
  if (!is_identifier(delegated)) throw Error(Errc::invalid_argument, "delegated prefix must be letters and digits");
  if (request.ns_target.is_root()) throw Error(Errc::invalid_argument, "delegation needs an NS target");
  if (zone.options().split.mode == SplitPolicy::Mode::dynamic) {
    throw Error(Errc::policy, "CNAME fan-out needs a static or multi split policy");
  }

  std::vector<std::string> children;
  if (request.child_length > 0) {
    const auto& alphabet = request.child_alphabet;
    double total = 1;
    for (std::size_t i = 0; i < request.child_length; ++i) total *= static_cast<double>(alphabet.size());
    if (alphabet.empty() || total > 65536) {
      throw Error(Errc::invalid_argument, "child alphabet and length give too many aliases");
    }
    children.push_back("");
    for (std::size_t i = 0; i < request.child_length; ++i) {
      std::vector<std::string> next;
      for (const auto& c : children) {
        for (char s : alphabet) next.push_back(c + s);
      }
      children = std::move(next);
    }
  }

  const Name parent_owner = owner_for_identifier(zone, parent);
  const std::string symbol = delegated.substr(parent.size());
  MultiCnameResult result;
  result.ns_owner = parent_owner.prepend(symbol);
  const auto ttl = ttl_or_default(zone, request.ttl);

  std::vector<ResourceRecord> aliases;
  for (const auto& c : children) {
    const Name alias = parent_owner.prepend(symbol + c);
    for (const auto& rr : zone.find(alias)) {
      if (rr.type != RRType::CNAME) {
        throw Error(Errc::collision, alias.to_string() + " already holds " + dns::type_name(rr.type) + " data");
      }
    }
    aliases.push_back(dns::make_name_record(alias, RRType::CNAME, ttl, result.ns_owner.prepend(c)));
  }

  const auto ns = dns::make_name_record(result.ns_owner, RRType::NS, ttl, request.ns_target);
  for (const auto& rr : zone.find(result.ns_owner, RRType::NS)) {
    if (!dns::same_rdata(rr, ns)) zone.remove(rr);
  }
  result.ns_changed = zone.add(ns);
  for (const auto& alias : aliases) {
    for (const auto& rr : zone.find(alias.owner, RRType::CNAME)) {
      if (!dns::same_rdata(rr, alias)) zone.remove(rr);
    }
    if (zone.add(alias)) ++result.cnames_added;
  }

  auto policy = zone.options().split;
  if (!policy.delegation_at(parent, symbol)) {
    policy.mode = SplitPolicy::Mode::multi;
    policy.delegations.push_back({parent, delegated, request.child_length});
    zone.set_split_policy(std::move(policy));
  }
  return result;
}

std::vector<ResourceRecord> ptr_discover(const Zone& zone, const Name& name) {
  if (!zone.contains(name)) return {};
  Name current = name;
  for (int hops = 0; hops < 8; ++hops) {
    auto cname = zone.find(current, RRType::CNAME);
    if (cname.empty()) cname = zone.find(discovery_name(zone, current), RRType::CNAME);
    if (cname.empty()) break;
    current = std::get<dns::NameData>(cname.front().rdata).name;
    if (!zone.contains(current)) return {};
  }

  std::vector<Name> owners = {current, discovery_name(zone, current)};
  if (const auto id = zone.identifier_of(current)) {
    const auto matched = zone.ptr_owners(*id, id->size() < zone.options().min_prefix);
    owners.insert(owners.end(), matched.begin(), matched.end());
  }

  std::map<Name, std::uint32_t> targets;
  for (const auto& owner : owners) {
    for (const auto& rr : zone.find(owner, RRType::PTR)) {
      const auto& target = std::get<dns::NameData>(rr.rdata).name;
      auto [it, inserted] = targets.emplace(target, rr.ttl);
      if (!inserted) it->second = std::min(it->second, rr.ttl);
    }
  }
  std::vector<ResourceRecord> out;
  for (const auto& [target, ttl] : targets) out.push_back(dns::make_name_record(name, RRType::PTR, ttl, target));
  return out;
}

std::vector<ResourceRecord> axfr_snapshot(const Zone& zone, const std::optional<Name>& top) {
  std::vector<ResourceRecord> out;
  if (!top || *top == zone.origin()) {
    out = zone.records();
  } else {
    out.push_back(zone.soa());
    const auto below = zone.subtree(*top);
    out.insert(out.end(), below.begin(), below.end());
  }
  out.push_back(zone.soa());
  return out;
}

IxfrResult ixfr_diff(const Zone& zone, std::uint32_t from_serial, const std::optional<Name>& top) {
  IxfrResult result;
  if (from_serial == zone.serial()) return result;

  const auto& journal = zone.journal();
  std::size_t start = journal.size();
  if (!journal.empty()) {
    const std::uint32_t offset = from_serial - journal.front()->from();
    if (offset < journal.size() && journal[offset]->from() == from_serial) start = offset;
  }
  if (start == journal.size()) {
    result.full = true;
    result.snapshot = axfr_snapshot(zone, top);
    return result;
  }
  const auto inside = [&](const ResourceRecord& rr) { return !top || rr.owner.is_subdomain_of(*top); };
  for (std::size_t i = start; i < journal.size(); ++i) {
    Diff step;
    step.old_soa = journal[i]->old_soa;
    step.new_soa = journal[i]->new_soa;
    std::copy_if(journal[i]->deleted.begin(), journal[i]->deleted.end(), std::back_inserter(step.deleted), inside);
    std::copy_if(journal[i]->added.begin(), journal[i]->added.end(), std::back_inserter(step.added), inside);
    result.steps.push_back(std::move(step));
  }
  return result;
}

std::vector<ResourceRecord> ixfr_records(const Zone& zone, const IxfrResult& result) {
  if (result.full) return result.snapshot;
  std::vector<ResourceRecord> out = {zone.soa()};
  if (result.steps.empty()) return out;
  for (const auto& step : result.steps) {
    out.push_back(step.old_soa);
    out.insert(out.end(), step.deleted.begin(), step.deleted.end());
    out.push_back(step.new_soa);
    out.insert(out.end(), step.added.begin(), step.added.end());
  }
  out.push_back(zone.soa());
  return out;
}

std::string export_master_file(const Zone& zone) {
  const auto records = zone.records();
  return dns::format_master_file(zone.origin(), records);
}

}  // namespace semdns::zone
