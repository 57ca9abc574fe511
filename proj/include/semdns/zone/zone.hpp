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

#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semdns/dns/record.hpp"
#include "semdns/zone/split.hpp"

namespace semdns::zone {

using dns::Name;
using dns::ResourceRecord;

struct ZoneOptions {
  /// Service pair under which devices are registered.
  std::vector<std::string> service_labels = {"_iot", "_udp"};
  SplitPolicy split;
  std::uint32_t discovery_ttl = 100;
  /// Identifier prefixes shorter than this only match owners exactly.
  std::size_t min_prefix = 2;
  std::size_t journal_retention = 1024;
  /// Upper bound for a datagram response; TXT data that would not fit is rejected.
  std::size_t datagram_cap = 1460;
};

/// One serial step. SOA records are kept separately from the data changes.
struct Diff {
  ResourceRecord old_soa;
  ResourceRecord new_soa;
  std::vector<ResourceRecord> deleted;
  std::vector<ResourceRecord> added;

  std::uint32_t from() const;
  std::uint32_t to() const;
};

using DiffPtr = std::shared_ptr<const Diff>;

/// Records of one zone plus its change journal. A value type: copies are
/// independent. Mutations are staged with add/remove and become one serial
/// step on commit().
class Zone {
 public:
  Zone(ResourceRecord soa, ZoneOptions options = {});

  /// Requires exactly one SOA, at the apex, and every record inside the zone.
  static Zone from_records(std::vector<ResourceRecord> records, ZoneOptions options = {});
  static Zone load(const std::filesystem::path& path, const Name& origin, ZoneOptions options = {});

  const Name& origin() const noexcept { return soa_.owner; }
  const Name& service_domain() const noexcept { return service_domain_; }
  const ZoneOptions& options() const noexcept { return options_; }
  void set_split_policy(SplitPolicy policy) { options_.split = std::move(policy); }
  const ResourceRecord& soa() const noexcept { return soa_; }
  std::uint32_t serial() const;

  bool contains(const Name& name) const noexcept { return name.is_subdomain_of(origin()); }
  /// Records at `owner` (the SOA included at the apex), in insertion order.
  std::vector<ResourceRecord> find(const Name& owner) const;
  std::vector<ResourceRecord> find(const Name& owner, dns::RRType type) const;
  /// True when the name owns records or has descendants that do.
  bool name_exists(const Name& name) const;
  /// Closest non-apex NS owner at or above `name`.
  std::optional<Name> delegation_for(const Name& name) const;

  /// Every record, SOA first, owners in canonical order.
  std::vector<ResourceRecord> records() const;
  /// Records at or below `top`, SOA excluded.
  std::vector<ResourceRecord> subtree(const Name& top) const;
  std::size_t record_count() const noexcept { return count_ + 1; }

  /// Stages an addition. A record with the same rdata but another TTL is
  /// replaced. Returns false when the identical record is already present.
  bool add(ResourceRecord record);
  /// Stages removal of the record with the same owner, type and rdata.
  bool remove(const ResourceRecord& record);
  /// Stages removal of every record of `type` at `owner`.
  std::size_t remove_rrset(const Name& owner, dns::RRType type);

  bool has_pending() const noexcept { return !pending_deleted_.empty() || !pending_added_.empty(); }
  /// Bumps the serial once for the staged changes and journals them.
  /// Returns nullptr when nothing changed.
  DiffPtr commit();

  /// Replays a journal step; `diff.from()` must equal the current serial.
  void apply(DiffPtr diff);
  /// Prepends history that ends at the current serial without changing data.
  void adopt_history(std::vector<DiffPtr> older);

  const std::deque<DiffPtr>& journal() const noexcept { return journal_; }

  /// Identifier spelled by the labels between `name` and the service domain,
  /// with one leading underscore removed from each label and lowercased.
  /// nullopt when `name` is not below the service domain.
  std::optional<std::string> identifier_of(const Name& name) const;
  /// PTR owners whose identifier starts with (or, if `exact`, equals) `prefix`.
  std::vector<Name> ptr_owners(std::string_view prefix, bool exact) const;

 private:
  void insert_now(const ResourceRecord& record);
  bool erase_now(const ResourceRecord& record);
  void index_ptr(const Name& owner);
  void unindex_ptr(const Name& owner);

  ZoneOptions options_;
  ResourceRecord soa_;
  Name service_domain_;
  std::map<Name, std::vector<ResourceRecord>> nodes_;
  std::size_t count_ = 0;
  std::map<std::string, std::set<Name>> ptr_index_;
  std::deque<DiffPtr> journal_;
  std::vector<ResourceRecord> pending_deleted_;
  std::vector<ResourceRecord> pending_added_;
};

/// Service domain for an origin: the origin itself when it already begins
/// with the service labels, the enclosing service domain when the origin is a
/// delegated subtree below one (`c.ab._iot._udp.iot.org.`), otherwise the
/// service labels prepended to it.
Name service_domain_for(const Name& origin, const std::vector<std::string>& service_labels);

/// `name` with one leading underscore dropped from each label below the
/// service domain; other names are returned unchanged.
Name discovery_name(const Zone& zone, const Name& name);

/// Owner labels for an identifier under the zone's split policy.
std::vector<std::string> split_labels(std::string_view identifier, const Zone& zone);

struct DeviceRegistration {
  std::string instance;
  std::string identifier;
  std::uint16_t priority = 10;
  std::uint16_t weight = 20;
  std::uint16_t port = 0;
  Name target;
  std::vector<std::pair<std::string, std::string>> txt;
  /// 0 selects the zone's discovery TTL.
  std::uint32_t ttl = 0;
  /// TTL for the TXT data; defaults to `ttl`.
  std::optional<std::uint32_t> txt_ttl;
};

struct RegistrationResult {
  Name srv_owner;
  Name ptr_owner;
  bool changed = false;
};

/// The records a registration creates: SRV, PTR, then one TXT per pair.
std::vector<ResourceRecord> registration_records(const Zone& zone, const DeviceRegistration& reg);

/// Stages SRV, PTR and TXT records for a device. Re-registering identical data
/// stages nothing.
RegistrationResult register_device(Zone& zone, const DeviceRegistration& reg);

/// Stages replacement of the `key=` TXT at `owner`; ttl 0 selects the discovery
/// TTL. Values longer than one character-string are split across several. Returns false when the record is
/// already present unchanged. Throws Errc::size_guard when the owner's records
/// would no longer fit in one datagram.
bool update_txt(Zone& zone, const Name& owner, std::string_view key, std::string_view value,
                std::uint32_t ttl);
/// Stages removal of the `key=` TXT at `owner`.
bool delete_txt(Zone& zone, const Name& owner, std::string_view key);

/// Key of a `key=value` TXT record, or nullopt for other TXT data.
std::optional<std::string> txt_key(const ResourceRecord& record);

/// Wire size of an ANY response listing `records` at `owner`.
std::size_t any_response_size(const Name& owner, const std::vector<ResourceRecord>& records);

struct MultiCnameRequest {
  std::string parent;     // identifier prefix, e.g. "12"
  std::string delegated;  // parent plus one symbol, e.g. "12a"
  std::size_t child_length = 1;
  Name ns_target;
  /// Symbols that may follow the delegated prefix.
  std::string child_alphabet = "0123456789bcdefghjkmnpqrstuvwxyz";
  std::uint32_t ttl = 0;
};

struct MultiCnameResult {
  Name ns_owner;
  std::size_t cnames_added = 0;
  bool ns_changed = false;
};

/// Stages one NS record for the delegated subtree and one CNAME per child
/// label mapping the flat spelling to the nested owner, and records the
/// delegation in the zone's split policy. Throws Errc::collision when an alias
/// owner already holds non-CNAME data.
MultiCnameResult generate_multi_cnames(Zone& zone, const MultiCnameRequest& request);

/// PTR records answering a discovery query for `name`, owned by `name`.
/// One leading underscore per label is ignored, CNAMEs are followed, and the
/// answer is the union of every PTR whose identifier extends the queried one.
std::vector<ResourceRecord> ptr_discover(const Zone& zone, const Name& name);

/// SOA, every record at or below `top` (the whole zone by default), SOA.
std::vector<ResourceRecord> axfr_snapshot(const Zone& zone, const std::optional<Name>& top = std::nullopt);

struct IxfrResult {
  /// Set when the journal cannot serve the request and a full transfer is sent.
  bool full = false;
  std::vector<Diff> steps;
  std::vector<ResourceRecord> snapshot;
};

/// Journal steps from `from_serial` to the current serial, restricted to the
/// subtree at `top`. Falls back to a full snapshot when the serial is not
/// retained or is ahead of the zone.
IxfrResult ixfr_diff(const Zone& zone, std::uint32_t from_serial,
                     const std::optional<Name>& top = std::nullopt);

/// Transfer framing: a single SOA when nothing changed, the AXFR sequence for
/// a fallback, else new SOA, then old SOA / deletions / new SOA / additions
/// per step, then new SOA.
std::vector<ResourceRecord> ixfr_records(const Zone& zone, const IxfrResult& result);

std::string export_master_file(const Zone& zone);

}  // namespace semdns::zone
