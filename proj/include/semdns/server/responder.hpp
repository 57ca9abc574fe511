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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semdns/dns/wire.hpp"
#include "semdns/server/update_token.hpp"
#include "semdns/zone/live_zone.hpp"

namespace semdns::server {

enum class Transport { datagram, stream };

struct ResponderOptions {
  /// Largest datagram response; bigger answers are truncated with TC=1.
  std::size_t datagram_cap = 1460;
  /// Shared secret for UPDATE tokens; empty disables token authorization.
  std::string update_secret;
  /// Sources allowed to send UPDATE without a token.
  AddressList update_allow;
  /// Upper bound for one message of a zone transfer.
  std::size_t transfer_message_size = 16384;
};

/// Turns request bytes into response bytes. Thread-safe: queries read zone
/// snapshots, updates go through each zone's single writer.
class Responder {
 public:
  Responder(std::shared_ptr<zone::ZoneCatalog> catalog, ResponderOptions options);

  /// Responses to send back, in order. Empty when the request is dropped
  /// (unreadable header, or a response rather than a request).
  std::vector<std::vector<std::uint8_t>> handle(std::span<const std::uint8_t> request, Transport transport,
                                                std::string_view source) const;

  /// Authoritative answer for a QUERY, before any size limit.
  dns::Message answer_query(const dns::Message& query) const;
  /// SOA-framed AXFR or IXFR stream, split into messages.
  std::vector<dns::Message> answer_transfer(const dns::Message& query) const;
  dns::Message handle_update(std::span<const std::uint8_t> bytes, const dns::Message& request,
                             std::span<const std::size_t> additional_offsets, std::string_view source) const;

  const zone::ZoneCatalog& catalog() const noexcept { return *catalog_; }
  const ResponderOptions& options() const noexcept { return options_; }

 private:
  std::shared_ptr<zone::ZoneCatalog> catalog_;
  ResponderOptions options_;
};

/// Datagram limit for a query: 512 bytes without EDNS, otherwise the
/// advertised payload size clamped to [512, cap].
std::size_t datagram_limit(const dns::Message& query, std::size_t cap);

/// Encodes `response`; when it exceeds `limit`, drops every record section
/// (keeping any OPT record) and sets TC.
std::vector<std::uint8_t> fit_datagram(dns::Message response, std::size_t limit);

}  // namespace semdns::server
