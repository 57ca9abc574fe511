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
#include <string>
#include <string_view>
#include <vector>

#include "semdns/dns/wire.hpp"

namespace semdns::client {

dns::Message make_query(const dns::Name& name, dns::RRType type, std::uint16_t id, bool edns = true);
/// IXFR request carrying the client's serial in the authority section.
dns::Message make_ixfr_query(const dns::Name& name, std::uint32_t serial, std::uint16_t id);
/// UPDATE message for `zone` with the given update section.
dns::Message make_update(const dns::Name& zone, std::vector<dns::ResourceRecord> updates, std::uint16_t id);

/// Records of a transfer stream in order, across messages.
std::vector<dns::ResourceRecord> transfer_records(const std::vector<dns::Message>& messages);

/// Stub client for one server. Throws Errc::network when the server cannot
/// be reached and Errc::timeout when it does not answer in time.
class Client {
 public:
  Client(std::string host, std::uint16_t port, std::chrono::milliseconds timeout = std::chrono::seconds(3));

  /// Sends over datagram transport and retries over a stream when truncated.
  dns::Message exchange(const dns::Message& request);
  dns::Message exchange_datagram(std::span<const std::uint8_t> request, std::uint16_t id);
  dns::Message exchange_stream(std::span<const std::uint8_t> request, std::uint16_t id);

  dns::Message query(const dns::Name& name, dns::RRType type);
  /// Reads a complete AXFR or IXFR stream.
  std::vector<dns::Message> transfer(const dns::Message& request);
  std::vector<dns::Message> axfr(const dns::Name& name);
  std::vector<dns::Message> ixfr(const dns::Name& name, std::uint32_t serial);
  /// Signs the update with `secret` when it is not empty.
  dns::Message update(const dns::Message& request, std::string_view secret);

  std::uint16_t next_id();

 private:
  std::string host_;
  std::uint16_t port_;
  std::chrono::milliseconds timeout_;
};

}  // namespace semdns::client
