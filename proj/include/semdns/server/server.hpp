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

#include <atomic>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "semdns/server/config.hpp"
#include "semdns/server/responder.hpp"

namespace semdns::server {

/// Authoritative DNS service on one address: datagram and stream sockets on
/// the same port. Datagram requests are served by a small pool of workers,
/// every stream connection by its own thread.
class Server {
 public:
  /// Loads the configured zones.
  explicit Server(ServerConfig config);
  Server(ServerConfig config, std::shared_ptr<zone::ZoneCatalog> catalog);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds both sockets and starts serving. Port 0 picks a free port.
  /// Throws Errc::network when the address cannot be bound.
  void start();
  std::uint16_t port() const noexcept { return port_; }
  /// Asks every thread to finish. Async-signal-safe.
  void stop() noexcept;
  /// Blocks until stop() was called and every thread has finished.
  void wait();

  const Responder& responder() const noexcept { return responder_; }

 private:
  struct Connection {
    std::thread thread;
    std::atomic<bool> done{false};
  };

  void udp_loop();
  void tcp_accept_loop();
  void serve_connection(int fd, std::string peer, Connection* self);
  void reap_connections(bool all);

  ServerConfig config_;
  std::shared_ptr<zone::ZoneCatalog> catalog_;
  Responder responder_;
  int udp_fd_ = -1;
  int tcp_fd_ = -1;
  int wake_[2] = {-1, -1};
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  bool started_ = false;
  bool joined_ = false;
  std::vector<std::thread> workers_;
  std::mutex conn_mu_;
  std::list<Connection> connections_;
};

}  // namespace semdns::server
