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

#include "semdns/server/server.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

#include "semdns/error.hpp"
#include "semdns/log.hpp"

namespace semdns::server {

namespace {

std::string peer_address(const sockaddr_storage& addr) {
  char host[INET6_ADDRSTRLEN] = {};
  if (addr.ss_family == AF_INET) {
    inet_ntop(AF_INET, &reinterpret_cast<const sockaddr_in&>(addr).sin_addr, host, sizeof host);
  } else if (addr.ss_family == AF_INET6) {
    inet_ntop(AF_INET6, &reinterpret_cast<const sockaddr_in6&>(addr).sin6_addr, host, sizeof host);
  }
  return host;
}

std::uint16_t bound_port(int fd) {
  sockaddr_storage addr{};
  socklen_t len = sizeof addr;
  getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  if (addr.ss_family == AF_INET) return ntohs(reinterpret_cast<sockaddr_in&>(addr).sin_port);
  return ntohs(reinterpret_cast<sockaddr_in6&>(addr).sin6_port);
}

int open_socket(const std::string& host, std::uint16_t port, int type) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = type;
  hints.ai_flags = AI_PASSIVE | AI_NUMERICHOST | AI_NUMERICSERV;
  addrinfo* res = nullptr;
  const auto service = std::to_string(port);
  if (const int rc = getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw Error(Errc::invalid_argument, "bad listen address '" + host + "': " + gai_strerror(rc));
  }
  const int fd = socket(res->ai_family, res->ai_socktype | SOCK_CLOEXEC, 0);
  if (fd < 0) {
    freeaddrinfo(res);
    throw Error(Errc::network, std::string("socket: ") + std::strerror(errno));
  }
  const int one = 1;
  if (type == SOCK_STREAM) setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  const int rc = bind(fd, res->ai_addr, res->ai_addrlen);
  const int err = errno;
  freeaddrinfo(res);
  if (rc != 0) {
    close(fd);
    throw Error(Errc::network, "cannot bind " + host + " port " + service + ": " + std::strerror(err));
  }
  return fd;
}

void set_nonblocking(int fd) { fcntl(fd, F_SETFL, fcntl(fd, F_GETFL) | O_NONBLOCK); }

/// Waits for `fd` to become readable; false on wake-up or timeout.
bool wait_readable(int fd, int wake_fd, int timeout_ms) {
  pollfd fds[2] = {{fd, POLLIN, 0}, {wake_fd, POLLIN, 0}};
  while (true) {
    const int rc = poll(fds, 2, timeout_ms);
    if (rc < 0 && errno == EINTR) continue;
    if (rc <= 0) return false;
    if (fds[1].revents) return false;
    return true;
  }
}

bool read_exact(int fd, int wake_fd, std::uint8_t* buf, std::size_t n, int timeout_ms) {
  std::size_t got = 0;
  while (got < n) {
    if (!wait_readable(fd, wake_fd, timeout_ms)) return false;
    const auto rc = recv(fd, buf + got, n - got, 0);
    if (rc < 0 && (errno == EINTR || errno == EAGAIN)) continue;
    if (rc <= 0) return false;
    got += static_cast<std::size_t>(rc);
  }
  return true;
}

bool write_all(int fd, const std::uint8_t* buf, std::size_t n) {
  std::size_t sent = 0;
  while (sent < n) {
    const auto rc = send(fd, buf + sent, n - sent, MSG_NOSIGNAL);
    if (rc < 0 && errno == EINTR) continue;
    if (rc < 0 && errno == EAGAIN) {
      pollfd p{fd, POLLOUT, 0};
      if (poll(&p, 1, 5000) <= 0) return false;
      continue;
    }
    if (rc <= 0) return false;
    sent += static_cast<std::size_t>(rc);
  }
  return true;
}

ResponderOptions responder_options(const ServerConfig& c) {
  ResponderOptions o;
  o.datagram_cap = c.datagram_cap;
  o.update_secret = c.update_secret;
  o.update_allow = AddressList(c.update_allow);
  return o;
}

}  // namespace

Server::Server(ServerConfig config) : Server(config, load_catalog(config)) {}

Server::Server(ServerConfig config, std::shared_ptr<zone::ZoneCatalog> catalog)
    : config_(std::move(config)), catalog_(catalog), responder_(std::move(catalog), responder_options(config_)) {}

Server::~Server() {
  stop();
  wait();
}

void Server::start() {
  if (started_) throw Error(Errc::invalid_argument, "server already started");
  if (pipe2(wake_, O_CLOEXEC) != 0) throw Error(Errc::network, std::string("pipe: ") + std::strerror(errno));

  // With port 0 the datagram socket picks the port; retry if the stream
  // side of that port happens to be taken.
  for (int attempt = 0;; ++attempt) {
    udp_fd_ = open_socket(config_.listen, config_.port, SOCK_DGRAM);
    port_ = bound_port(udp_fd_);
    try {
      tcp_fd_ = open_socket(config_.listen, port_, SOCK_STREAM);
      break;
    } catch (const Error&) {
      close(udp_fd_);
      udp_fd_ = -1;
      if (config_.port != 0 || attempt >= 8) throw;
    }
  }
  if (listen(tcp_fd_, 64) != 0) throw Error(Errc::network, std::string("listen: ") + std::strerror(errno));
  set_nonblocking(udp_fd_);
  set_nonblocking(tcp_fd_);

  started_ = true;
  for (unsigned i = 0; i < config_.udp_workers; ++i) workers_.emplace_back([this] { udp_loop(); });
  workers_.emplace_back([this] { tcp_accept_loop(); });
  log::info("listening", {{"addr", config_.listen}, {"port", std::to_string(port_)},
                          {"zones", std::to_string(catalog_->zones().size())}});
}

void Server::stop() noexcept {
  if (stopping_.exchange(true)) return;
  if (wake_[1] >= 0) {
    const char byte = 1;
    [[maybe_unused]] const auto rc = ::write(wake_[1], &byte, 1);
  }
}

void Server::wait() {
  if (!started_ || joined_) return;
  for (auto& t : workers_) t.join();
  workers_.clear();
  reap_connections(true);
  for (int* fd : {&udp_fd_, &tcp_fd_, &wake_[0], &wake_[1]}) {
    if (*fd >= 0) close(*fd);
    *fd = -1;
  }
  joined_ = true;
  log::info("stopped", {{"port", std::to_string(port_)}});
}

void Server::udp_loop() {
  std::vector<std::uint8_t> buf(65535);
  while (!stopping_) {
    if (!wait_readable(udp_fd_, wake_[0], -1)) break;
    sockaddr_storage from{};
    socklen_t fromlen = sizeof from;
    const auto n = recvfrom(udp_fd_, buf.data(), buf.size(), 0, reinterpret_cast<sockaddr*>(&from), &fromlen);
    if (n < 0) continue;  // another worker took it
    const auto peer = peer_address(from);
    try {
      for (const auto& out : responder_.handle({buf.data(), static_cast<std::size_t>(n)}, Transport::datagram, peer)) {
        sendto(udp_fd_, out.data(), out.size(), 0, reinterpret_cast<sockaddr*>(&from), fromlen);
      }
    } catch (const std::exception& e) {
      log::error("request failed", {{"src", peer}, {"error", e.what()}});
    }
  }
}

void Server::tcp_accept_loop() {
  while (!stopping_) {
    if (!wait_readable(tcp_fd_, wake_[0], -1)) break;
    sockaddr_storage from{};
    socklen_t fromlen = sizeof from;
    const int fd = accept4(tcp_fd_, reinterpret_cast<sockaddr*>(&from), &fromlen, SOCK_CLOEXEC);
    if (fd < 0) continue;
    reap_connections(false);
    std::lock_guard lock(conn_mu_);
    if (connections_.size() >= config_.max_connections) {
      log::warn("connection limit reached", {{"src", peer_address(from)}});
      close(fd);
      continue;
    }
    auto& conn = connections_.emplace_back();
    conn.thread = std::thread([this, fd, peer = peer_address(from), c = &conn] { serve_connection(fd, peer, c); });
  }
}

void Server::serve_connection(int fd, std::string peer, Connection* self) {
  const int timeout = static_cast<int>(config_.idle_timeout.count());
  std::vector<std::uint8_t> buf;
  while (!stopping_) {
    std::uint8_t len[2];
    if (!read_exact(fd, wake_[0], len, 2, timeout)) break;
    buf.resize(static_cast<std::size_t>(len[0] << 8 | len[1]));
    if (!read_exact(fd, wake_[0], buf.data(), buf.size(), timeout)) break;
    bool ok = true;
    try {
      for (const auto& out : responder_.handle(buf, Transport::stream, peer)) {
        const std::uint8_t prefix[2] = {static_cast<std::uint8_t>(out.size() >> 8),
                                        static_cast<std::uint8_t>(out.size())};
        if (!write_all(fd, prefix, 2) || !write_all(fd, out.data(), out.size())) {
          ok = false;
          break;
        }
      }
    } catch (const std::exception& e) {
      log::error("request failed", {{"src", peer}, {"error", e.what()}});
      ok = false;
    }
    if (!ok) break;
  }
  close(fd);
  self->done = true;
}

void Server::reap_connections(bool all) {
  std::list<Connection> finished;
  {
    std::lock_guard lock(conn_mu_);
    for (auto it = connections_.begin(); it != connections_.end();) {
      if (all || it->done) {
        auto next = std::next(it);
        finished.splice(finished.end(), connections_, it);
        it = next;
      } else {
        ++it;
      }
    }
  }
  for (auto& c : finished) {
    if (c.thread.joinable()) c.thread.join();
  }
}

}  // namespace semdns::server
