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

#include "semdns/client/client.hpp"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <random>

#include "semdns/error.hpp"
#include "semdns/server/update_token.hpp"

namespace semdns::client {

using dns::Message;
using dns::RRType;

namespace {

/// Owns a socket descriptor.
class Socket {
 public:
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket() {
    if (fd_ >= 0) close(fd_);
  }
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

int connect_to(const std::string& host, std::uint16_t port, int type, std::chrono::milliseconds timeout) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = type;
  hints.ai_flags = AI_NUMERICSERV;
  addrinfo* res = nullptr;
  const auto service = std::to_string(port);
  if (const int rc = getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw Error(Errc::network, "cannot resolve server '" + host + "': " + gai_strerror(rc));
  }
  std::string last_error = "no address";
  for (auto* ai = res; ai; ai = ai->ai_next) {
    const int fd = socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, 0);
    if (fd < 0) continue;
    fcntl(fd, F_SETFL, fcntl(fd, F_GETFL) | O_NONBLOCK);
    int rc = connect(fd, ai->ai_addr, ai->ai_addrlen);
    if (rc != 0 && errno == EINPROGRESS) {
      pollfd p{fd, POLLOUT, 0};
      rc = poll(&p, 1, static_cast<int>(timeout.count())) == 1 ? 0 : -1;
      int err = rc == 0 ? 0 : ETIMEDOUT;
      socklen_t len = sizeof err;
      if (rc == 0) getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len);
      if (err != 0) {
        errno = err;
        rc = -1;
      }
    }
    if (rc == 0) {
      freeaddrinfo(res);
      return fd;
    }
    last_error = std::strerror(errno);
    close(fd);
  }
  freeaddrinfo(res);
  throw Error(Errc::network, "cannot connect to " + host + " port " + service + ": " + last_error);
}

using Clock = std::chrono::steady_clock;

int remaining_ms(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
  return left > 0 ? static_cast<int>(left) : 0;
}

void wait_for(int fd, short events, Clock::time_point deadline) {
  pollfd p{fd, events, 0};
  while (true) {
    const int rc = poll(&p, 1, remaining_ms(deadline));
    if (rc < 0 && errno == EINTR) continue;
    if (rc == 0) throw Error(Errc::timeout, "no answer from server before the timeout");
    if (rc < 0) throw Error(Errc::network, std::string("poll: ") + std::strerror(errno));
    return;
  }
}

void send_all(int fd, const std::uint8_t* data, std::size_t n, Clock::time_point deadline) {
  std::size_t sent = 0;
  while (sent < n) {
    const auto rc = send(fd, data + sent, n - sent, MSG_NOSIGNAL);
    if (rc < 0 && (errno == EAGAIN || errno == EINTR)) {
      wait_for(fd, POLLOUT, deadline);
      continue;
    }
    if (rc < 0) throw Error(Errc::network, std::string("send: ") + std::strerror(errno));
    sent += static_cast<std::size_t>(rc);
  }
}

void recv_exact(int fd, std::uint8_t* data, std::size_t n, Clock::time_point deadline) {
  std::size_t got = 0;
  while (got < n) {
    wait_for(fd, POLLIN, deadline);
    const auto rc = recv(fd, data + got, n - got, 0);
    if (rc < 0 && (errno == EAGAIN || errno == EINTR)) continue;
    if (rc < 0) throw Error(Errc::network, std::string("recv: ") + std::strerror(errno));
    if (rc == 0) throw Error(Errc::network, "server closed the connection");
    got += static_cast<std::size_t>(rc);
  }
}

std::vector<std::uint8_t> recv_framed(int fd, Clock::time_point deadline) {
  std::uint8_t len[2];
  recv_exact(fd, len, 2, deadline);
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(len[0] << 8 | len[1]));
  recv_exact(fd, buf.data(), buf.size(), deadline);
  return buf;
}

void send_framed(int fd, std::span<const std::uint8_t> bytes, Clock::time_point deadline) {
  if (bytes.size() > dns::kMaxMessageSize) throw Error(Errc::invalid_argument, "message too large");
  std::vector<std::uint8_t> framed = {static_cast<std::uint8_t>(bytes.size() >> 8),
                                      static_cast<std::uint8_t>(bytes.size())};
  framed.insert(framed.end(), bytes.begin(), bytes.end());
  send_all(fd, framed.data(), framed.size(), deadline);
}

std::uint32_t soa_serial(const dns::ResourceRecord& rr) { return std::get<dns::SoaData>(rr.rdata).serial; }

}  // namespace

Message make_query(const dns::Name& name, RRType type, std::uint16_t id, bool edns) {
  Message m;
  m.header.id = id;
  m.questions.push_back({name, type, static_cast<std::uint16_t>(dns::RRClass::IN)});
  if (edns) {
    dns::ResourceRecord opt;
    opt.type = RRType::OPT;
    opt.klass = 1460;
    opt.rdata = dns::RawData{};
    m.additional.push_back(opt);
  }
  return m;
}

Message make_ixfr_query(const dns::Name& name, std::uint32_t serial, std::uint16_t id) {
  auto m = make_query(name, RRType::IXFR, id, false);
  m.authority.push_back(dns::make_soa(name, 0, {dns::Name(), dns::Name(), serial, 0, 0, 0, 0}));
  return m;
}

Message make_update(const dns::Name& zone, std::vector<dns::ResourceRecord> updates, std::uint16_t id) {
  Message m;
  m.header.id = id;
  m.header.opcode = dns::Opcode::update;
  m.questions.push_back({zone, RRType::SOA, static_cast<std::uint16_t>(dns::RRClass::IN)});
  m.authority = std::move(updates);
  return m;
}

std::vector<dns::ResourceRecord> transfer_records(const std::vector<Message>& messages) {
  std::vector<dns::ResourceRecord> out;
  for (const auto& m : messages) out.insert(out.end(), m.answers.begin(), m.answers.end());
  return out;
}

Client::Client(std::string host, std::uint16_t port, std::chrono::milliseconds timeout)
    : host_(std::move(host)), port_(port), timeout_(timeout) {}

std::uint16_t Client::next_id() {
  thread_local std::mt19937 rng{std::random_device{}()};
  return static_cast<std::uint16_t>(rng());
}

Message Client::exchange_datagram(std::span<const std::uint8_t> request, std::uint16_t id) {
  const auto deadline = Clock::now() + timeout_;
  Socket s(connect_to(host_, port_, SOCK_DGRAM, timeout_));
  send_all(s.get(), request.data(), request.size(), deadline);
  std::vector<std::uint8_t> buf(65535);
  while (true) {
    wait_for(s.get(), POLLIN, deadline);
    const auto n = recv(s.get(), buf.data(), buf.size(), 0);
    if (n < 0 && (errno == EAGAIN || errno == EINTR)) continue;
    if (n < 0) throw Error(Errc::network, "no server at " + host_ + " port " + std::to_string(port_) + ": " +
                                              std::strerror(errno));
    try {
      auto m = dns::decode({buf.data(), static_cast<std::size_t>(n)});
      if (m.header.id == id && m.header.qr) return m;
    } catch (const Error&) {
      // Not our answer; keep waiting.
    }
  }
}

Message Client::exchange_stream(std::span<const std::uint8_t> request, std::uint16_t id) {
  const auto deadline = Clock::now() + timeout_;
  Socket s(connect_to(host_, port_, SOCK_STREAM, timeout_));
  send_framed(s.get(), request, deadline);
  while (true) {
    auto m = dns::decode(recv_framed(s.get(), deadline));
    if (m.header.id == id) return m;
  }
}

Message Client::exchange(const Message& request) {
  const auto bytes = dns::encode(request);
  auto response = exchange_datagram(bytes, request.header.id);
  if (response.header.tc) response = exchange_stream(bytes, request.header.id);
  return response;
}

Message Client::query(const dns::Name& name, RRType type) { return exchange(make_query(name, type, next_id())); }

std::vector<Message> Client::transfer(const Message& request) {
  const auto deadline = Clock::now() + timeout_;
  Socket s(connect_to(host_, port_, SOCK_STREAM, timeout_));
  send_framed(s.get(), dns::encode(request), deadline);

  const bool ixfr = request.questions.at(0).type == RRType::IXFR;
  std::vector<Message> messages;
  std::size_t seen = 0;
  std::optional<std::uint32_t> final_serial;
  bool incremental = false;
  std::size_t soa_index = 0;  // SOAs seen after the first record
  while (true) {
    auto m = dns::decode(recv_framed(s.get(), deadline));
    if (m.header.id != request.header.id) continue;
    if (m.header.rcode != dns::Rcode::noerror) {
      messages.push_back(std::move(m));
      return messages;
    }
    bool done = false;
    for (const auto& rr : m.answers) {
      const std::size_t index = seen++;
      if (index == 0) {
        if (rr.type != RRType::SOA) throw Error(Errc::wire, "transfer does not start with an SOA record");
        final_serial = soa_serial(rr);
        continue;
      }
      if (index == 1) incremental = ixfr && rr.type == RRType::SOA;
      if (rr.type != RRType::SOA) continue;
      if (!incremental) {
        done = true;
      } else if (soa_index++ % 2 == 0 && soa_serial(rr) == *final_serial) {
        done = true;
      }
    }
    messages.push_back(std::move(m));
    // A lone SOA answers an IXFR from an up-to-date client.
    if (done || (ixfr && seen == 1 && messages.size() == 1)) return messages;
  }
}

std::vector<Message> Client::axfr(const dns::Name& name) {
  return transfer(make_query(name, RRType::AXFR, next_id(), false));
}

std::vector<Message> Client::ixfr(const dns::Name& name, std::uint32_t serial) {
  return transfer(make_ixfr_query(name, serial, next_id()));
}

Message Client::update(const Message& request, std::string_view secret) {
  std::vector<std::uint8_t> bytes;
  if (secret.empty()) {
    bytes = dns::encode(request);
  } else {
    const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();
    bytes = server::sign_update(request, secret, now);
  }
  auto response = exchange_datagram(bytes, request.header.id);
  if (response.header.tc) response = exchange_stream(bytes, request.header.id);
  return response;
}

}  // namespace semdns::client
