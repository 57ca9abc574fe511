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

#include "semdns/dns/wire.hpp"

#include <map>
#include <string>

#include "semdns/bits.hpp"
#include "semdns/error.hpp"

namespace semdns::dns {

namespace {

class Writer {
 public:
  explicit Writer(bool compress) : compress_(compress) {}

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
    out_.push_back(static_cast<std::uint8_t>(v));
  }
  void u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v >> 16));
    u16(static_cast<std::uint16_t>(v));
  }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }

  void name(const Name& n, bool allow_compression) {
    const auto& labels = n.labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto key = suffix_key(labels, i);
      if (compress_ && allow_compression) {
        if (auto it = offsets_.find(key); it != offsets_.end()) {
          u16(static_cast<std::uint16_t>(0xC000 | it->second));
          return;
        }
      }
      if (out_.size() < 0x4000) offsets_.emplace(key, static_cast<std::uint16_t>(out_.size()));
      u8(static_cast<std::uint8_t>(labels[i].size()));
      bytes({reinterpret_cast<const std::uint8_t*>(labels[i].data()), labels[i].size()});
    }
    u8(0);
  }

  std::size_t size() const noexcept { return out_.size(); }
  void patch_u16(std::size_t pos, std::uint16_t v) {
    out_[pos] = static_cast<std::uint8_t>(v >> 8);
    out_[pos + 1] = static_cast<std::uint8_t>(v);
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  static std::string suffix_key(const std::vector<std::string>& labels, std::size_t from) {
    std::string key;
    for (std::size_t i = from; i < labels.size(); ++i) {
      key += to_lower(labels[i]);
      key.push_back('\0');
    }
    return key;
  }

  bool compress_;
  std::vector<std::uint8_t> out_;
  std::map<std::string, std::uint16_t> offsets_;
};

void write_rdata(Writer& w, const ResourceRecord& rr) {
  struct Visitor {
    Writer& w;
    RRType type;
    void operator()(const RawData& raw) const { w.bytes(raw.bytes); }
    void operator()(const AData& a) const { w.bytes(a.address); }
    void operator()(const AaaaData& a) const { w.bytes(a.address); }
    void operator()(const NameData& n) const { w.name(n.name, true); }
    void operator()(const SoaData& s) const {
      w.name(s.mname, true);
      w.name(s.rname, true);
      w.u32(s.serial);
      w.u32(s.refresh);
      w.u32(s.retry);
      w.u32(s.expire);
      w.u32(s.minimum);
    }
    void operator()(const SrvData& s) const {
      w.u16(s.priority);
      w.u16(s.weight);
      w.u16(s.port);
      w.name(s.target, false);
    }
    void operator()(const TxtData& t) const {
      for (const auto& s : t.strings) {
        if (s.size() > 255) throw Error(Errc::wire, "TXT character-string longer than 255 bytes");
        w.u8(static_cast<std::uint8_t>(s.size()));
        w.bytes({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
      }
    }
  };
  std::visit(Visitor{w, rr.type}, rr.rdata);
}

void write_record(Writer& w, const ResourceRecord& rr) {
  w.name(rr.owner, true);
  w.u16(static_cast<std::uint16_t>(rr.type));
  w.u16(rr.klass);
  w.u32(rr.ttl);
  const auto len_pos = w.size();
  w.u16(0);
  write_rdata(w, rr);
  const auto len = w.size() - len_pos - 2;
  if (len > 0xFFFF) throw Error(Errc::wire, "rdata longer than 65535 bytes");
  w.patch_u16(len_pos, static_cast<std::uint16_t>(len));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t pos() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return data_.size() - pos_; }

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    const auto v = static_cast<std::uint16_t>((data_[pos_] << 8) | data_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    const std::uint32_t hi = u16();
    return (hi << 16) | u16();
  }
  std::vector<std::uint8_t> bytes(std::size_t n) {
    need(n);
    std::vector<std::uint8_t> out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                  data_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    return out;
  }

  Name name() {
    std::vector<std::string> labels;
    std::size_t cursor = pos_;
    std::size_t jumps = 0;
    bool jumped = false;
    std::size_t total = 1;
    while (true) {
      if (cursor >= data_.size()) throw Error(Errc::wire, "name runs past end of message");
      const std::uint8_t len = data_[cursor];
      if ((len & 0xC0) == 0xC0) {
        if (cursor + 1 >= data_.size()) throw Error(Errc::wire, "truncated compression pointer");
        const std::size_t target = ((len & 0x3F) << 8) | data_[cursor + 1];
        if (!jumped) pos_ = cursor + 2;
        jumped = true;
        if (++jumps > 64 || target >= cursor) throw Error(Errc::wire, "compression pointer loop");
        cursor = target;
        continue;
      }
      if ((len & 0xC0) != 0) throw Error(Errc::wire, "unsupported label type");
      if (len == 0) {
        if (!jumped) pos_ = cursor + 1;
        break;
      }
      if (cursor + 1 + len > data_.size()) throw Error(Errc::wire, "label runs past end of message");
      total += len + 1;
      if (total > kMaxNameLength) throw Error(Errc::wire, "name longer than 255 bytes");
      labels.emplace_back(reinterpret_cast<const char*>(data_.data() + cursor + 1), len);
      cursor += 1 + len;
    }
    return Name(std::move(labels));
  }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw Error(Errc::wire, "message truncated");
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

RData read_rdata(Reader& r, RRType type, std::size_t rdlength) {
  const std::size_t end = r.pos() + rdlength;
  if (r.remaining() < rdlength) throw Error(Errc::wire, "rdata runs past end of message");
  if (rdlength == 0) return RawData{};
  RData out;
  switch (type) {
    case RRType::A: {
      if (rdlength != 4) throw Error(Errc::wire, "A rdata must be 4 bytes");
      AData a;
      const auto b = r.bytes(4);
      std::copy(b.begin(), b.end(), a.address.begin());
      out = a;
      break;
    }
    case RRType::AAAA: {
      if (rdlength != 16) throw Error(Errc::wire, "AAAA rdata must be 16 bytes");
      AaaaData a;
      const auto b = r.bytes(16);
      std::copy(b.begin(), b.end(), a.address.begin());
      out = a;
      break;
    }
    case RRType::NS:
    case RRType::CNAME:
    case RRType::PTR:
      out = NameData{r.name()};
      break;
    case RRType::SOA: {
      SoaData s;
      s.mname = r.name();
      s.rname = r.name();
      s.serial = r.u32();
      s.refresh = r.u32();
      s.retry = r.u32();
      s.expire = r.u32();
      s.minimum = r.u32();
      out = std::move(s);
      break;
    }
    case RRType::SRV: {
      SrvData s;
      s.priority = r.u16();
      s.weight = r.u16();
      s.port = r.u16();
      s.target = r.name();
      out = std::move(s);
      break;
    }
    case RRType::TXT: {
      TxtData t;
      while (r.pos() < end) {
        const auto len = r.u8();
        if (r.pos() + len > end) throw Error(Errc::wire, "TXT string runs past rdata");
        const auto b = r.bytes(len);
        t.strings.emplace_back(b.begin(), b.end());
      }
      out = std::move(t);
      break;
    }
    default:
      out = RawData{r.bytes(rdlength)};
      break;
  }
  if (r.pos() != end) throw Error(Errc::wire, "rdata length mismatch for " + type_name(type));
  return out;
}

ResourceRecord read_record(Reader& r) {
  ResourceRecord rr;
  rr.owner = r.name();
  rr.type = static_cast<RRType>(r.u16());
  rr.klass = r.u16();
  rr.ttl = r.u32();
  const auto rdlength = r.u16();
  rr.rdata = read_rdata(r, rr.type, rdlength);
  return rr;
}

}  // namespace

const char* rcode_name(Rcode rcode) noexcept {
  switch (rcode) {
    case Rcode::noerror: return "NOERROR";
    case Rcode::formerr: return "FORMERR";
    case Rcode::servfail: return "SERVFAIL";
    case Rcode::nxdomain: return "NXDOMAIN";
    case Rcode::notimp: return "NOTIMP";
    case Rcode::refused: return "REFUSED";
    case Rcode::yxdomain: return "YXDOMAIN";
    case Rcode::yxrrset: return "YXRRSET";
    case Rcode::nxrrset: return "NXRRSET";
    case Rcode::notauth: return "NOTAUTH";
    case Rcode::notzone: return "NOTZONE";
  }
  return "RESERVED";
}

const char* opcode_name(Opcode opcode) noexcept {
  switch (opcode) {
    case Opcode::query: return "QUERY";
    case Opcode::notify: return "NOTIFY";
    case Opcode::update: return "UPDATE";
  }
  return "RESERVED";
}

std::vector<std::uint8_t> encode(const Message& m, bool compress) {
  Writer w(compress);
  const auto& h = m.header;
  w.u16(h.id);
  std::uint16_t flags = 0;
  flags |= h.qr ? 0x8000 : 0;
  flags |= static_cast<std::uint16_t>((static_cast<unsigned>(h.opcode) & 0xF) << 11);
  flags |= h.aa ? 0x0400 : 0;
  flags |= h.tc ? 0x0200 : 0;
  flags |= h.rd ? 0x0100 : 0;
  flags |= h.ra ? 0x0080 : 0;
  flags |= h.ad ? 0x0020 : 0;
  flags |= h.cd ? 0x0010 : 0;
  flags |= static_cast<std::uint16_t>(static_cast<unsigned>(h.rcode) & 0xF);
  w.u16(flags);
  for (auto n : {m.questions.size(), m.answers.size(), m.authority.size(), m.additional.size()}) {
    if (n > 0xFFFF) throw Error(Errc::wire, "section has more than 65535 entries");
    w.u16(static_cast<std::uint16_t>(n));
  }
  for (const auto& q : m.questions) {
    w.name(q.name, true);
    w.u16(static_cast<std::uint16_t>(q.type));
    w.u16(q.klass);
  }
  for (const auto* section : {&m.answers, &m.authority, &m.additional}) {
    for (const auto& rr : *section) write_record(w, rr);
  }
  return w.take();
}

Message decode(std::span<const std::uint8_t> bytes, std::vector<std::size_t>* additional_offsets) {
  if (bytes.size() < kHeaderSize) throw Error(Errc::wire, "message shorter than a header");
  Reader r(bytes);
  Message m;
  m.header.id = r.u16();
  const auto flags = r.u16();
  m.header.qr = (flags & 0x8000) != 0;
  m.header.opcode = static_cast<Opcode>((flags >> 11) & 0xF);
  m.header.aa = (flags & 0x0400) != 0;
  m.header.tc = (flags & 0x0200) != 0;
  m.header.rd = (flags & 0x0100) != 0;
  m.header.ra = (flags & 0x0080) != 0;
  m.header.ad = (flags & 0x0020) != 0;
  m.header.cd = (flags & 0x0010) != 0;
  m.header.rcode = static_cast<Rcode>(flags & 0xF);
  const auto qd = r.u16();
  const auto an = r.u16();
  const auto ns = r.u16();
  const auto ar = r.u16();
  for (unsigned i = 0; i < qd; ++i) {
    Question q;
    q.name = r.name();
    q.type = static_cast<RRType>(r.u16());
    q.klass = r.u16();
    m.questions.push_back(std::move(q));
  }
  for (unsigned i = 0; i < an; ++i) m.answers.push_back(read_record(r));
  for (unsigned i = 0; i < ns; ++i) m.authority.push_back(read_record(r));
  for (unsigned i = 0; i < ar; ++i) {
    if (additional_offsets) additional_offsets->push_back(r.pos());
    m.additional.push_back(read_record(r));
  }
  if (r.remaining() != 0) throw Error(Errc::wire, "trailing bytes after message");
  return m;
}

std::size_t rdata_wire_size(const ResourceRecord& record) {
  Writer w(false);
  write_rdata(w, record);
  return w.size();
}

}  // namespace semdns::dns
