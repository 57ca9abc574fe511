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

#include "semdns/dns/name.hpp"

#include <algorithm>
#include <cctype>

#include "semdns/bits.hpp"
#include "semdns/error.hpp"

namespace semdns::dns {

namespace {

unsigned char fold(unsigned char c) noexcept {
  return static_cast<unsigned char>(std::tolower(c));
}

std::strong_ordering compare_labels(std::string_view a, std::string_view b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto ca = fold(static_cast<unsigned char>(a[i]));
    const auto cb = fold(static_cast<unsigned char>(b[i]));
    if (ca != cb) return ca <=> cb;
  }
  return a.size() <=> b.size();
}

void check_limits(const std::vector<std::string>& labels) {
  std::size_t total = 1;
  for (const auto& l : labels) {
    if (l.empty()) throw Error(Errc::invalid_argument, "empty label in domain name");
    if (l.size() > kMaxLabelLength) {
      throw Error(Errc::invalid_argument, "label longer than 63 bytes: " + l.substr(0, 16) + "...");
    }
    total += l.size() + 1;
  }
  if (total > kMaxNameLength) throw Error(Errc::invalid_argument, "domain name longer than 255 bytes");
}

}  // namespace

bool iequals(std::string_view a, std::string_view b) noexcept {
  return compare_labels(a, b) == std::strong_ordering::equal;
}

Name::Name(std::vector<std::string> labels) : labels_(std::move(labels)) { check_limits(labels_); }

Name Name::parse(std::string_view text, const Name& origin) {
  if (text == "@") return origin;
  if (text == ".") return Name();
  if (text.empty()) throw Error(Errc::invalid_argument, "empty domain name");

  std::vector<std::string> labels;
  std::string current;
  bool absolute = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\\') {
      if (i + 1 >= text.size()) throw Error(Errc::invalid_argument, "dangling escape in name");
      if (i + 3 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])) &&
          std::isdigit(static_cast<unsigned char>(text[i + 2])) &&
          std::isdigit(static_cast<unsigned char>(text[i + 3]))) {
        const int v = (text[i + 1] - '0') * 100 + (text[i + 2] - '0') * 10 + (text[i + 3] - '0');
        if (v > 255) throw Error(Errc::invalid_argument, "escape \\DDD out of range");
        current.push_back(static_cast<char>(v));
        i += 3;
      } else {
        current.push_back(text[++i]);
      }
    } else if (c == '.') {
      if (current.empty()) throw Error(Errc::invalid_argument, "empty label in '" + std::string(text) + "'");
      labels.push_back(std::move(current));
      current.clear();
      if (i + 1 == text.size()) absolute = true;
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) labels.push_back(std::move(current));
  if (!absolute) labels.insert(labels.end(), origin.labels_.begin(), origin.labels_.end());
  return Name(std::move(labels));
}

std::string escape_label(std::string_view label) {
  std::string out;
  for (unsigned char c : label) {
    if (c == '.' || c == '\\' || c == '"' || c == '(' || c == ')' || c == ';' || c == '@' ||
        c == '$') {
      out.push_back('\\');
      out.push_back(static_cast<char>(c));
    } else if (c <= 0x20 || c >= 0x7f) {
      out.push_back('\\');
      out.push_back(static_cast<char>('0' + c / 100));
      out.push_back(static_cast<char>('0' + (c / 10) % 10));
      out.push_back(static_cast<char>('0' + c % 10));
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

std::string Name::to_string() const {
  if (labels_.empty()) return ".";
  std::string out;
  for (const auto& l : labels_) {
    out += escape_label(l);
    out.push_back('.');
  }
  return out;
}

std::size_t Name::wire_length() const noexcept {
  std::size_t n = 1;
  for (const auto& l : labels_) n += l.size() + 1;
  return n;
}

bool Name::is_subdomain_of(const Name& ancestor) const noexcept {
  if (ancestor.labels_.size() > labels_.size()) return false;
  const auto offset = labels_.size() - ancestor.labels_.size();
  for (std::size_t i = 0; i < ancestor.labels_.size(); ++i) {
    if (!iequals(labels_[offset + i], ancestor.labels_[i])) return false;
  }
  return true;
}

Name Name::parent() const {
  if (labels_.empty()) throw Error(Errc::invalid_argument, "the root has no parent");
  Name out;
  out.labels_.assign(labels_.begin() + 1, labels_.end());
  return out;
}

Name Name::prepend(std::string label) const {
  std::vector<std::string> labels;
  labels.reserve(labels_.size() + 1);
  labels.push_back(std::move(label));
  labels.insert(labels.end(), labels_.begin(), labels_.end());
  return Name(std::move(labels));
}

Name Name::concat(const Name& suffix) const {
  std::vector<std::string> labels = labels_;
  labels.insert(labels.end(), suffix.labels_.begin(), suffix.labels_.end());
  return Name(std::move(labels));
}

std::vector<std::string> Name::relative_to(const Name& ancestor) const {
  if (!is_subdomain_of(ancestor)) {
    throw Error(Errc::invalid_argument, to_string() + " is not under " + ancestor.to_string());
  }
  return {labels_.begin(), labels_.end() - static_cast<std::ptrdiff_t>(ancestor.labels_.size())};
}

Name Name::lowercased() const {
  Name out;
  out.labels_.reserve(labels_.size());
  for (const auto& l : labels_) out.labels_.push_back(to_lower(l));
  return out;
}

bool operator==(const Name& a, const Name& b) noexcept {
  if (a.labels_.size() != b.labels_.size()) return false;
  for (std::size_t i = 0; i < a.labels_.size(); ++i) {
    if (!iequals(a.labels_[i], b.labels_[i])) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Name& a, const Name& b) noexcept {
  auto ia = a.labels_.rbegin();
  auto ib = b.labels_.rbegin();
  for (; ia != a.labels_.rend() && ib != b.labels_.rend(); ++ia, ++ib) {
    if (auto c = compare_labels(*ia, *ib); c != std::strong_ordering::equal) return c;
  }
  return a.labels_.size() <=> b.labels_.size();
}

}  // namespace semdns::dns
