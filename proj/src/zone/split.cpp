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

#include "semdns/zone/split.hpp"

#include <charconv>

#include "semdns/dns/name.hpp"
#include "semdns/error.hpp"

namespace semdns::zone {

SplitPolicy SplitPolicy::fixed(std::size_t length) {
  if (length == 0 || length > dns::kMaxLabelLength) {
    throw Error(Errc::invalid_argument, "label length must be in 1..63");
  }
  return SplitPolicy{Mode::static_length, length, {}};
}

SplitPolicy SplitPolicy::dynamic() { return SplitPolicy{Mode::dynamic, 0, {}}; }

SplitPolicy SplitPolicy::multi(std::size_t base_length, std::vector<Delegation> delegations) {
  auto policy = fixed(base_length);
  policy.mode = Mode::multi;
  for (const auto& d : delegations) {
    if (d.delegated.size() != d.parent.size() + 1 || !d.delegated.starts_with(d.parent)) {
      throw Error(Errc::invalid_argument,
                  "delegated prefix '" + d.delegated + "' must extend '" + d.parent + "' by one symbol");
    }
    if (d.child_length > dns::kMaxLabelLength) {
      throw Error(Errc::invalid_argument, "child label length must be at most 63");
    }
  }
  policy.delegations = std::move(delegations);
  return policy;
}

const Delegation* SplitPolicy::delegation_at(std::string_view prefix, std::string_view rest) const {
  for (const auto& d : delegations) {
    if (dns::iequals(d.parent, prefix) && !rest.empty() &&
        dns::iequals(d.delegated.substr(d.parent.size()), rest.substr(0, 1))) {
      return &d;
    }
  }
  return nullptr;
}

const char* split_mode_name(SplitPolicy::Mode mode) noexcept {
  switch (mode) {
    case SplitPolicy::Mode::static_length: return "static";
    case SplitPolicy::Mode::dynamic: return "dynamic";
    case SplitPolicy::Mode::multi: return "multi";
  }
  return "?";
}

std::optional<SplitPolicy::Mode> split_mode_from_name(std::string_view name) noexcept {
  if (name == "static") return SplitPolicy::Mode::static_length;
  if (name == "dynamic") return SplitPolicy::Mode::dynamic;
  if (name == "multi") return SplitPolicy::Mode::multi;
  return std::nullopt;
}

std::optional<std::size_t> parse_length_declaration(std::string_view txt) {
  if (!txt.starts_with("len=")) return std::nullopt;
  const auto digits = txt.substr(4);
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || n == 0 || n > dns::kMaxLabelLength) {
    throw Error(Errc::policy, "invalid length declaration '" + std::string(txt) + "'");
  }
  return n;
}

std::vector<std::string> split_labels(std::string_view identifier, const SplitPolicy& policy,
                                      const LengthLookup& lookup) {
  if (identifier.empty()) throw Error(Errc::invalid_argument, "empty identifier");

  std::vector<std::string> labels;  // least specific first while building
  std::size_t pos = 0;
  std::size_t length = policy.label_length;

  while (pos < identifier.size()) {
    const auto rest = identifier.substr(pos);
    switch (policy.mode) {
      case SplitPolicy::Mode::static_length:
        break;
      case SplitPolicy::Mode::dynamic: {
        if (!lookup) throw Error(Errc::policy, "dynamic splitting needs published lengths");
        const std::vector<std::string> so_far(labels.rbegin(), labels.rend());
        const auto declared = lookup(so_far);
        if (!declared) {
          std::string where = so_far.empty() ? "the service domain" : join_labels(so_far);
          throw Error(Errc::policy, "no len= declaration at " + where);
        }
        length = *declared;
        break;
      }
      case SplitPolicy::Mode::multi:
        if (const auto* d = policy.delegation_at(identifier.substr(0, pos), rest)) {
          labels.emplace_back(rest.substr(0, 1));
          ++pos;
          length = d->child_length;
          if (length == 0) length = policy.label_length;
          continue;
        }
        break;
    }
    const auto take = std::min(length, rest.size());
    labels.emplace_back(rest.substr(0, take));
    pos += take;
  }
  return {labels.rbegin(), labels.rend()};
}

std::string join_labels(std::span<const std::string> labels) {
  std::string out;
  for (auto it = labels.rbegin(); it != labels.rend(); ++it) out += *it;
  return out;
}

}  // namespace semdns::zone
