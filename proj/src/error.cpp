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

#include "semdns/error.hpp"

namespace semdns {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::padding: return "padding";
    case Errc::decode: return "decode";
    case Errc::range: return "range";
    case Errc::unknown_context: return "unknown-context";
    case Errc::misaligned: return "misaligned";
    case Errc::duplicate: return "duplicate";
    case Errc::not_found: return "not-found";
    case Errc::parse: return "parse";
    case Errc::wire: return "wire";
    case Errc::size_guard: return "size-guard";
    case Errc::collision: return "collision";
    case Errc::policy: return "policy";
    case Errc::refused: return "refused";
    case Errc::io: return "io";
    case Errc::network: return "network";
    case Errc::timeout: return "timeout";
  }
  return "unknown";
}

}  // namespace semdns
