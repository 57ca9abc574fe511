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

#include <stdexcept>
#include <string>

namespace semdns {

enum class Errc {
  invalid_argument,
  padding,         // bit length not a multiple of five
  decode,          // character outside the alphabet
  range,           // value does not fit its field / coordinate out of bounds
  unknown_context,
  misaligned,      // truncation not at a field boundary
  duplicate,
  not_found,
  parse,           // master file, config, registry file
  wire,            // malformed DNS message
  size_guard,      // response would exceed the datagram byte cap
  collision,
  policy,          // splitting policy cannot be resolved
  refused,
  io,
  network,
  timeout,
};

const char* errc_name(Errc code) noexcept;

/// Base exception for every failure raised by the core library.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace semdns
