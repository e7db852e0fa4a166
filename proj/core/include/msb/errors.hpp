// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MSB_ERRORS_HPP_
#define MSB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace msb {

// Error taxonomy. Exit-code mapping (see tools/): validation/config/domain
// errors -> 2, gateway errors -> 3, data errors -> 4.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical precondition was violated (out-of-range probability,
// negative count, empty input where at least one element is required).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Bad configuration: invalid weights, malformed taxonomy, grid point off
// the simplex, unknown enum value in a config file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Corrupt or inconsistent data: NaN in a judgment matrix, embedding
// dimension mismatch, unresolvable sample id.
class DataError : public Error {
 public:
  using Error::Error;
};

// Parameter outside its declared range (image-augment params and similar).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Requested more than is available: candidate pool too small, image too
// small to crop, too few samples per strategy for an audit sheet.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// External model endpoint failed after exhausting retries.
class GatewayError : public Error {
 public:
  using Error::Error;
};

// Replay-mode cache miss, or a cache record that cannot be read.
class CacheError : public Error {
 public:
  using Error::Error;
};

// A judge produced output that no adapter could map to a probability.
class JudgeParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace msb

#endif  // MSB_ERRORS_HPP_
