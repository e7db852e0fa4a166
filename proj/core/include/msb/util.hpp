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

#ifndef MSB_UTIL_HPP_
#define MSB_UTIL_HPP_

#include <string>
#include <string_view>

namespace msb {

// Hex-encoded SHA-256 digest of the bytes.
std::string sha256_hex(std::string_view bytes);

// Canonical float formatting for hashed/serialized records: shortest
// round-trip decimal, identical across platforms.
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace msb

#endif  // MSB_UTIL_HPP_
