// Copyright 2026 The BTER Toolkit Authors
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

#ifndef BTER_FORMAT_H_
#define BTER_FORMAT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace bter {

// Nearest integer with ties to even. Used wherever the model rounds to the
// nearest integer.
std::int64_t NearestInt(double x);

// Shortest decimal text that round-trips to the same double. Byte-stable
// across runs and thread counts.
std::string FormatDouble(double x);

std::optional<std::uint64_t> ParseUint(std::string_view text);
std::optional<double> ParseDouble(std::string_view text);

std::string_view Trim(std::string_view text);

}  // namespace bter

#endif  // BTER_FORMAT_H_
