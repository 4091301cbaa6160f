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

#ifndef BTER_TOOLS_DIGEST_H_
#define BTER_TOOLS_DIGEST_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace bter::cli {

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view bytes);
// Throws InputError when the file cannot be read.
std::string Sha256File(const std::filesystem::path& path);

}  // namespace bter::cli

#endif  // BTER_TOOLS_DIGEST_H_
