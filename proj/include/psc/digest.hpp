// Copyright 2026 The PSC Authors. All Rights Reserved.
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

#ifndef PSC_DIGEST_HPP_
#define PSC_DIGEST_HPP_

#include <istream>
#include <string>
#include <string_view>

namespace psc {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string sha256_hex(std::istream& in);
// Throws DataError if the file cannot be read.
std::string sha256_file(const std::string& path);

}  // namespace psc

#endif  // PSC_DIGEST_HPP_
