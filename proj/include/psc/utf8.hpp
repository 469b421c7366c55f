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

#ifndef PSC_UTF8_HPP_
#define PSC_UTF8_HPP_

#include <cstddef>
#include <string>
#include <string_view>

namespace psc::utf8 {

inline constexpr char32_t kZwnj = 0x200C;
// UTF-8 encoding of U+200C.
inline constexpr std::string_view kZwnjUtf8 = "\xE2\x80\x8C";

// Strict decoder: rejects overlongs, surrogates, and code points > U+10FFFF.
bool is_valid(std::string_view bytes);

// Throws DataError on invalid input.
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

// Number of code points; input must be valid UTF-8.
std::size_t length(std::string_view bytes);

}  // namespace psc::utf8

#endif  // PSC_UTF8_HPP_
