// Copyright (c) 2026 The hanphon Authors
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

#ifndef HANPHON_COMMON_UTF8_H_
#define HANPHON_COMMON_UTF8_H_

#include <string>
#include <string_view>

namespace hanphon {

// Throws Error(kFormat) on malformed UTF-8 or surrogate/out-of-range scalars.
std::u32string DecodeUtf8(std::string_view text);

std::string EncodeUtf8(char32_t cp);
std::string EncodeUtf8(std::u32string_view text);

// "U+61FE" style label; at least four hex digits.
std::string CodepointLabel(char32_t cp);
// Parses "U+61FE"; throws Error(kFormat).
char32_t ParseCodepointLabel(std::string_view label);

}  // namespace hanphon

#endif  // HANPHON_COMMON_UTF8_H_
