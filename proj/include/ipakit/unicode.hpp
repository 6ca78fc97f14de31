// Copyright 2026 The ipakit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IPAKIT_UNICODE_HPP_
#define IPAKIT_UNICODE_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace ipakit::unicode {

/// NFC form of UTF-8 text. Invalid UTF-8 sequences become U+FFFD.
std::string nfc(std::string_view text);

/// Canonical decomposition (NFD).
std::string nfd(std::string_view text);

/// Full lowercase mapping, language-sensitive when `locale` is given
/// (e.g. Greek final sigma).
std::string to_lower(std::string_view text, const char *locale = "");

/// Splits UTF-8 text into one string per code point.
std::vector<std::string> code_points(std::string_view text);

/// Decodes UTF-8 to code points.
std::u32string decode(std::string_view text);
std::string encode(char32_t cp);
std::string encode(std::u32string_view cps);

bool is_whitespace(char32_t cp);
/// Unicode general category P*, or ASCII punctuation.
bool is_punctuation(char32_t cp);
bool is_letter(char32_t cp);
bool is_combining_mark(char32_t cp);

}  // namespace ipakit::unicode

#endif  // IPAKIT_UNICODE_HPP_
