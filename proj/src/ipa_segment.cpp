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

#include "ipakit/ipa_segment.hpp"

#include <algorithm>

#include "ipakit/errors.hpp"
#include "ipakit/unicode.hpp"

namespace ipakit {
namespace {

constexpr char32_t kPrimaryStress = 0x02C8;
constexpr char32_t kSecondaryStress = 0x02CC;
constexpr char32_t kLong = 0x02D0;
constexpr char32_t kHalfLong = 0x02D1;

bool is_tone_letter(char32_t cp) { return cp >= 0x02E5 && cp <= 0x02E9; }

bool is_tone_diacritic(char32_t cp) {
  switch (cp) {
    case 0x0300:  // grave
    case 0x0301:  // acute
    case 0x0302:  // circumflex
    case 0x0304:  // macron
    case 0x030B:  // double acute
    case 0x030C:  // caron
    case 0x030F:  // double grave
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string normalize_ipa(std::string_view text, const NormalizeOptions &options) {
  // Tone diacritics may be hidden inside precomposed letters, so strip on NFD.
  const std::string source =
      options.strip_tone_diacritics ? unicode::nfd(text) : unicode::nfc(text);
  std::u32string kept;
  for (char32_t cp : unicode::decode(source)) {
    if (unicode::is_whitespace(cp) || unicode::is_punctuation(cp)) continue;
    if (cp == kPrimaryStress || cp == kSecondaryStress || is_tone_letter(cp)) continue;
    if (!options.keep_length && (cp == kLong || cp == kHalfLong)) continue;
    if (options.strip_tone_diacritics && is_tone_diacritic(cp)) continue;
    kept.push_back(cp);
  }
  return unicode::nfc(unicode::encode(kept));
}

std::vector<std::string> Segmentation::tokens() const {
  std::vector<std::string> out;
  out.reserve(phones.size() + residue.size());
  std::size_t p = 0, r = 0;
  while (p < phones.size() || r < residue.size()) {
    if (r == residue.size() ||
        (p < phones.size() && phone_positions[p] < residue[r].position)) {
      out.push_back(phones[p++]);
    } else {
      out.push_back(residue[r++].character);
    }
  }
  return out;
}

std::string Segmentation::reconstruct() const {
  std::string out;
  for (const auto &t : tokens()) out += t;
  return out;
}

Segmentation segment(const PhoneInventory &inventory, std::string_view text, SegmentMode mode) {
  // Byte offset of every code point boundary, so candidate keys are views.
  std::vector<std::size_t> offsets;
  std::size_t count = 0;
  {
    const auto cps = unicode::decode(text);
    count = cps.size();
    offsets.reserve(count + 1);
    std::size_t byte = 0;
    for (char32_t cp : cps) {
      offsets.push_back(byte);
      byte += unicode::encode(cp).size();
    }
    offsets.push_back(byte);
    if (byte != text.size()) {
      // Invalid UTF-8 was replaced during decode; segment the repaired text.
      return segment(inventory, unicode::encode(cps), mode);
    }
  }

  Segmentation seg;
  const std::size_t max_len = inventory.max_phone_length();
  std::size_t i = 0;
  while (i < count) {
    std::size_t matched = 0;
    for (std::size_t len = std::min(max_len, count - i); len > 0; --len) {
      auto key = text.substr(offsets[i], offsets[i + len] - offsets[i]);
      if (inventory.contains(key)) {
        matched = len;
        break;
      }
    }
    if (matched == 0) {
      std::string ch(text.substr(offsets[i], offsets[i + 1] - offsets[i]));
      if (mode == SegmentMode::kStrict) throw SegmentationError(i, ch);
      seg.residue.push_back({i, std::move(ch)});
      ++i;
      continue;
    }
    seg.phones.emplace_back(text.substr(offsets[i], offsets[i + matched] - offsets[i]));
    seg.phone_positions.push_back(i);
    i += matched;
  }
  return seg;
}

std::string join(std::span<const std::string> phones) {
  std::string out;
  for (const auto &p : phones) out += p;
  return out;
}

}  // namespace ipakit
