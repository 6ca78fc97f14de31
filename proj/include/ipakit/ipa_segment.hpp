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

#ifndef IPAKIT_IPA_SEGMENT_HPP_
#define IPAKIT_IPA_SEGMENT_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ipakit/phone_inventory.hpp"

namespace ipakit {

struct NormalizeOptions {
  /// Keep the length marks U+02D0 and U+02D1.
  bool keep_length = true;
  /// Also strip combining grave, acute, circumflex, macron, caron and the
  /// double acute/grave when they mark tone.
  bool strip_tone_diacritics = false;
};

/// NFC; removes whitespace, punctuation, stress marks and tone letters.
std::string normalize_ipa(std::string_view text, const NormalizeOptions &options = {});

enum class SegmentMode { kStrict, kLenient };

/// A character skipped in lenient mode. `position` counts code points.
struct Residue {
  std::size_t position;
  std::string character;
  bool operator==(const Residue &) const = default;
};

struct Segmentation {
  std::vector<std::string> phones;
  /// Code point offset of each phone.
  std::vector<std::size_t> phone_positions;
  std::vector<Residue> residue;

  /// Phones and residue characters interleaved in input order. Scoring uses
  /// this so that out-of-inventory symbols still cost something.
  std::vector<std::string> tokens() const;
  /// Concatenation of tokens(); equals the segmented input.
  std::string reconstruct() const;
};

/// Greedy longest match, left to right. Strict mode throws SegmentationError
/// on the first unmatched character; lenient mode records it as residue and
/// advances one code point.
Segmentation segment(const PhoneInventory &inventory, std::string_view text,
                     SegmentMode mode = SegmentMode::kStrict);

std::string join(std::span<const std::string> phones);

}  // namespace ipakit

#endif  // IPAKIT_IPA_SEGMENT_HPP_
