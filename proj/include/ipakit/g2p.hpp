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

#ifndef IPAKIT_G2P_HPP_
#define IPAKIT_G2P_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ipakit/ipa_segment.hpp"
#include "ipakit/phone_inventory.hpp"

namespace ipakit::g2p {

// Rule files are line oriented:
//
//   # comment
//   !case lower|preserve          input case policy (default lower)
//   ::V:: = a|e|i|o|u             named grapheme class
//   pattern -> replacement [/ left _ right] [@N]
//
// A context is a sequence of items matched against the input next to the
// pattern: literal text, a class `::V::`, a group `(x|y|::V::|$)`, or a word
// boundary `^` / `$`. Rules default to rank 0; `@N` raises (or lowers) the
// rank. At each position the first matching rule in (rank desc, pattern length
// desc, file order) wins. Application is a single left-to-right pass.

/// One alternative of a context item: literal graphemes, or a word boundary.
struct ContextAlt {
  bool boundary = false;
  std::u32string text;
};

using ContextItem = std::vector<ContextAlt>;

struct RewriteRule {
  std::u32string pattern;  // non-empty
  std::string replacement; // may be empty
  std::vector<ContextItem> left;
  std::vector<ContextItem> right;
  int priority = 0;
  std::size_t line = 0;
};

struct RuleSet {
  std::string locale;
  /// Sorted into application order.
  std::vector<RewriteRule> rules;
  bool lowercase = true;
  /// Rule indices keyed by the first code point of their pattern, in
  /// application order.
  std::unordered_map<char32_t, std::vector<std::size_t>> by_first;
};

RuleSet parse_ruleset(std::string_view source, std::string_view locale);
RuleSet load_ruleset_file(const std::filesystem::path &path, std::string_view locale);

enum class Mode { kStrict, kLenient };

/// Per-rule fire counts, indexed like RuleSet::rules.
using FireCounts = std::vector<std::size_t>;

/// Whitespace and punctuation always pass through (normalization removes
/// them). Other unmatched characters pass through in lenient mode and throw
/// TransliterationError in strict mode. The result is normalize_ipa'd.
std::string transliterate(const RuleSet &rules, std::string_view text, Mode mode = Mode::kLenient,
                          FireCounts *fired = nullptr);

struct ValidationFailure {
  std::string word;
  std::string output;
  std::string reason;
};

struct ValidationReport {
  std::vector<ValidationFailure> failures;
  /// Source line numbers of rules that no lexicon word exercised.
  std::vector<std::size_t> unused_rule_lines;
};

ValidationReport validate_ruleset(const RuleSet &rules, const PhoneInventory &inventory,
                                  const std::vector<std::string> &lexicon);

/// Two-column (orthography, expected IPA) test lexicon.
struct LexiconEntry {
  std::string orthography;
  std::string ipa;
};
std::vector<LexiconEntry> load_lexicon(const std::filesystem::path &path);

/// Locales with a `<locale>.g2p` file in `rules_dir`, sorted.
std::vector<std::string> available_locales(const std::filesystem::path &rules_dir);

}  // namespace ipakit::g2p

#endif  // IPAKIT_G2P_HPP_
