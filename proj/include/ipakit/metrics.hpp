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

#ifndef IPAKIT_METRICS_HPP_
#define IPAKIT_METRICS_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ipakit/phone_inventory.hpp"

namespace ipakit {

using SubstitutionCost = std::function<double(std::string_view, std::string_view)>;

/// Insertions and deletions cost a constant; substitution cost must be
/// symmetric, zero on equal tokens and at most 1.
struct EditCosts {
  double insertion = 1.0;
  double deletion = 1.0;
  SubstitutionCost substitution;

  /// Every substitution of distinct tokens costs 1.
  static EditCosts unit();
  /// Substitution costs the feature Hamming distance over 24. The inventory
  /// must outlive the returned object.
  static EditCosts features(const PhoneInventory &inventory);
};

double unit_substitution_cost(std::string_view a, std::string_view b) noexcept;

/// hamming / 24 for two inventory phones; 1 when either is unknown and they
/// differ; 0 when equal.
double feature_substitution_cost(const PhoneInventory &inventory, std::string_view a,
                                 std::string_view b);

/// Minimal cost of turning `ref` into `hyp` (full Levenshtein lattice).
double edit_distance(std::span<const std::string> ref, std::span<const std::string> hyp,
                     const EditCosts &costs);

struct UtteranceScore {
  double distance = 0.0;
  std::size_t ref_len = 0;
  /// distance / max(ref_len, 1); may exceed 1.
  double rate() const noexcept;
};

UtteranceScore per_score(std::span<const std::string> ref, std::span<const std::string> hyp);
UtteranceScore pfer_score(const PhoneInventory &inventory, std::span<const std::string> ref,
                          std::span<const std::string> hyp);

double per(std::span<const std::string> ref, std::span<const std::string> hyp);
double pfer(const PhoneInventory &inventory, std::span<const std::string> ref,
            std::span<const std::string> hyp);
/// Unit-cost distance over code points, normalized by max(|ref|, 1).
double cer(std::string_view ref_text, std::string_view hyp_text);

struct ScoredUtterance {
  std::string locale;
  UtteranceScore per;
  UtteranceScore pfer;
};

struct LanguageScore {
  std::string locale;
  /// Corpus-level: summed distances over summed reference lengths.
  double per_rate = 0.0;
  double pfer_rate = 0.0;
  /// Mean of per-utterance rates, reported alongside for comparison.
  double per_utterance_mean = 0.0;
  double pfer_utterance_mean = 0.0;
  std::size_t utterance_count = 0;
  std::size_t total_ref_phones = 0;
  double per_distance = 0.0;
  double pfer_distance = 0.0;
};

struct EvalReport {
  std::vector<LanguageScore> per_language;  // sorted by locale
  double overall_per = 0.0;                 // unweighted mean over languages
  double overall_pfer = 0.0;
};

/// Throws std::invalid_argument on empty input.
EvalReport aggregate(std::span<const ScoredUtterance> utterances);

double macro_mean(std::span<const double> values);

/// Recomputes a printed "Overall" cell as the macro mean of its row.
struct OverallCheck {
  std::string label;
  std::vector<double> cells;
  double printed = 0.0;
  double recomputed = 0.0;
  bool matches = false;
};

inline constexpr double kOverallTolerance = 1e-3;

OverallCheck check_overall(std::string label, std::vector<double> cells, double printed,
                           double tolerance = kOverallTolerance);

}  // namespace ipakit

#endif  // IPAKIT_METRICS_HPP_
