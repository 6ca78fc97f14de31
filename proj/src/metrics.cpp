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

#include "ipakit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "ipakit/unicode.hpp"

namespace ipakit {

EditCosts EditCosts::unit() {
  EditCosts c;
  c.substitution = unit_substitution_cost;
  return c;
}

EditCosts EditCosts::features(const PhoneInventory &inventory) {
  EditCosts c;
  c.substitution = [&inventory](std::string_view a, std::string_view b) {
    return feature_substitution_cost(inventory, a, b);
  };
  return c;
}

double unit_substitution_cost(std::string_view a, std::string_view b) noexcept {
  return a == b ? 0.0 : 1.0;
}

double feature_substitution_cost(const PhoneInventory &inventory, std::string_view a,
                                 std::string_view b) {
  if (a == b) return 0.0;
  const auto *va = inventory.find(a);
  const auto *vb = inventory.find(b);
  if (va == nullptr || vb == nullptr) return 1.0;
  return static_cast<double>(hamming(*va, *vb)) / static_cast<double>(kFeatureCount);
}

double edit_distance(std::span<const std::string> ref, std::span<const std::string> hyp,
                     const EditCosts &costs) {
  const auto &sub = costs.substitution ? costs.substitution : SubstitutionCost(unit_substitution_cost);
  // prev[j]: cost of ref[0, i) -> hyp[0, j)
  std::vector<double> prev(hyp.size() + 1), cur(hyp.size() + 1);
  for (std::size_t j = 0; j <= hyp.size(); ++j) prev[j] = static_cast<double>(j) * costs.insertion;
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    cur[0] = static_cast<double>(i) * costs.deletion;
    for (std::size_t j = 1; j <= hyp.size(); ++j) {
      cur[j] = std::min({prev[j] + costs.deletion, cur[j - 1] + costs.insertion,
                         prev[j - 1] + sub(ref[i - 1], hyp[j - 1])});
    }
    std::swap(prev, cur);
  }
  return prev[hyp.size()];
}

double UtteranceScore::rate() const noexcept {
  return distance / static_cast<double>(std::max<std::size_t>(ref_len, 1));
}

UtteranceScore per_score(std::span<const std::string> ref, std::span<const std::string> hyp) {
  return {edit_distance(ref, hyp, EditCosts::unit()), ref.size()};
}

UtteranceScore pfer_score(const PhoneInventory &inventory, std::span<const std::string> ref,
                          std::span<const std::string> hyp) {
  return {edit_distance(ref, hyp, EditCosts::features(inventory)), ref.size()};
}

double per(std::span<const std::string> ref, std::span<const std::string> hyp) {
  return per_score(ref, hyp).rate();
}

double pfer(const PhoneInventory &inventory, std::span<const std::string> ref,
            std::span<const std::string> hyp) {
  return pfer_score(inventory, ref, hyp).rate();
}

double cer(std::string_view ref_text, std::string_view hyp_text) {
  const auto ref = unicode::code_points(ref_text);
  const auto hyp = unicode::code_points(hyp_text);
  return UtteranceScore{edit_distance(ref, hyp, EditCosts::unit()), ref.size()}.rate();
}

EvalReport aggregate(std::span<const ScoredUtterance> utterances) {
  if (utterances.empty()) throw std::invalid_argument("aggregate: no utterances");

  struct Acc {
    double per_distance = 0, pfer_distance = 0, per_rates = 0, pfer_rates = 0;
    std::size_t count = 0, ref = 0;
  };
  std::map<std::string, Acc> by_locale;
  for (const auto &u : utterances) {
    auto &a = by_locale[u.locale];
    a.per_distance += u.per.distance;
    a.pfer_distance += u.pfer.distance;
    a.per_rates += u.per.rate();
    a.pfer_rates += u.pfer.rate();
    a.ref += u.per.ref_len;
    ++a.count;
  }

  EvalReport report;
  std::vector<double> pers, pfers;
  for (const auto &[locale, a] : by_locale) {
    LanguageScore s;
    s.locale = locale;
    const double denom = static_cast<double>(std::max<std::size_t>(a.ref, 1));
    s.per_rate = a.per_distance / denom;
    s.pfer_rate = a.pfer_distance / denom;
    s.per_utterance_mean = a.per_rates / static_cast<double>(a.count);
    s.pfer_utterance_mean = a.pfer_rates / static_cast<double>(a.count);
    s.utterance_count = a.count;
    s.total_ref_phones = a.ref;
    s.per_distance = a.per_distance;
    s.pfer_distance = a.pfer_distance;
    pers.push_back(s.per_rate);
    pfers.push_back(s.pfer_rate);
    report.per_language.push_back(std::move(s));
  }
  report.overall_per = macro_mean(pers);
  report.overall_pfer = macro_mean(pfers);
  return report;
}

double macro_mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("macro_mean: no values");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

OverallCheck check_overall(std::string label, std::vector<double> cells, double printed,
                           double tolerance) {
  OverallCheck c;
  c.label = std::move(label);
  c.recomputed = macro_mean(cells);
  c.cells = std::move(cells);
  c.printed = printed;
  // Printed cells carry 3 decimals; allow for binary rounding at the boundary.
  c.matches = std::abs(c.recomputed - printed) <= tolerance + 1e-9;
  return c;
}

}  // namespace ipakit
