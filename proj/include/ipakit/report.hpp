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

#ifndef IPAKIT_REPORT_HPP_
#define IPAKIT_REPORT_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ipakit/corpus.hpp"
#include "ipakit/ipa_segment.hpp"
#include "ipakit/metrics.hpp"
#include "ipakit/pipeline.hpp"

namespace ipakit::report {

/// Scores `hyp` against `ref` row by row, matched on clip_id. Both sides go
/// through normalize_ipa and segment(); in lenient mode residue characters
/// are scored as tokens. Throws MismatchError when the id sets differ or an
/// id repeats, IngestError when a reference row has no locale.
EvalReport evaluate(const PhoneInventory &inventory, std::span<const corpus::ManifestRow> ref,
                    std::span<const corpus::ManifestRow> hyp, SegmentMode mode = SegmentMode::kLenient);
EvalReport evaluate_files(const PhoneInventory &inventory, const std::filesystem::path &ref,
                          const std::filesystem::path &hyp, SegmentMode mode = SegmentMode::kLenient);

/// Percentages rounded to 3 decimals.
double percent3(double rate) noexcept;
std::string format_percent(double rate);

/// Metric rows, one column per language, then Overall.
std::string eval_table(const EvalReport &report);
/// One "language" record per locale, one "overall" record. `kind` is eval or iaa.
std::string eval_jsonl(const EvalReport &report, std::string_view kind);

struct PublishedScore {
  std::string setting;
  std::string metric;
  std::string system;
  std::string language;  // "Overall" for the printed macro cell
  double value = 0.0;
};

std::vector<PublishedScore> load_published_scores(const std::filesystem::path &path);
/// One check per (setting, metric, system) row, in file order.
std::vector<OverallCheck> check_published(std::span<const PublishedScore> scores);
std::string checks_table(std::span<const OverallCheck> checks);
std::string checks_jsonl(std::span<const OverallCheck> checks);

std::string prepare_table(const PrepareSummary &summary);
std::string prepare_jsonl(const PrepareSummary &summary);

std::string ablation_table(std::span<const AblationCell> cells);
std::string ablation_jsonl(std::span<const AblationCell> cells);

/// Aligns tab-separated cells into space-padded columns (widths in code points).
std::string align_columns(const std::vector<std::vector<std::string>> &rows);

}  // namespace ipakit::report

#endif  // IPAKIT_REPORT_HPP_
