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

#include "ipakit/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "json.hpp"

#include "ipakit/errors.hpp"
#include "ipakit/text_io.hpp"
#include "ipakit/unicode.hpp"

namespace ipakit::report {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::size_t display_width(std::string_view s) {
  std::size_t n = 0;
  for (char32_t cp : unicode::decode(s))
    if (!unicode::is_combining_mark(cp)) ++n;
  return n;
}

std::string list_ids(const std::vector<std::string> &ids) {
  constexpr std::size_t kShown = 10;
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < kShown; ++i) out += (i ? ", " : "") + ids[i];
  if (ids.size() > kShown) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

std::string lines(const std::vector<ordered_json> &records) {
  std::string out;
  for (const auto &r : records) out += r.dump() + '\n';
  return out;
}

ordered_json summary_record(const PrepareSummary &s) {
  ordered_json per_locale = ordered_json::object();
  for (const auto &[locale, c] : s.per_locale)
    per_locale[locale] = {{"train", c.train}, {"valid", c.valid}, {"test", c.test}};
  return {
      {"record", "prepare"},
      {"config_digest", s.config_digest},
      {"seed", s.seed},
      {"ingested", s.ingested},
      {"other_locale", s.other_locale},
      {"filter_input", s.filter.input},
      {"removed_duration", s.filter.removed_duration},
      {"removed_votes", s.filter.removed_votes},
      {"filter_kept", s.filter.kept},
      {"labeled", s.label.labeled},
      {"label_dropped", s.label.dropped},
      {"extra_rows", s.extra_rows},
      {"hard_errors", s.hard_errors},
      {"vocab_size", s.vocab_size},
      {"splits", per_locale},
      {"warnings", s.warnings},
      {"out_dir", s.out_dir.generic_string()},
  };
}

}  // namespace

EvalReport evaluate(const PhoneInventory &inventory, std::span<const corpus::ManifestRow> ref,
                    std::span<const corpus::ManifestRow> hyp, SegmentMode mode) {
  std::unordered_map<std::string, const corpus::ManifestRow *> by_id;
  std::vector<std::string> duplicates;
  for (const auto &row : hyp)
    if (!by_id.emplace(row.clip_id, &row).second) duplicates.push_back(row.clip_id);
  if (!duplicates.empty()) throw MismatchError("duplicate hypothesis ids: " + list_ids(duplicates));

  std::set<std::string> seen;
  std::vector<std::string> missing;
  for (const auto &row : ref) {
    if (!seen.insert(row.clip_id).second) duplicates.push_back(row.clip_id);
    if (!by_id.contains(row.clip_id)) missing.push_back(row.clip_id);
  }
  if (!duplicates.empty()) throw MismatchError("duplicate reference ids: " + list_ids(duplicates));
  std::vector<std::string> extra;
  for (const auto &row : hyp)
    if (!seen.contains(row.clip_id)) extra.push_back(row.clip_id);
  if (!missing.empty() || !extra.empty()) {
    std::string msg = "clip ids differ:";
    if (!missing.empty()) msg += " missing from hypothesis: " + list_ids(missing) + ";";
    if (!extra.empty()) msg += " not in reference: " + list_ids(extra) + ";";
    msg.pop_back();
    throw MismatchError(msg);
  }
  if (ref.empty()) throw MismatchError("no rows to score");

  std::vector<ScoredUtterance> scored;
  scored.reserve(ref.size());
  const auto features = EditCosts::features(inventory);
  for (const auto &row : ref) {
    if (row.locale.empty()) throw IngestError("reference row '" + row.clip_id + "' has no locale");
    const auto tokens = [&](const std::string &ipa) {
      return segment(inventory, normalize_ipa(ipa), mode).tokens();
    };
    const auto r = tokens(row.ipa);
    const auto h = tokens(by_id.at(row.clip_id)->ipa);
    ScoredUtterance u;
    u.locale = row.locale;
    u.per = per_score(r, h);
    u.pfer = UtteranceScore{edit_distance(r, h, features), r.size()};
    scored.push_back(std::move(u));
  }
  return aggregate(scored);
}

EvalReport evaluate_files(const PhoneInventory &inventory, const std::filesystem::path &ref,
                          const std::filesystem::path &hyp, SegmentMode mode) {
  return evaluate(inventory, corpus::read_manifest(ref), corpus::read_manifest(hyp), mode);
}

double percent3(double rate) noexcept { return std::round(rate * 100.0 * 1000.0) / 1000.0; }

std::string format_percent(double rate) { return fixed3(rate * 100.0); }

std::string align_columns(const std::vector<std::vector<std::string>> &rows) {
  std::vector<std::size_t> widths;
  for (const auto &row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (widths.size() <= i) widths.push_back(0);
      widths[i] = std::max(widths[i], display_width(row[i]));
    }
  std::string out;
  for (const auto &row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i];
      if (i + 1 < row.size()) line.append(widths[i] - display_width(row[i]), ' ');
    }
    out += line + '\n';
  }
  return out;
}

std::string eval_table(const EvalReport &report) {
  std::vector<std::vector<std::string>> rows(5);
  rows[0] = {"Metric"};
  rows[1] = {"PER (%)"};
  rows[2] = {"PFER (%)"};
  rows[3] = {"utterances"};
  rows[4] = {"ref phones"};
  for (const auto &lang : report.per_language) {
    rows[0].push_back(lang.locale);
    rows[1].push_back(format_percent(lang.per_rate));
    rows[2].push_back(format_percent(lang.pfer_rate));
    rows[3].push_back(std::to_string(lang.utterance_count));
    rows[4].push_back(std::to_string(lang.total_ref_phones));
  }
  rows[0].push_back("Overall");
  rows[1].push_back(format_percent(report.overall_per));
  rows[2].push_back(format_percent(report.overall_pfer));
  return align_columns(rows);
}

std::string eval_jsonl(const EvalReport &report, std::string_view kind) {
  std::vector<ordered_json> records;
  for (const auto &lang : report.per_language)
    records.push_back({
        {"record", "language"},
        {"kind", kind},
        {"locale", lang.locale},
        {"per", percent3(lang.per_rate)},
        {"pfer", percent3(lang.pfer_rate)},
        {"per_utterance_mean", percent3(lang.per_utterance_mean)},
        {"pfer_utterance_mean", percent3(lang.pfer_utterance_mean)},
        {"utterances", lang.utterance_count},
        {"ref_phones", lang.total_ref_phones},
        {"per_distance", lang.per_distance},
        {"pfer_distance", lang.pfer_distance},
    });
  records.push_back({
      {"record", "overall"},
      {"kind", kind},
      {"languages", report.per_language.size()},
      {"per", percent3(report.overall_per)},
      {"pfer", percent3(report.overall_pfer)},
  });
  return lines(records);
}

std::vector<PublishedScore> load_published_scores(const std::filesystem::path &path) {
  const std::string text = read_file(path);
  std::vector<PublishedScore> out;
  bool header = true;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty() || line.front() == '#') continue;
    const auto cells = split(line, '\t');
    if (header) {
      if (cells.size() != 5 || cells[0] != "setting" || cells[4] != "value")
        throw IngestError(path.string() + ": expected header setting/metric/system/language/value");
      header = false;
      continue;
    }
    if (cells.size() != 5)
      throw IngestError(path.string() + ":" + std::to_string(line_no) + ": expected 5 columns");
    PublishedScore s{std::string(cells[0]), std::string(cells[1]), std::string(cells[2]),
                     std::string(cells[3]), 0.0};
    try {
      std::size_t used = 0;
      s.value = std::stod(std::string(cells[4]), &used);
      if (used != cells[4].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception &) {
      throw IngestError(path.string() + ":" + std::to_string(line_no) + ": bad value '" +
                        std::string(cells[4]) + "'");
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<OverallCheck> check_published(std::span<const PublishedScore> scores) {
  struct Row {
    std::vector<double> cells;
    std::optional<double> printed;
  };
  std::vector<std::string> order;
  std::map<std::string, Row> rows;
  for (const auto &s : scores) {
    const auto label = s.setting + " " + s.metric + " " + s.system;
    auto [it, fresh] = rows.try_emplace(label);
    if (fresh) order.push_back(label);
    if (s.language == "Overall")
      it->second.printed = s.value;
    else
      it->second.cells.push_back(s.value);
  }
  std::vector<OverallCheck> checks;
  for (const auto &label : order) {
    const auto &row = rows.at(label);
    if (!row.printed || row.cells.empty()) continue;
    checks.push_back(check_overall(label, row.cells, *row.printed));
  }
  return checks;
}

std::string checks_table(std::span<const OverallCheck> checks) {
  std::vector<std::vector<std::string>> rows{{"row", "cells", "printed", "recomputed", "status"}};
  for (const auto &c : checks)
    rows.push_back({c.label, std::to_string(c.cells.size()), fixed3(c.printed), fixed3(c.recomputed),
                    c.matches ? "ok" : "MISMATCH"});
  return align_columns(rows);
}

std::string checks_jsonl(std::span<const OverallCheck> checks) {
  std::vector<ordered_json> records;
  for (const auto &c : checks)
    records.push_back({{"record", "overall_check"},
                       {"row", c.label},
                       {"cells", c.cells},
                       {"printed", c.printed},
                       {"recomputed", c.recomputed},
                       {"matches", c.matches}});
  return lines(records);
}

std::string prepare_table(const PrepareSummary &s) {
  std::vector<std::vector<std::string>> rows{{"locale", "train", "valid", "test"}};
  for (const auto &[locale, c] : s.per_locale)
    rows.push_back({locale, std::to_string(c.train), std::to_string(c.valid), std::to_string(c.test)});
  std::string out = align_columns(rows);
  out += "ingested " + std::to_string(s.ingested) + ", other locales " + std::to_string(s.other_locale) +
         ", removed by duration " + std::to_string(s.filter.removed_duration) + ", removed by votes " +
         std::to_string(s.filter.removed_votes) + ", label failures " + std::to_string(s.label.dropped) +
         ", hard errors " + std::to_string(s.hard_errors) + "\n";
  out += "vocabulary " + std::to_string(s.vocab_size) + " tokens, config " + s.config_digest.substr(0, 12) + "\n";
  for (const auto &w : s.warnings) out += "warning: " + w + "\n";
  return out;
}

std::string prepare_jsonl(const PrepareSummary &summary) { return summary_record(summary).dump() + '\n'; }

std::string ablation_table(std::span<const AblationCell> cells) {
  std::vector<std::vector<std::string>> rows{{"cell", "settings", "status", "train", "valid", "test", "vocab"}};
  for (const auto &c : cells) {
    std::string settings;
    for (const auto &[k, v] : c.settings) settings += (settings.empty() ? "" : " ") + k + "=" + v;
    std::vector<std::string> row{std::to_string(c.index), settings, c.status};
    if (c.summary) {
      SplitCounts total;
      for (const auto &[_, n] : c.summary->per_locale) {
        total.train += n.train;
        total.valid += n.valid;
        total.test += n.test;
      }
      row.insert(row.end(), {std::to_string(total.train), std::to_string(total.valid),
                             std::to_string(total.test), std::to_string(c.summary->vocab_size)});
    } else {
      row.insert(row.end(), {"-", "-", "-", "-"});
    }
    rows.push_back(std::move(row));
  }
  std::string out = align_columns(rows);
  for (const auto &c : cells)
    if (c.status == "failed") out += "cell " + std::to_string(c.index) + " failed: " + c.error + "\n";
  return out;
}

std::string ablation_jsonl(std::span<const AblationCell> cells) {
  std::vector<ordered_json> records;
  for (const auto &c : cells) {
    ordered_json settings = ordered_json::object();
    for (const auto &[k, v] : c.settings) settings[k] = v;
    ordered_json r{{"record", "ablation_cell"},
                   {"cell", c.index},
                   {"dir", c.dir.generic_string()},
                   {"status", c.status},
                   {"settings", settings}};
    if (!c.error.empty()) r["error"] = c.error;
    if (c.summary) r["summary"] = summary_record(*c.summary);
    records.push_back(std::move(r));
  }
  return lines(records);
}

}  // namespace ipakit::report
