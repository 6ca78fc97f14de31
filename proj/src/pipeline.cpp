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

#include "ipakit/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <mutex>
#include <set>
#include <thread>

#include "json.hpp"

#include "ipakit/errors.hpp"
#include "ipakit/g2p.hpp"
#include "ipakit/ipa_segment.hpp"
#include "ipakit/phone_inventory.hpp"
#include "ipakit/text_io.hpp"
#include "ipakit/wav.hpp"

namespace ipakit {
namespace {

using nlohmann::json;

template <typename Fn>
void parallel_for(std::size_t n, Fn fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto &t : pool) t.join();
}

/// CommonVoice ships mp3; transcoding is a documented pre-step that leaves a
/// .wav beside each clip.
std::filesystem::path audio_file(const std::string &audio_path) {
  std::filesystem::path p(audio_path);
  if (p.extension() != ".wav") {
    auto wav = p;
    wav.replace_extension(".wav");
    if (std::filesystem::exists(wav) || !std::filesystem::exists(p)) return wav;
  }
  return p;
}

json summary_to_json(const PrepareSummary &s) {
  json per_locale = json::object();
  for (const auto &[locale, c] : s.per_locale)
    per_locale[locale] = {{"train", c.train}, {"valid", c.valid}, {"test", c.test}};
  return {
      {"config_digest", s.config_digest},
      {"seed", s.seed},
      {"ingested", s.ingested},
      {"other_locale", s.other_locale},
      {"filter",
       {{"input", s.filter.input},
        {"removed_duration", s.filter.removed_duration},
        {"removed_votes", s.filter.removed_votes},
        {"kept", s.filter.kept}}},
      {"label", {{"input", s.label.input}, {"labeled", s.label.labeled}, {"dropped", s.label.dropped}}},
      {"extra_rows", s.extra_rows},
      {"hard_errors", s.hard_errors},
      {"per_locale", per_locale},
      {"vocab_size", s.vocab_size},
      {"warnings", s.warnings},
      {"out_dir", s.out_dir.generic_string()},
  };
}

PrepareSummary summary_from_json(const json &j) {
  PrepareSummary s;
  s.config_digest = j.at("config_digest").get<std::string>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.ingested = j.at("ingested").get<std::size_t>();
  s.other_locale = j.at("other_locale").get<std::size_t>();
  const auto &f = j.at("filter");
  s.filter = {f.at("input"), f.at("removed_duration"), f.at("removed_votes"), f.at("kept")};
  const auto &l = j.at("label");
  s.label = {l.at("input"), l.at("labeled"), l.at("dropped")};
  s.extra_rows = j.at("extra_rows").get<std::size_t>();
  s.hard_errors = j.at("hard_errors").get<std::size_t>();
  for (const auto &[locale, c] : j.at("per_locale").items())
    s.per_locale[locale] = {c.at("train"), c.at("valid"), c.at("test")};
  s.vocab_size = j.at("vocab_size").get<std::size_t>();
  s.warnings = j.at("warnings").get<std::vector<std::string>>();
  s.out_dir = j.at("out_dir").get<std::string>();
  return s;
}

}  // namespace

PrepareSummary run_prepare(const PrepareConfig &config, const std::filesystem::path &out_dir) {
  PrepareSummary summary;
  summary.config_digest = config_digest(config);
  summary.seed = config.seed;
  summary.out_dir = out_dir;
  std::vector<std::string> log;
  log.push_back("config_digest " + summary.config_digest);
  log.push_back("seed " + std::to_string(config.seed));

  const PhoneInventory inventory = load_feature_table_file(config.inventory);
  log.push_back("inventory " + config.inventory.generic_string() + " phones=" +
                std::to_string(inventory.size()) + " sha256=" + inventory.source_digest());

  std::map<std::string, g2p::RuleSet> rulesets;
  for (const auto &locale : config.locales) {
    const auto path = config.rules_dir / (locale + ".g2p");
    if (!std::filesystem::exists(path))
      throw ConfigError("no G2P rule pack for locale '" + locale + "' (looked for " + path.string() + ")");
    rulesets.emplace(locale, g2p::load_ruleset_file(path, locale));
  }

  std::vector<corpus::UtteranceRecord> records;
  for (const auto &input : config.inputs) {
    if (!std::filesystem::exists(input)) throw ConfigError("input not found: " + input.string());
    auto part = corpus::ingest_tsv(input);
    records.insert(records.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }
  summary.ingested = records.size();

  const std::set<std::string> wanted(config.locales.begin(), config.locales.end());
  std::erase_if(records, [&](const corpus::UtteranceRecord &r) {
    if (wanted.contains(r.locale)) return false;
    ++summary.other_locale;
    return true;
  });
  log.push_back("ingested " + std::to_string(summary.ingested) + ", other locales " +
                std::to_string(summary.other_locale));

  if (!config.audio_dir.empty())
    for (auto &r : records) r.audio_path = (config.audio_dir / r.audio_path).generic_string();

  // Durations: recorded in the TSV, else clip_durations.tsv, else the wave header.
  std::map<std::string, double> known;
  if (!config.clip_durations.empty()) known = corpus::read_clip_durations(config.clip_durations);
  std::vector<std::string> probe_errors(records.size());
  parallel_for(records.size(), [&](std::size_t i) {
    auto &r = records[i];
    if (r.duration_s > 0.0) return;
    if (auto it = known.find(r.clip_id); it != known.end()) {
      r.duration_s = it->second;
      return;
    }
    try {
      r.duration_s = audio::probe_duration(audio_file(r.audio_path));
      if (r.duration_s <= 0.0) probe_errors[i] = "empty audio";
    } catch (const Error &e) {
      probe_errors[i] = e.what();
    }
  });
  {
    std::vector<corpus::UtteranceRecord> probed;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (probe_errors[i].empty()) {
        probed.push_back(std::move(records[i]));
      } else {
        ++summary.hard_errors;
        log.push_back("error " + records[i].locale + "/" + records[i].clip_id + ": " + probe_errors[i]);
      }
    }
    records = std::move(probed);
  }

  const auto kept = corpus::filter_records(records, config.filters, &summary.filter);
  log.push_back("filter: input " + std::to_string(summary.filter.input) + ", removed duration>" +
                std::to_string(config.filters.max_duration_s) + "s " +
                std::to_string(summary.filter.removed_duration) + ", removed down_votes>" +
                std::to_string(config.filters.max_down_votes) + " " +
                std::to_string(summary.filter.removed_votes) + ", kept " +
                std::to_string(summary.filter.kept));

  auto labeled = corpus::label_manifest(kept, rulesets, inventory, &log, &summary.label);
  log.push_back("label: input " + std::to_string(summary.label.input) + ", labeled " +
                std::to_string(summary.label.labeled) + ", dropped " + std::to_string(summary.label.dropped));

  if (!config.extra_manifest.empty()) {
    std::set<std::pair<std::string, std::string>> ids;
    for (const auto &r : labeled) ids.emplace(r.locale, r.clip_id);
    for (auto row : corpus::read_manifest(config.extra_manifest)) {
      row.ipa = normalize_ipa(row.ipa);
      try {
        if (row.locale.empty()) throw IngestError("missing locale");
        if (!ids.emplace(row.locale, row.clip_id).second) throw IngestError("duplicate clip id");
        segment(inventory, row.ipa, SegmentMode::kStrict);
      } catch (const Error &e) {
        log.push_back("drop extra " + row.clip_id + ": " + e.what());
        continue;
      }
      labeled.push_back(std::move(row));
      ++summary.extra_rows;
    }
    log.push_back("extra rows merged into the pool: " + std::to_string(summary.extra_rows));
  }

  auto split = corpus::sample_split(labeled, config.split, config.seed);
  {
    std::set<std::string> seen;
    for (const auto &r : labeled) seen.insert(r.locale);
    for (const auto &locale : config.locales)
      if (!seen.contains(locale)) split.warnings.push_back(locale + ": no usable rows");
  }
  for (const auto &w : split.warnings) log.push_back("warning " + w);
  summary.warnings = split.warnings;

  if (config.resample) {
    for (auto *rows : {&split.train, &split.valid, &split.test}) {
      std::vector<std::string> errors(rows->size());
      parallel_for(rows->size(), [&](std::size_t i) {
        auto &row = (*rows)[i];
        const auto out = config.resample_dir / (row.locale + "_" + row.clip_id + ".wav");
        try {
          audio::resample_wav(audio_file(row.audio_path), out, config.target_rate);
          row.audio_path = out.generic_string();
        } catch (const Error &e) {
          errors[i] = e.what();
        }
      });
      std::vector<corpus::ManifestRow> ok;
      for (std::size_t i = 0; i < rows->size(); ++i) {
        if (errors[i].empty()) {
          ok.push_back(std::move((*rows)[i]));
        } else {
          ++summary.hard_errors;
          log.push_back("error resampling " + (*rows)[i].clip_id + ": " + errors[i]);
        }
      }
      *rows = std::move(ok);
    }
  }

  for (const auto &r : split.train) ++summary.per_locale[r.locale].train;
  for (const auto &r : split.valid) ++summary.per_locale[r.locale].valid;
  for (const auto &r : split.test) ++summary.per_locale[r.locale].test;

  std::vector<corpus::ManifestRow> all;
  for (const auto *rows : {&split.train, &split.valid, &split.test})
    all.insert(all.end(), rows->begin(), rows->end());
  const auto vocab = corpus::build_vocab(all, inventory, config.vocab_mode);
  summary.vocab_size = vocab.size();

  std::filesystem::create_directories(out_dir);
  const std::pair<corpus::Split, std::vector<corpus::ManifestRow> *> outputs[] = {
      {corpus::Split::kTrain, &split.train},
      {corpus::Split::kValid, &split.valid},
      {corpus::Split::kTest, &split.test}};
  for (const auto &[which, rows] : outputs) {
    corpus::Manifest m{which, std::move(*rows), config.seed, summary.config_digest};
    corpus::write_manifest(out_dir / (std::string(corpus::split_name(which)) + ".tsv"), m);
  }
  write_file(out_dir / "vocab.txt", vocab.serialize());
  for (const auto &[locale, c] : summary.per_locale)
    log.push_back("split " + locale + " train=" + std::to_string(c.train) + " valid=" +
                  std::to_string(c.valid) + " test=" + std::to_string(c.test));
  log.push_back("vocab " + std::to_string(vocab.size()) + " tokens");
  std::string log_text;
  for (const auto &line : log) log_text += line + '\n';
  write_file(out_dir / "prepare.log", log_text);
  return summary;
}

AblationMatrix load_ablation_matrix(const std::filesystem::path &path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError &e) {
    throw ConfigError(e.what());
  }
  const auto kv = KeyValueConfig::parse(text, path.string());
  AblationMatrix m;
  for (const auto &[key, value] : kv.entries()) {
    if (key == "base") {
      std::filesystem::path base(value);
      m.base_config = base.is_absolute() ? base : (path.parent_path() / base).lexically_normal();
    } else if (key.starts_with("axis.") && key.size() > 5) {
      std::vector<std::string> values;
      for (auto v : split(value, '|')) values.emplace_back(trim(v));
      m.axes.emplace_back(key.substr(5), std::move(values));
    } else {
      throw ConfigError(path.string() + ":" + std::to_string(kv.line_of(key)) + ": unknown key '" + key + "'");
    }
  }
  if (m.base_config.empty()) throw ConfigError(path.string() + ": missing 'base'");
  return m;
}

std::vector<std::vector<std::pair<std::string, std::string>>> expand_cells(const AblationMatrix &matrix) {
  std::vector<std::vector<std::pair<std::string, std::string>>> cells;
  if (matrix.axes.empty()) return cells;
  cells.emplace_back();
  for (const auto &[key, values] : matrix.axes) {
    std::vector<std::vector<std::pair<std::string, std::string>>> next;
    for (const auto &cell : cells)
      for (const auto &v : values) {
        auto c = cell;
        c.emplace_back(key, v);
        next.push_back(std::move(c));
      }
    cells = std::move(next);
  }
  return cells;
}

std::vector<AblationCell> run_ablation(const AblationMatrix &matrix, const std::filesystem::path &out_dir,
                                       const std::filesystem::path &data_dir,
                                       const std::map<std::string, std::string> &overrides) {
  std::vector<AblationCell> results;
  const auto cells = expand_cells(matrix);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    AblationCell cell;
    cell.index = i;
    cell.settings = cells[i];
    char name[32];
    std::snprintf(name, sizeof name, "cell_%03zu", i);
    cell.dir = out_dir / name;
    try {
      auto merged = overrides;
      for (const auto &[k, v] : cell.settings) merged[k] = v;
      const auto config = load_prepare_config(matrix.base_config, data_dir, merged);
      const auto digest = config_digest(config);
      const auto record = cell.dir / "cell.json";
      if (std::filesystem::exists(record)) {
        try {
          const auto j = json::parse(read_file(record));
          if (j.at("status") == "ok" && j.at("summary").at("config_digest") == digest) {
            cell.summary = summary_from_json(j.at("summary"));
            cell.status = "cached";
            results.push_back(std::move(cell));
            continue;
          }
        } catch (const std::exception &) {
          // Unreadable record: recompute.
        }
      }
      cell.summary = run_prepare(config, cell.dir);
      cell.status = "ok";
      json settings = json::object();
      for (const auto &[k, v] : cell.settings) settings[k] = v;
      write_file(record, json{{"status", "ok"}, {"settings", settings}, {"summary", summary_to_json(*cell.summary)}}
                             .dump(2) + "\n");
    } catch (const std::exception &e) {
      cell.status = "failed";
      cell.error = e.what();
    }
    results.push_back(std::move(cell));
  }
  return results;
}

}  // namespace ipakit
