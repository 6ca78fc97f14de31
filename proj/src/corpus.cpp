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

#include "ipakit/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>

#include "ipakit/errors.hpp"
#include "ipakit/ipa_segment.hpp"
#include "ipakit/text_io.hpp"

namespace ipakit::corpus {
namespace {

struct TsvHeader {
  std::map<std::string, std::size_t, std::less<>> columns;

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = columns.find(name);
    if (it == columns.end()) return std::nullopt;
    return it->second;
  }
  std::size_t require(std::string_view name, std::string_view source) const {
    if (auto i = find(name)) return *i;
    throw IngestError(std::string(source) + ": missing required column '" + std::string(name) + "'");
  }
};

TsvHeader parse_header(std::string_view line) {
  TsvHeader h;
  const auto cells = split(line, '\t');
  for (std::size_t i = 0; i < cells.size(); ++i) h.columns.emplace(std::string(trim(cells[i])), i);
  return h;
}

std::string_view cell(const std::vector<std::string_view> &cells, std::optional<std::size_t> i) {
  if (!i || *i >= cells.size()) return {};
  return cells[*i];
}

std::uint32_t parse_count(std::string_view text, std::string_view source, std::size_t line) {
  text = trim(text);
  if (text.empty()) return 0;
  std::uint32_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size())
    throw IngestError(std::string(source) + ":" + std::to_string(line) + ": bad count '" +
                      std::string(text) + "'");
  return v;
}

double parse_real(std::string_view text, std::string_view source, std::size_t line) {
  text = trim(text);
  if (text.empty()) return 0.0;
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(text), &used);
    if (used == text.size() && v >= 0.0) return v;
  } catch (const std::exception &) {
  }
  throw IngestError(std::string(source) + ":" + std::to_string(line) + ": bad number '" +
                    std::string(text) + "'");
}

std::string clip_stem(std::string_view path) {
  return std::filesystem::path(std::string(path)).stem().string();
}

}  // namespace

std::vector<UtteranceRecord> ingest_tsv_text(std::string_view text, std::string_view name) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw IngestError(std::string(name) + ": empty file");
  std::string_view head = lines[0];
  if (head.starts_with("\xEF\xBB\xBF")) head.remove_prefix(3);
  const TsvHeader h = parse_header(head);
  const auto path_col = h.require("path", name);
  const auto sentence_col = h.require("sentence", name);
  const auto up_col = h.require("up_votes", name);
  const auto down_col = h.require("down_votes", name);
  const auto locale_col = h.require("locale", name);
  const auto duration_col = h.find("duration");
  const auto reading_col = h.find("reading");

  std::vector<UtteranceRecord> out;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (trim(lines[n]).empty()) continue;
    const auto cells = split(lines[n], '\t');
    UtteranceRecord r;
    r.audio_path = std::string(cell(cells, path_col));
    if (r.audio_path.empty())
      throw IngestError(std::string(name) + ":" + std::to_string(n + 1) + ": empty path");
    r.clip_id = clip_stem(r.audio_path);
    r.sentence = std::string(cell(cells, sentence_col));
    r.reading = std::string(cell(cells, reading_col));
    r.up_votes = parse_count(cell(cells, up_col), name, n + 1);
    r.down_votes = parse_count(cell(cells, down_col), name, n + 1);
    r.locale = std::string(trim(cell(cells, locale_col)));
    r.duration_s = parse_real(cell(cells, duration_col), name, n + 1);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<UtteranceRecord> ingest_tsv(const std::filesystem::path &path) {
  return ingest_tsv_text(read_file(path), path.string());
}

std::map<std::string, double> read_clip_durations(const std::filesystem::path &path) {
  const std::string text = read_file(path);
  const auto lines = split_lines(text);
  if (lines.empty()) throw IngestError(path.string() + ": empty file");
  const TsvHeader h = parse_header(lines[0]);
  const auto clip_col = h.require("clip", path.string());
  const auto ms_col = h.require("duration[ms]", path.string());
  std::map<std::string, double> out;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (trim(lines[n]).empty()) continue;
    const auto cells = split(lines[n], '\t');
    out[clip_stem(cell(cells, clip_col))] = parse_real(cell(cells, ms_col), path.string(), n + 1) / 1000.0;
  }
  return out;
}

std::vector<UtteranceRecord> filter_records(std::span<const UtteranceRecord> records,
                                            const FilterConfig &config, FilterStats *stats) {
  FilterStats s;
  s.input = records.size();
  std::vector<UtteranceRecord> out;
  for (const auto &r : records) {
    if (config.filter_duration && r.duration_s > config.max_duration_s) {
      ++s.removed_duration;
    } else if (config.filter_votes && r.down_votes > config.max_down_votes) {
      ++s.removed_votes;
    } else {
      out.push_back(r);
    }
  }
  s.kept = out.size();
  if (stats != nullptr) *stats = s;
  return out;
}

std::uint64_t splitmix64(std::uint64_t &state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

Xorshift64Star::Xorshift64Star(std::uint64_t seed) {
  std::uint64_t s = seed;
  state_ = splitmix64(s);
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::next() noexcept {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

std::uint64_t Xorshift64Star::below(std::uint64_t bound) noexcept {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

std::string_view split_name(Split s) noexcept {
  switch (s) {
    case Split::kTrain:
      return "train";
    case Split::kValid:
      return "valid";
    case Split::kTest:
      return "test";
  }
  return "?";
}

void sort_rows(std::vector<ManifestRow> &rows) {
  std::sort(rows.begin(), rows.end(), [](const ManifestRow &a, const ManifestRow &b) {
    if (a.locale != b.locale) return a.locale < b.locale;
    return a.clip_id < b.clip_id;
  });
}

std::string serialize_manifest(const Manifest &manifest) {
  std::vector<ManifestRow> rows = manifest.rows;
  sort_rows(rows);
  std::string out = "clip_id\taudio_path\tlocale\tipa\n";
  for (const auto &r : rows) out += r.clip_id + '\t' + r.audio_path + '\t' + r.locale + '\t' + r.ipa + '\n';
  return out;
}

void write_manifest(const std::filesystem::path &path, const Manifest &manifest) {
  write_file(path, serialize_manifest(manifest));
}

std::vector<ManifestRow> read_manifest_text(std::string_view text, std::string_view name) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw IngestError(std::string(name) + ": empty file");
  std::string_view head = lines[0];
  if (head.starts_with("\xEF\xBB\xBF")) head.remove_prefix(3);
  const TsvHeader h = parse_header(head);
  const auto id_col = h.require("clip_id", name);
  const auto ipa_col = h.require("ipa", name);
  const auto locale_col = h.find("locale");
  const auto audio_col = h.find("audio_path");
  std::vector<ManifestRow> out;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (trim(lines[n]).empty()) continue;
    const auto cells = split(lines[n], '\t');
    ManifestRow r;
    r.clip_id = std::string(trim(cell(cells, id_col)));
    if (r.clip_id.empty())
      throw IngestError(std::string(name) + ":" + std::to_string(n + 1) + ": empty clip_id");
    r.ipa = std::string(cell(cells, ipa_col));
    r.locale = std::string(trim(cell(cells, locale_col)));
    r.audio_path = std::string(cell(cells, audio_col));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ManifestRow> read_manifest(const std::filesystem::path &path) {
  return read_manifest_text(read_file(path), path.string());
}

SplitResult sample_split(std::span<const ManifestRow> pool, const SplitRequest &request,
                         std::uint64_t seed) {
  std::map<std::string, std::vector<ManifestRow>> by_locale;
  for (const auto &r : pool) by_locale[r.locale].push_back(r);

  SplitResult result;
  for (auto &[locale, rows] : by_locale) {
    std::sort(rows.begin(), rows.end(),
              [](const ManifestRow &a, const ManifestRow &b) { return a.clip_id < b.clip_id; });
    Xorshift64Star rng(seed ^ fnv1a64(locale));
    shuffle(rows, rng);

    const std::size_t available = rows.size();
    std::size_t want_test = request.n_test, want_valid = request.n_valid, want_train = request.n_train;
    if (request.full) {
      const std::size_t rest = available - std::min(available, want_test);
      want_valid = std::min(request.full_valid_cap,
                            static_cast<std::size_t>(static_cast<double>(rest) * request.full_valid_fraction));
      want_train = rest - std::min(rest, want_valid);
    }

    std::size_t at = 0;
    auto take = [&](std::size_t want, std::vector<ManifestRow> &into, std::string_view what) {
      const std::size_t n = std::min(want, available - at);
      if (n < want)
        result.warnings.push_back(locale + ": requested " + std::to_string(want) + " " +
                                  std::string(what) + " rows, only " + std::to_string(n) + " available");
      into.insert(into.end(), rows.begin() + static_cast<std::ptrdiff_t>(at),
                  rows.begin() + static_cast<std::ptrdiff_t>(at + n));
      at += n;
    };
    take(want_test, result.test, "test");
    take(want_valid, result.valid, "valid");
    take(want_train, result.train, "train");
  }
  sort_rows(result.train);
  sort_rows(result.valid);
  sort_rows(result.test);
  return result;
}

std::vector<ManifestRow> label_manifest(std::span<const UtteranceRecord> records,
                                        const std::map<std::string, g2p::RuleSet> &rulesets,
                                        const PhoneInventory &inventory,
                                        std::vector<std::string> *log, LabelStats *stats) {
  LabelStats s;
  s.input = records.size();
  std::vector<ManifestRow> out;
  for (const auto &r : records) {
    auto it = rulesets.find(r.locale);
    if (it == rulesets.end()) throw ConfigError("no G2P rule set for locale '" + r.locale + "'");
    const std::string &text = r.reading.empty() ? r.sentence : r.reading;
    try {
      std::string ipa = g2p::transliterate(it->second, text, g2p::Mode::kStrict);
      if (ipa.empty()) throw Error(ErrorKind::kTransliteration, "empty transcription");
      segment(inventory, ipa, SegmentMode::kStrict);
      out.push_back({r.clip_id, r.audio_path, r.locale, std::move(ipa)});
    } catch (const Error &e) {
      ++s.dropped;
      if (log != nullptr) log->push_back("drop " + r.locale + "/" + r.clip_id + ": " + e.what());
    }
  }
  s.labeled = out.size();
  if (stats != nullptr) *stats = s;
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> phones) {
  tokens_.reserve(phones.size() + kSpecialCount);
  tokens_.emplace_back(kBlank);
  tokens_.emplace_back(kPad);
  tokens_.emplace_back(kUnknown);
  for (auto &p : phones) tokens_.push_back(std::move(p));
}

std::string Vocabulary::serialize() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) out += tokens_[i] + '\t' + std::to_string(i) + '\n';
  return out;
}

Vocabulary build_vocab(std::span<const ManifestRow> rows, const PhoneInventory &inventory,
                       VocabMode mode) {
  if (mode == VocabMode::kFullInventory) return Vocabulary(inventory.phones());
  std::set<std::string> seen;
  for (const auto &r : rows)
    for (auto &p : segment(inventory, r.ipa, SegmentMode::kStrict).phones) seen.insert(std::move(p));
  return Vocabulary(std::vector<std::string>(seen.begin(), seen.end()));
}

}  // namespace ipakit::corpus
