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

#ifndef IPAKIT_CORPUS_HPP_
#define IPAKIT_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ipakit/g2p.hpp"
#include "ipakit/phone_inventory.hpp"

namespace ipakit::corpus {

/// One row of CommonVoice-style metadata.
struct UtteranceRecord {
  std::string clip_id;     // `path` column without extension
  std::string audio_path;  // `path` column as given
  std::string sentence;
  /// Optional pronunciation-ready text (e.g. a kana reading); used for G2P
  /// instead of `sentence` when non-empty.
  std::string reading;
  std::uint32_t up_votes = 0;
  std::uint32_t down_votes = 0;
  std::string locale;
  /// Seconds; 0 until probed.
  double duration_s = 0.0;
};

/// Requires path, sentence, up_votes, down_votes and locale columns. Empty
/// vote cells read as 0. A `duration` column (seconds) or `reading` column is
/// picked up when present. Throws IngestError.
std::vector<UtteranceRecord> ingest_tsv_text(std::string_view text, std::string_view name);
std::vector<UtteranceRecord> ingest_tsv(const std::filesystem::path &path);

/// CommonVoice `clip_durations.tsv` (clip, duration[ms]) -> seconds, keyed by clip_id.
std::map<std::string, double> read_clip_durations(const std::filesystem::path &path);

struct FilterConfig {
  bool filter_duration = true;
  double max_duration_s = 6.0;
  /// The quality filter: drop clips with more than `max_down_votes` down votes.
  bool filter_votes = true;
  std::uint32_t max_down_votes = 1;
};

struct FilterStats {
  std::size_t input = 0;
  std::size_t removed_duration = 0;
  std::size_t removed_votes = 0;
  std::size_t kept = 0;
};

/// Keeps records with duration_s <= max and down_votes <= max. A record
/// failing both filters is counted under duration.
std::vector<UtteranceRecord> filter_records(std::span<const UtteranceRecord> records,
                                            const FilterConfig &config,
                                            FilterStats *stats = nullptr);

/// xorshift64* (Vigna 2016) seeded through splitmix64. Portable and fully
/// specified, so shuffles are reproducible everywhere.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed);
  std::uint64_t next() noexcept;
  /// Uniform in [0, bound), by rejection. bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t &state) noexcept;
std::uint64_t fnv1a64(std::string_view s) noexcept;

/// Fisher-Yates, drawing j from [0, i] for i = n-1 .. 1.
template <typename T>
void shuffle(std::vector<T> &items, Xorshift64Star &rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

enum class Split { kTrain, kValid, kTest };
std::string_view split_name(Split s) noexcept;

struct ManifestRow {
  std::string clip_id;
  std::string audio_path;
  std::string locale;
  std::string ipa;
  bool operator==(const ManifestRow &) const = default;
};

struct Manifest {
  Split split = Split::kTrain;
  std::vector<ManifestRow> rows;
  std::uint64_t seed = 0;
  std::string config_digest;
};

/// Sorts rows by (locale, clip_id).
void sort_rows(std::vector<ManifestRow> &rows);
/// Header `clip_id audio_path locale ipa` then sorted rows, tab-separated.
std::string serialize_manifest(const Manifest &manifest);
void write_manifest(const std::filesystem::path &path, const Manifest &manifest);
/// Reads any TSV with a header holding at least clip_id and ipa; locale and
/// audio_path are optional. Throws IngestError.
std::vector<ManifestRow> read_manifest_text(std::string_view text, std::string_view name);
std::vector<ManifestRow> read_manifest(const std::filesystem::path &path);

struct SplitRequest {
  std::size_t n_train = 0;
  std::size_t n_valid = 0;
  std::size_t n_test = 0;
  /// Everything left after test and validation goes to train. Validation is
  /// then `full_valid_fraction` of the remainder, capped at `full_valid_cap`.
  bool full = false;
  double full_valid_fraction = 0.1;
  std::size_t full_valid_cap = 400;
};

struct SplitResult {
  std::vector<ManifestRow> train, valid, test;
  std::vector<std::string> warnings;
};

/// Per locale: order the pool by clip_id, shuffle with a generator seeded from
/// (seed, locale), then take test, validation and train in that order.
/// Short pools give what they have and add a warning.
SplitResult sample_split(std::span<const ManifestRow> pool, const SplitRequest &request,
                         std::uint64_t seed);

struct LabelStats {
  std::size_t input = 0;
  std::size_t labeled = 0;
  std::size_t dropped = 0;
};

/// ipa = normalize_ipa(transliterate(strict)). Rows whose transliteration or
/// strict segmentation fails are dropped and noted in `log`. Throws
/// ConfigError when a locale has no rule set.
std::vector<ManifestRow> label_manifest(std::span<const UtteranceRecord> records,
                                        const std::map<std::string, g2p::RuleSet> &rulesets,
                                        const PhoneInventory &inventory,
                                        std::vector<std::string> *log = nullptr,
                                        LabelStats *stats = nullptr);

enum class VocabMode { kFullInventory, kObserved };

/// CTC vocabulary: <blank>=0, <pad>=1, <unk>=2, then phones.
class Vocabulary {
 public:
  static constexpr std::string_view kBlank = "<blank>";
  static constexpr std::string_view kPad = "<pad>";
  static constexpr std::string_view kUnknown = "<unk>";
  static constexpr std::size_t kSpecialCount = 3;

  explicit Vocabulary(std::vector<std::string> phones);

  const std::vector<std::string> &tokens() const noexcept { return tokens_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  /// Lines of `token<TAB>index`.
  std::string serialize() const;

 private:
  std::vector<std::string> tokens_;
};

/// Full mode: every inventory phone in table order. Observed mode: phones
/// occurring in `rows`, sorted bytewise.
Vocabulary build_vocab(std::span<const ManifestRow> rows, const PhoneInventory &inventory,
                       VocabMode mode);

}  // namespace ipakit::corpus

#endif  // IPAKIT_CORPUS_HPP_
