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

#ifndef IPAKIT_PIPELINE_HPP_
#define IPAKIT_PIPELINE_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ipakit/config.hpp"
#include "ipakit/corpus.hpp"

namespace ipakit {

struct SplitCounts {
  std::size_t train = 0, valid = 0, test = 0;
};

struct PrepareSummary {
  std::string config_digest;
  std::uint64_t seed = 0;
  std::size_t ingested = 0;
  /// Rows dropped because their locale is not selected.
  std::size_t other_locale = 0;
  corpus::FilterStats filter;
  corpus::LabelStats label;
  std::size_t extra_rows = 0;
  /// Rows whose audio could not be probed or resampled.
  std::size_t hard_errors = 0;
  std::map<std::string, SplitCounts> per_locale;
  std::size_t vocab_size = 0;
  std::vector<std::string> warnings;
  std::filesystem::path out_dir;
};

/// ingest -> duration probe -> filter -> G2P label -> seeded split ->
/// optional resample -> manifests + vocabulary. Writes train.tsv, valid.tsv,
/// test.tsv, vocab.txt and prepare.log into `out_dir`.
PrepareSummary run_prepare(const PrepareConfig &config, const std::filesystem::path &out_dir);

/// Axes of an ablation sweep: `base = <prepare config>` plus
/// `axis.<key> = v1 | v2 | ...` lines, expanded as a Cartesian product in
/// declaration order. No axes means no cells.
struct AblationMatrix {
  std::filesystem::path base_config;
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
};

AblationMatrix load_ablation_matrix(const std::filesystem::path &path);

struct AblationCell {
  std::size_t index = 0;
  std::vector<std::pair<std::string, std::string>> settings;
  std::filesystem::path dir;
  /// "ok", "cached" or "failed".
  std::string status;
  std::string error;
  std::optional<PrepareSummary> summary;
};

std::vector<std::vector<std::pair<std::string, std::string>>> expand_cells(const AblationMatrix &matrix);

/// Each cell prepares into `out_dir/cell_NNN`. A cell whose recorded digest
/// matches its current config is reused; a failing cell does not stop the rest.
std::vector<AblationCell> run_ablation(const AblationMatrix &matrix, const std::filesystem::path &out_dir,
                                       const std::filesystem::path &data_dir,
                                       const std::map<std::string, std::string> &overrides = {});

}  // namespace ipakit

#endif  // IPAKIT_PIPELINE_HPP_
