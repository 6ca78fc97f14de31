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

#ifndef IPAKIT_CONFIG_HPP_
#define IPAKIT_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ipakit/corpus.hpp"

namespace ipakit {

/// Ordered `key = value` lines; `#` starts a comment line. Duplicate keys are
/// an error.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text, std::string_view name);

  bool has(std::string_view key) const;
  const std::string &get(std::string_view key) const;
  std::string get_or(std::string_view key, std::string_view fallback) const;
  void set(std::string key, std::string value);
  const std::vector<std::pair<std::string, std::string>> &entries() const noexcept { return entries_; }
  std::size_t line_of(std::string_view key) const;
  const std::string &name() const noexcept { return name_; }

 private:
  std::string name_;
  std::vector<std::pair<std::string, std::string>> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::map<std::string, std::size_t, std::less<>> lines_;
};

/// Everything `prepare` needs, with paths already resolved.
struct PrepareConfig {
  std::filesystem::path inventory;
  std::filesystem::path rules_dir;
  std::vector<std::string> locales;
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path audio_dir;       // empty: paths are used as given
  std::filesystem::path clip_durations;  // empty: probe the audio
  std::string preset = "1k";
  corpus::SplitRequest split;
  std::uint64_t seed = 0;
  corpus::FilterConfig filters;
  std::filesystem::path extra_manifest;  // optional pre-labeled rows, pooled before sampling
  corpus::VocabMode vocab_mode = corpus::VocabMode::kFullInventory;
  bool resample = false;
  std::filesystem::path resample_dir;
  int target_rate = 16000;
};

/// Split sizes of a named preset: 100, 1k, 2k (test 100 each) or full.
corpus::SplitRequest preset_split(std::string_view preset);

/// Relative paths resolve against `base_dir`. `data_dir` supplies defaults
/// for `inventory` and `rules_dir`. Throws ConfigError.
PrepareConfig make_prepare_config(const KeyValueConfig &kv, const std::filesystem::path &base_dir,
                                  const std::filesystem::path &data_dir);
PrepareConfig load_prepare_config(const std::filesystem::path &path,
                                  const std::filesystem::path &data_dir,
                                  const std::map<std::string, std::string> &overrides = {});

/// Stable text form of a config; its SHA-256 is the config digest.
std::string canonical_config(const PrepareConfig &config);
std::string config_digest(const PrepareConfig &config);

std::vector<std::string> split_list(std::string_view text, char sep = ',');

}  // namespace ipakit

#endif  // IPAKIT_CONFIG_HPP_
