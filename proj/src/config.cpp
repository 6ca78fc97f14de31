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

#include "ipakit/config.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "ipakit/digest.hpp"
#include "ipakit/errors.hpp"
#include "ipakit/text_io.hpp"

namespace ipakit {
namespace {

const std::set<std::string, std::less<>> kPrepareKeys = {
    "inventory",      "rules_dir",     "locales",        "input",         "audio_dir",
    "clip_durations", "preset",        "n_train",        "n_valid",       "n_test",
    "seed",           "filter.duration", "max_duration_s", "filter.votes", "max_down_votes",
    "extra_manifest", "vocab",         "resample",       "resample_dir",  "target_rate",
    "full.valid_fraction", "full.valid_cap",
};

bool parse_bool(const KeyValueConfig &kv, std::string_view key, bool fallback) {
  if (!kv.has(key)) return fallback;
  const auto &v = kv.get(key);
  if (v == "on" || v == "true" || v == "yes" || v == "1") return true;
  if (v == "off" || v == "false" || v == "no" || v == "0") return false;
  throw ConfigError(kv.name() + ":" + std::to_string(kv.line_of(key)) + ": " + std::string(key) +
                    " must be on/off, got '" + v + "'");
}

template <typename T>
T parse_number(const KeyValueConfig &kv, std::string_view key, T fallback) {
  if (!kv.has(key)) return fallback;
  const auto &v = kv.get(key);
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError(kv.name() + ":" + std::to_string(kv.line_of(key)) + ": " + std::string(key) +
                      " is not a valid number: '" + v + "'");
  return out;
}

double parse_double(const KeyValueConfig &kv, std::string_view key, double fallback) {
  if (!kv.has(key)) return fallback;
  const auto &v = kv.get(key);
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception &) {
  }
  throw ConfigError(kv.name() + ":" + std::to_string(kv.line_of(key)) + ": " + std::string(key) +
                    " is not a valid number: '" + v + "'");
}

std::filesystem::path resolve(const std::filesystem::path &base, std::string_view value) {
  if (value.empty()) return {};
  std::filesystem::path p{std::string(value)};
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text, std::string_view name) {
  KeyValueConfig kv;
  kv.name_ = std::string(name);
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(kv.name_ + ":" + std::to_string(line_no) + ": expected key = value");
    std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(kv.name_ + ":" + std::to_string(line_no) + ": empty key");
    if (kv.has(key))
      throw ConfigError(kv.name_ + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    kv.lines_[key] = line_no;
    kv.set(std::move(key), std::string(trim(line.substr(eq + 1))));
  }
  return kv;
}

bool KeyValueConfig::has(std::string_view key) const { return index_.find(key) != index_.end(); }

const std::string &KeyValueConfig::get(std::string_view key) const {
  auto it = index_.find(key);
  if (it == index_.end()) throw ConfigError(name_ + ": missing key '" + std::string(key) + "'");
  return entries_[it->second].second;
}

std::string KeyValueConfig::get_or(std::string_view key, std::string_view fallback) const {
  return has(key) ? get(key) : std::string(fallback);
}

void KeyValueConfig::set(std::string key, std::string value) {
  if (auto it = index_.find(key); it != index_.end()) {
    entries_[it->second].second = std::move(value);
    return;
  }
  index_.emplace(key, entries_.size());
  entries_.emplace_back(std::move(key), std::move(value));
}

std::size_t KeyValueConfig::line_of(std::string_view key) const {
  auto it = lines_.find(key);
  return it == lines_.end() ? 0 : it->second;
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  for (auto part : split(text, sep)) {
    part = trim(part);
    if (!part.empty()) out.emplace_back(part);
  }
  return out;
}

corpus::SplitRequest preset_split(std::string_view preset) {
  corpus::SplitRequest r;
  r.n_test = 100;
  if (preset == "100") {
    r.n_train = 100;
    r.n_valid = 20;
  } else if (preset == "1k") {
    r.n_train = 1000;
    r.n_valid = 200;
  } else if (preset == "2k") {
    r.n_train = 2000;
    r.n_valid = 400;
  } else if (preset == "full") {
    r.full = true;
  } else if (preset != "custom") {
    throw ConfigError("unknown preset '" + std::string(preset) + "' (expected 100, 1k, 2k, full or custom)");
  }
  return r;
}

PrepareConfig make_prepare_config(const KeyValueConfig &kv, const std::filesystem::path &base_dir,
                                  const std::filesystem::path &data_dir) {
  for (const auto &[key, value] : kv.entries())
    if (!kPrepareKeys.contains(key))
      throw ConfigError(kv.name() + ":" + std::to_string(kv.line_of(key)) + ": unknown key '" + key + "'");

  PrepareConfig c;
  c.inventory = kv.has("inventory") ? resolve(base_dir, kv.get("inventory")) : data_dir / "ipa_all.csv";
  c.rules_dir = kv.has("rules_dir") ? resolve(base_dir, kv.get("rules_dir")) : data_dir / "rules";
  c.locales = split_list(kv.get("locales"));
  if (c.locales.empty()) throw ConfigError(kv.name() + ": 'locales' lists no locale");
  for (const auto &in : split_list(kv.get("input"))) c.inputs.push_back(resolve(base_dir, in));
  if (c.inputs.empty()) throw ConfigError(kv.name() + ": 'input' lists no file");
  c.audio_dir = resolve(base_dir, kv.get_or("audio_dir", ""));
  c.clip_durations = resolve(base_dir, kv.get_or("clip_durations", ""));

  c.preset = kv.get_or("preset", "1k");
  c.split = preset_split(c.preset);
  c.split.n_train = parse_number<std::size_t>(kv, "n_train", c.split.n_train);
  c.split.n_valid = parse_number<std::size_t>(kv, "n_valid", c.split.n_valid);
  c.split.n_test = parse_number<std::size_t>(kv, "n_test", c.split.n_test);
  c.split.full_valid_fraction = parse_double(kv, "full.valid_fraction", c.split.full_valid_fraction);
  c.split.full_valid_cap = parse_number<std::size_t>(kv, "full.valid_cap", c.split.full_valid_cap);
  c.seed = parse_number<std::uint64_t>(kv, "seed", 0);

  c.filters.filter_duration = parse_bool(kv, "filter.duration", true);
  c.filters.max_duration_s = parse_double(kv, "max_duration_s", 6.0);
  c.filters.filter_votes = parse_bool(kv, "filter.votes", true);
  c.filters.max_down_votes = parse_number<std::uint32_t>(kv, "max_down_votes", 1);

  c.extra_manifest = resolve(base_dir, kv.get_or("extra_manifest", ""));
  const auto vocab = kv.get_or("vocab", "full");
  if (vocab == "full") {
    c.vocab_mode = corpus::VocabMode::kFullInventory;
  } else if (vocab == "observed") {
    c.vocab_mode = corpus::VocabMode::kObserved;
  } else {
    throw ConfigError(kv.name() + ":" + std::to_string(kv.line_of("vocab")) +
                      ": vocab must be full or observed, got '" + vocab + "'");
  }
  c.resample = parse_bool(kv, "resample", false);
  c.resample_dir = resolve(base_dir, kv.get_or("resample_dir", ""));
  c.target_rate = parse_number<int>(kv, "target_rate", 16000);
  if (c.resample && c.resample_dir.empty())
    throw ConfigError(kv.name() + ": resample = on needs resample_dir");
  if (c.target_rate <= 0) throw ConfigError(kv.name() + ": target_rate must be positive");
  return c;
}

PrepareConfig load_prepare_config(const std::filesystem::path &path,
                                  const std::filesystem::path &data_dir,
                                  const std::map<std::string, std::string> &overrides) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError &e) {
    throw ConfigError(e.what());
  }
  auto kv = KeyValueConfig::parse(text, path.string());
  for (const auto &[k, v] : overrides) kv.set(k, v);
  return make_prepare_config(kv, path.parent_path(), data_dir);
}

std::string canonical_config(const PrepareConfig &c) {
  auto join_paths = [](const std::vector<std::filesystem::path> &ps) {
    std::string out;
    for (const auto &p : ps) out += (out.empty() ? "" : ",") + p.generic_string();
    return out;
  };
  std::string locales;
  for (const auto &l : c.locales) locales += (locales.empty() ? "" : ",") + l;
  std::string out;
  auto put = [&out](std::string_view k, const std::string &v) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  };
  put("inventory", c.inventory.generic_string());
  put("rules_dir", c.rules_dir.generic_string());
  put("locales", locales);
  put("input", join_paths(c.inputs));
  put("audio_dir", c.audio_dir.generic_string());
  put("clip_durations", c.clip_durations.generic_string());
  put("preset", c.preset);
  put("n_train", std::to_string(c.split.n_train));
  put("n_valid", std::to_string(c.split.n_valid));
  put("n_test", std::to_string(c.split.n_test));
  put("full", c.split.full ? "on" : "off");
  put("full.valid_fraction", std::to_string(c.split.full_valid_fraction));
  put("full.valid_cap", std::to_string(c.split.full_valid_cap));
  put("seed", std::to_string(c.seed));
  put("filter.duration", c.filters.filter_duration ? "on" : "off");
  put("max_duration_s", std::to_string(c.filters.max_duration_s));
  put("filter.votes", c.filters.filter_votes ? "on" : "off");
  put("max_down_votes", std::to_string(c.filters.max_down_votes));
  put("extra_manifest", c.extra_manifest.generic_string());
  put("vocab", c.vocab_mode == corpus::VocabMode::kFullInventory ? "full" : "observed");
  put("resample", c.resample ? "on" : "off");
  put("resample_dir", c.resample_dir.generic_string());
  put("target_rate", std::to_string(c.target_rate));
  return out;
}

std::string config_digest(const PrepareConfig &config) { return sha256_hex(canonical_config(config)); }

}  // namespace ipakit
