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

#ifndef IPAKIT_PHONE_INVENTORY_HPP_
#define IPAKIT_PHONE_INVENTORY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ipakit {

inline constexpr std::size_t kFeatureCount = 24;

/// Ternary articulatory features of one phone: +1, -1, or 0 (unspecified),
/// in the column order of the feature table header.
class FeatureVector {
 public:
  using Values = std::array<std::int8_t, kFeatureCount>;

  FeatureVector() { values_.fill(0); }
  /// Throws std::invalid_argument if any value is outside {-1, 0, +1}.
  explicit FeatureVector(const Values &values);

  std::int8_t operator[](std::size_t i) const { return values_[i]; }
  const Values &values() const noexcept { return values_; }
  static constexpr std::size_t size() noexcept { return kFeatureCount; }

  bool operator==(const FeatureVector &) const = default;

 private:
  Values values_;
};

/// Number of feature positions where `a` and `b` differ, in [0, 24].
int hamming(const FeatureVector &a, const FeatureVector &b) noexcept;

/// Immutable phone -> feature vector table. Keys are NFC and unique.
class PhoneInventory {
 public:
  std::size_t size() const noexcept { return phones_.size(); }
  bool empty() const noexcept { return phones_.empty(); }
  bool contains(std::string_view phone) const noexcept { return find(phone) != nullptr; }

  /// nullptr when absent.
  const FeatureVector *find(std::string_view phone) const noexcept;
  /// Throws OutOfVocabulary when absent.
  const FeatureVector &feature_vector(std::string_view phone) const;

  /// Phones in table order.
  const std::vector<std::string> &phones() const noexcept { return phones_; }
  const std::vector<std::string> &feature_names() const noexcept { return feature_names_; }
  /// SHA-256 of the raw table text this inventory was loaded from.
  const std::string &source_digest() const noexcept { return digest_; }
  /// Longest key length in code points.
  std::size_t max_phone_length() const noexcept { return max_phone_length_; }

  /// Canonical CSV (LF line endings, NFC keys) that reloads to an equal inventory.
  std::string serialize() const;

 private:
  friend PhoneInventory load_feature_table(std::string_view);

  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> feature_names_;
  std::vector<std::string> phones_;
  std::vector<FeatureVector> vectors_;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index_;
  std::string digest_;
  std::size_t max_phone_length_ = 0;
};

/// Parses a comma-separated feature table: header `ipa,<24 names>`, then one
/// phone per row with cells in {+,-,0}. Throws LoadError naming the line for
/// a malformed row and naming the phone for a duplicate key.
PhoneInventory load_feature_table(std::string_view source);
PhoneInventory load_feature_table_file(const std::filesystem::path &path);

}  // namespace ipakit

#endif  // IPAKIT_PHONE_INVENTORY_HPP_
