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

#include "ipakit/phone_inventory.hpp"

#include <stdexcept>

#include "ipakit/digest.hpp"
#include "ipakit/errors.hpp"
#include "ipakit/text_io.hpp"
#include "ipakit/unicode.hpp"

namespace ipakit {

FeatureVector::FeatureVector(const Values &values) : values_(values) {
  for (auto v : values_)
    if (v < -1 || v > 1) throw std::invalid_argument("feature value outside {-1, 0, +1}");
}

int hamming(const FeatureVector &a, const FeatureVector &b) noexcept {
  int d = 0;
  for (std::size_t i = 0; i < kFeatureCount; ++i) d += a[i] != b[i];
  return d;
}

const FeatureVector *PhoneInventory::find(std::string_view phone) const noexcept {
  auto it = index_.find(phone);
  return it == index_.end() ? nullptr : &vectors_[it->second];
}

const FeatureVector &PhoneInventory::feature_vector(std::string_view phone) const {
  if (const auto *v = find(phone)) return *v;
  throw OutOfVocabulary(std::string(phone));
}

std::string PhoneInventory::serialize() const {
  std::string out = "ipa";
  for (const auto &name : feature_names_) out += "," + name;
  out += '\n';
  for (std::size_t i = 0; i < phones_.size(); ++i) {
    out += phones_[i];
    for (auto v : vectors_[i].values()) {
      out += ',';
      out += v > 0 ? '+' : v < 0 ? '-' : '0';
    }
    out += '\n';
  }
  return out;
}

namespace {

std::int8_t parse_feature_cell(std::string_view cell, std::size_t line) {
  if (cell == "+") return 1;
  if (cell == "-") return -1;
  if (cell == "0") return 0;
  throw LoadError("line " + std::to_string(line) + ": illegal feature symbol '" +
                  std::string(cell) + "'");
}

}  // namespace

PhoneInventory load_feature_table(std::string_view source) {
  PhoneInventory inv;
  inv.digest_ = sha256_hex(source);

  const auto lines = split_lines(source);
  if (lines.empty()) throw LoadError("line 1: missing header row");

  std::string_view header = lines[0];
  if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
  const auto names = split(header, ',');
  if (names.size() != kFeatureCount + 1)
    throw LoadError("line 1: header has " + std::to_string(names.size() - 1) +
                    " feature columns, expected " + std::to_string(kFeatureCount));
  for (std::size_t i = 1; i < names.size(); ++i) {
    if (names[i].empty()) throw LoadError("line 1: empty feature name");
    inv.feature_names_.emplace_back(names[i]);
  }

  for (std::size_t n = 1; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    if (lines[n].empty()) continue;
    const auto cells = split(lines[n], ',');
    if (cells.size() != kFeatureCount + 1)
      throw LoadError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(kFeatureCount + 1) + " columns, found " +
                      std::to_string(cells.size()));
    std::string phone = unicode::nfc(cells[0]);
    if (phone.empty()) throw LoadError("line " + std::to_string(line_no) + ": empty phone");

    FeatureVector::Values values{};
    for (std::size_t i = 0; i < kFeatureCount; ++i)
      values[i] = parse_feature_cell(cells[i + 1], line_no);

    const std::size_t length = unicode::decode(phone).size();
    auto [it, inserted] = inv.index_.emplace(phone, inv.phones_.size());
    if (!inserted)
      throw LoadError("line " + std::to_string(line_no) + ": duplicate phone '" + phone + "'");
    inv.phones_.push_back(std::move(phone));
    inv.vectors_.emplace_back(values);
    inv.max_phone_length_ = std::max(inv.max_phone_length_, length);
  }
  return inv;
}

PhoneInventory load_feature_table_file(const std::filesystem::path &path) {
  return load_feature_table(read_file(path));
}

}  // namespace ipakit
