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

#include "doctest.h"

#include <string>

#include "ipakit/errors.hpp"
#include "ipakit/phone_inventory.hpp"
#include "test_support.hpp"

using namespace ipakit;

namespace {

const std::string kHeader =
    "ipa,syl,son,cons,cont,delrel,lat,nas,strid,voi,sg,cg,ant,cor,distr,lab,hi,lo,back,round,velaric,"
    "tense,long,hitone,hireg\n";

std::string row(const std::string &phone, char fill = '-') {
  std::string r = phone;
  for (int i = 0; i < 24; ++i) r += std::string(",") + fill;
  return r + "\n";
}

}  // namespace

TEST_CASE("shipped table loads") {
  const auto &inv = ipakit_test::inventory();
  CHECK(inv.size() == 6367);
  CHECK(inv.feature_names().size() == kFeatureCount);
  CHECK(inv.feature_names().front() == "syl");
  CHECK(inv.feature_names().back() == "hireg");
  CHECK(inv.source_digest().size() == 64);
  for (const char *p : {"k", "kʰ", "t͡ʃ", "æ", "ɡ", "ʈ͡ʂ", "ɖ͡ʐ", "t̪", "aː", "ɴ"}) CHECK_MESSAGE(inv.contains(p), p);
  CHECK_FALSE(inv.contains("g"));  // ASCII g; the table uses U+0261
  CHECK_FALSE(inv.contains("ː"));
  CHECK(inv.max_phone_length() >= 3);
}

TEST_CASE("hamming of close pairs") {
  const auto &inv = ipakit_test::inventory();
  CHECK(hamming(inv.feature_vector("k"), inv.feature_vector("kʰ")) == 1);
  CHECK(hamming(inv.feature_vector("p"), inv.feature_vector("b")) == 1);
  CHECK(hamming(inv.feature_vector("k"), inv.feature_vector("k")) == 0);
  const auto &a = inv.feature_vector("a");
  const auto &k = inv.feature_vector("k");
  CHECK(hamming(a, k) == hamming(k, a));
  CHECK(hamming(a, k) > 1);
}

TEST_CASE("unknown phone") {
  const auto &inv = ipakit_test::inventory();
  CHECK(inv.find("xyz") == nullptr);
  try {
    inv.feature_vector("xyz");
    FAIL("expected OutOfVocabulary");
  } catch (const OutOfVocabulary &e) {
    CHECK(e.phone() == "xyz");
    CHECK(e.kind() == ErrorKind::kOutOfVocabulary);
  }
}

TEST_CASE("feature vector values are ternary") {
  FeatureVector::Values v{};
  v.fill(1);
  CHECK_NOTHROW(FeatureVector{v});
  v[3] = 2;
  CHECK_THROWS_AS(FeatureVector{v}, std::invalid_argument);
}

TEST_CASE("parse small tables") {
  SUBCASE("ok") {
    const auto inv = load_feature_table(kHeader + row("a", '+') + row("b") + "\n");
    CHECK(inv.size() == 2);
    CHECK(inv.phones()[0] == "a");
    CHECK(inv.feature_vector("a")[0] == 1);
    CHECK(inv.feature_vector("b")[23] == -1);
    CHECK(hamming(inv.feature_vector("a"), inv.feature_vector("b")) == 24);
  }
  SUBCASE("bom and crlf") {
    std::string text = "\xEF\xBB\xBF" + kHeader + row("a") + row("b", '0');
    for (std::size_t p = 0; (p = text.find('\n', p)) != std::string::npos; p += 2) text.insert(p, "\r");
    const auto inv = load_feature_table(text);
    CHECK(inv.size() == 2);
    CHECK(inv.feature_vector("b")[5] == 0);
  }
  SUBCASE("keys are nfc") {
    // e + combining acute
    const auto inv = load_feature_table(kHeader + row("e\xCC\x81"));
    CHECK(inv.contains("\xC3\xA9"));
  }
  SUBCASE("wrong column count") {
    try {
      load_feature_table(kHeader + row("a") + "b,+,-\n");
      FAIL("expected LoadError");
    } catch (const LoadError &e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("illegal symbol") {
    std::string bad = row("a");
    bad[2] = '1';
    CHECK_THROWS_AS(load_feature_table(kHeader + bad), LoadError);
  }
  SUBCASE("duplicate phone") {
    try {
      load_feature_table(kHeader + row("a") + row("a", '+'));
      FAIL("expected LoadError");
    } catch (const LoadError &e) {
      CHECK(std::string(e.what()).find("duplicate phone 'a'") != std::string::npos);
    }
  }
  SUBCASE("bad header") { CHECK_THROWS_AS(load_feature_table("ipa,syl\n" + row("a")), LoadError); }
  SUBCASE("empty key") { CHECK_THROWS_AS(load_feature_table(kHeader + row("")), LoadError); }
}

TEST_CASE("serialize round trip") {
  const auto inv = load_feature_table(kHeader + row("a", '+') + row("b") + row("c", '0'));
  const auto again = load_feature_table(inv.serialize());
  REQUIRE(again.size() == inv.size());
  for (const auto &p : inv.phones()) CHECK(again.feature_vector(p) == inv.feature_vector(p));
  CHECK(again.phones() == inv.phones());
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_feature_table_file("/nonexistent/table.csv"), Error);
}
