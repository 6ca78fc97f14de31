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

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ipakit/corpus.hpp"
#include "ipakit/errors.hpp"
#include "ipakit/g2p.hpp"
#include "test_support.hpp"

using namespace ipakit;
using namespace ipakit::corpus;

namespace {

const std::string kHeader = "client_id\tpath\tsentence\tup_votes\tdown_votes\tage\tgender\taccents\tlocale\tsegment\n";

UtteranceRecord rec(std::string id, std::string locale, double dur, std::uint32_t down, std::string sentence = "a") {
  UtteranceRecord r;
  r.clip_id = id;
  r.audio_path = id + ".mp3";
  r.sentence = std::move(sentence);
  r.locale = std::move(locale);
  r.duration_s = dur;
  r.down_votes = down;
  return r;
}

std::vector<ManifestRow> pool(std::size_t n, const std::string &locale) {
  std::vector<ManifestRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "%s_%04zu", locale.c_str(), i);
    rows.push_back({id, std::string(id) + ".wav", locale, "a"});
  }
  return rows;
}

std::set<std::string> ids(const std::vector<ManifestRow> &rows) {
  std::set<std::string> out;
  for (const auto &r : rows) out.insert(r.clip_id);
  return out;
}

}  // namespace

TEST_CASE("ingest") {
  SUBCASE("CommonVoice columns") {
    const auto rows = ingest_tsv_text(kHeader +
                                          "c1\tcommon_voice_ja_1.mp3\tさくら\t2\t\t\t\t\tja\t\n"
                                          "c2\tcommon_voice_ja_2.mp3\tねこ\t3\t1\t\t\t\tja\t\n",
                                      "validated.tsv");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].clip_id == "common_voice_ja_1");
    CHECK(rows[0].audio_path == "common_voice_ja_1.mp3");
    CHECK(rows[0].sentence == "さくら");
    CHECK(rows[0].up_votes == 2);
    CHECK(rows[0].down_votes == 0);  // empty cell
    CHECK(rows[1].down_votes == 1);
    CHECK(rows[0].locale == "ja");
    CHECK(rows[0].duration_s == 0.0);
  }
  SUBCASE("missing sentence column") {
    try {
      ingest_tsv_text("path\tup_votes\tdown_votes\tlocale\nx.mp3\t1\t0\tja\n", "bad.tsv");
      FAIL("expected IngestError");
    } catch (const IngestError &e) {
      CHECK(std::string(e.what()).find("sentence") != std::string::npos);
    }
  }
  SUBCASE("optional duration and reading") {
    const auto rows = ingest_tsv_text(
        "path\tsentence\tup_votes\tdown_votes\tlocale\tduration\treading\n"
        "a.mp3\t日本\t1\t0\tja\t2.5\tにほん\n",
        "x");
    CHECK(rows[0].duration_s == 2.5);
    CHECK(rows[0].reading == "にほん");
  }
  SUBCASE("malformed counts") {
    CHECK_THROWS_AS(ingest_tsv_text(kHeader + "c\tx.mp3\ts\tmany\t0\t\t\t\tja\t\n", "x"), IngestError);
  }
  SUBCASE("trailing cells may be missing") {
    const auto rows = ingest_tsv_text(kHeader + "c\tx.mp3\tsun\t1\n", "x");
    CHECK(rows[0].sentence == "sun");
    CHECK(rows[0].down_votes == 0);
    CHECK(rows[0].locale.empty());
  }
  SUBCASE("empty path") { CHECK_THROWS_AS(ingest_tsv_text(kHeader + "c\t\ts\t1\t0\n", "x"), IngestError); }
  SUBCASE("missing file") { CHECK_THROWS_AS(ingest_tsv("/nonexistent.tsv"), Error); }
}

TEST_CASE("clip durations") {
  ipakit_test::TempDir dir;
  ipakit_test::write_text(dir / "clip_durations.tsv", "clip\tduration[ms]\na.mp3\t1500\nb.mp3\t6001\n");
  const auto d = read_clip_durations(dir / "clip_durations.tsv");
  CHECK(d.at("a") == 1.5);
  CHECK(d.at("b") == doctest::Approx(6.001));
}

TEST_CASE("filter") {
  std::vector<UtteranceRecord> rs{rec("a", "ja", 3.0, 2), rec("b", "ja", 3.0, 1), rec("c", "ja", 6.0, 0),
                                  rec("d", "ja", 6.01, 0), rec("e", "ja", 7.0, 5)};
  FilterStats st;
  const auto kept = filter_records(rs, {}, &st);
  std::vector<std::string> kept_ids;
  for (const auto &r : kept) kept_ids.push_back(r.clip_id);
  CHECK(kept_ids == std::vector<std::string>{"b", "c"});
  CHECK(st.input == 5);
  CHECK(st.removed_duration == 2);
  CHECK(st.removed_votes == 1);
  CHECK(st.kept == 2);

  FilterConfig off;
  off.filter_duration = false;
  off.filter_votes = false;
  CHECK(filter_records(rs, off).size() == 5);
}

TEST_CASE("rng is reproducible") {
  Xorshift64Star a(42), b(42), c(43);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  CHECK(a.next() != c.next());
  Xorshift64Star r(1);
  for (int i = 0; i < 1000; ++i) CHECK(r.below(7) < 7);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("sample_split") {
  SUBCASE("10 records, 4/2/1, seed 7") {
    const auto p = pool(10, "ja");
    const auto s = sample_split(p, {4, 2, 1}, 7);
    CHECK(s.train.size() == 4);
    CHECK(s.valid.size() == 2);
    CHECK(s.test.size() == 1);
    std::set<std::string> all;
    for (const auto *rows : {&s.train, &s.valid, &s.test})
      for (const auto &r : *rows) CHECK(all.insert(r.clip_id).second);
    CHECK(s.warnings.empty());
  }
  SUBCASE("same seed, same split; input order is irrelevant") {
    auto p = pool(50, "pl");
    const auto a = sample_split(p, {10, 5, 5}, 99);
    std::reverse(p.begin(), p.end());
    const auto b = sample_split(p, {10, 5, 5}, 99);
    CHECK(a.train == b.train);
    CHECK(a.valid == b.valid);
    CHECK(a.test == b.test);
    const auto c = sample_split(p, {10, 5, 5}, 100);
    CHECK(ids(a.train) != ids(c.train));
  }
  SUBCASE("per locale") {
    auto p = pool(30, "ja");
    const auto q = pool(30, "mt");
    p.insert(p.end(), q.begin(), q.end());
    const auto s = sample_split(p, {10, 4, 2}, 1);
    CHECK(s.train.size() == 20);
    CHECK(std::count_if(s.train.begin(), s.train.end(), [](auto &r) { return r.locale == "mt"; }) == 10);
    CHECK(s.test.size() == 4);
  }
  SUBCASE("short pool") {
    const auto s = sample_split(pool(5, "fi"), {4, 2, 1}, 7);
    CHECK(s.test.size() == 1);
    CHECK(s.valid.size() == 2);
    CHECK(s.train.size() == 2);
    CHECK(s.warnings.size() == 1);
  }
  SUBCASE("full") {
    SplitRequest req;
    req.full = true;
    req.n_test = 10;
    const auto s = sample_split(pool(200, "el"), req, 3);
    CHECK(s.test.size() == 10);
    CHECK(s.valid.size() == 19);  // 10% of the 190 left
    CHECK(s.train.size() == 171);
    req.full_valid_cap = 5;
    CHECK(sample_split(pool(200, "el"), req, 3).valid.size() == 5);
  }
}

TEST_CASE("manifest round trip") {
  Manifest m{Split::kValid, {{"b", "b.wav", "pl", "ba"}, {"a", "a.wav", "ja", "kʰa"}}, 7, "abc"};
  const auto text = serialize_manifest(m);
  CHECK(text.starts_with("clip_id\taudio_path\tlocale\tipa\n"));
  auto rows = read_manifest_text(text, "m");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].clip_id == "a");  // sorted by locale, clip_id
  auto expected = m.rows;
  sort_rows(expected);
  CHECK(rows == expected);
  CHECK(serialize_manifest({Split::kValid, rows, 7, "abc"}) == text);

  SUBCASE("hypothesis files need only clip_id and ipa") {
    const auto hyp = read_manifest_text("clip_id\tipa\nx\tka\n", "hyp");
    CHECK(hyp[0].locale.empty());
    CHECK(hyp[0].ipa == "ka");
  }
  SUBCASE("missing ipa column") { CHECK_THROWS_AS(read_manifest_text("clip_id\tlocale\nx\tja\n", "m"), IngestError); }
}

TEST_CASE("label_manifest") {
  const auto &inv = ipakit_test::inventory();
  std::map<std::string, g2p::RuleSet> rules;
  rules.emplace("mt", g2p::load_ruleset_file(ipakit_test::data_dir() / "rules/mt.g2p", "mt"));
  rules.emplace("ja", g2p::load_ruleset_file(ipakit_test::data_dir() / "rules/ja.g2p", "ja"));
  std::vector<UtteranceRecord> rs{rec("1", "mt", 1, 0, "Xemx!"), rec("2", "ja", 1, 0, "日本"),
                                  rec("3", "ja", 1, 0, "ねこ")};
  rs[1].reading = "";
  auto with_reading = rec("4", "ja", 1, 0, "日本");
  with_reading.reading = "にほん";
  rs.push_back(with_reading);
  std::vector<std::string> log;
  LabelStats st;
  const auto rows = label_manifest(rs, rules, inv, &log, &st);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].ipa == "ʃemʃ");
  CHECK(rows[1].ipa == "neko");
  CHECK(rows[2].ipa == "ɲihoɴ");
  CHECK(st.input == 4);
  CHECK(st.labeled == 3);
  CHECK(st.dropped == 1);
  CHECK(log.size() == 1);

  std::vector<UtteranceRecord> unknown{rec("5", "zz", 1, 0)};
  CHECK_THROWS_AS(label_manifest(unknown, rules, inv), ConfigError);
}

TEST_CASE("vocabulary") {
  const auto &inv = ipakit_test::inventory();
  const auto full = build_vocab({}, inv, VocabMode::kFullInventory);
  CHECK(full.size() == inv.size() + 3);
  CHECK(full.tokens()[0] == "<blank>");
  CHECK(full.tokens()[1] == "<pad>");
  CHECK(full.tokens()[2] == "<unk>");
  CHECK(full.tokens()[3] == inv.phones()[0]);

  std::vector<ManifestRow> rows{{"a", "", "ja", "kʰat͡ʃa"}, {"b", "", "ja", "ta"}};
  const auto seen = build_vocab(rows, inv, VocabMode::kObserved);
  CHECK(seen.tokens() == std::vector<std::string>{"<blank>", "<pad>", "<unk>", "a", "kʰ", "t", "t͡ʃ"});
  CHECK(seen.serialize().starts_with("<blank>\t0\n<pad>\t1\n<unk>\t2\na\t3\n"));
}
