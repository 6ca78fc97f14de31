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

// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpus_fixture.hpp"
#include "ipakit/config.hpp"
#include "ipakit/corpus.hpp"
#include "ipakit/errors.hpp"
#include "ipakit/g2p.hpp"
#include "ipakit/ipa_segment.hpp"
#include "ipakit/metrics.hpp"
#include "ipakit/phone_inventory.hpp"
#include "ipakit/pipeline.hpp"
#include "ipakit/report.hpp"
#include "ipakit/wav.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace ipakit;
using ipakit_test::Seq;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int number, const std::string &name, const std::function<Outcome()> &body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.ok) ++failures;
  std::cout << (o.ok ? "PASS " : "FAIL ") << number << " " << name << ": " << o.detail << std::endl;
}

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// The raw feature CSV, read without the library: header cells and rows of cells.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

RawTable read_raw_csv(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  RawTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (first) {
      t.header = cells;
      first = false;
    } else {
      t.rows.push_back(cells);
    }
  }
  return t;
}

Seq random_seq(std::mt19937_64 &rng, const std::vector<std::string> &alphabet, std::size_t max_len) {
  Seq s(rng() % (max_len + 1));
  for (auto &p : s) p = alphabet[rng() % alphabet.size()];
  return s;
}

const std::vector<std::string> kTen{"p", "b", "t", "d", "k", "ɡ", "a", "i", "u", "ʃ"};

// Code points of a UTF-8 string (the input is trusted to be well formed).
std::vector<char32_t> decode(const std::string &s) {
  std::vector<char32_t> out;
  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    const int n = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
    char32_t cp = n == 1 ? c : c & (0xFF >> (n + 1));
    for (int k = 1; k < n; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out.push_back(cp);
    i += n;
  }
  return out;
}

std::string encode(char32_t cp) {
  std::string s;
  if (cp < 0x80) {
    s += static_cast<char>(cp);
  } else if (cp < 0x800) {
    s += static_cast<char>(0xC0 | (cp >> 6));
    s += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    s += static_cast<char>(0xE0 | (cp >> 12));
    s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    s += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return s;
}

}  // namespace

int main() {
  const auto &inv = ipakit_test::inventory();
  const auto feature_sub = [&](const std::string &a, const std::string &b) { return feature_substitution_cost(inv, a, b); };
  const auto unit_sub = [](const std::string &a, const std::string &b) { return a == b ? 0.0 : 1.0; };

  criterion(1, "dp_matches_brute_force", [&] {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1);
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
      const auto r = random_seq(rng, kTen, 4), h = random_seq(rng, kTen, 4);
      if (edit_distance(r, h, EditCosts::unit()) != ipakit_test::brute_force_distance(r, h, unit_sub)) ++bad;
      if (edit_distance(r, h, EditCosts::features(inv)) != ipakit_test::brute_force_distance(r, h, feature_sub)) ++bad;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return Outcome{bad == 0 && secs < 10.0,
                   std::to_string(bad) + " mismatches in 400 comparisons, " + fmt("%.3f s", secs)};
  });

  criterion(2, "metric_axioms", [&] {
    std::mt19937_64 rng(2);
    const auto unit = EditCosts::unit();
    const auto feat = EditCosts::features(inv);
    EditCosts constant = EditCosts::unit();
    constant.substitution = [](std::string_view a, std::string_view b) { return a == b ? 0.0 : 1.0; };
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto a = random_seq(rng, kTen, 8), b = random_seq(rng, kTen, 8), c = random_seq(rng, kTen, 8);
      for (const auto *costs : {&unit, &feat}) {
        const double ab = edit_distance(a, b, *costs), ba = edit_distance(b, a, *costs);
        const double bc = edit_distance(b, c, *costs), ac = edit_distance(a, c, *costs);
        if (std::abs(ab - ba) > 1e-9) ++bad;
        if (edit_distance(a, a, *costs) != 0.0) ++bad;
        if (ac > ab + bc + 1e-9) ++bad;
      }
      if (pfer(inv, a, b) > per(a, b) + 1e-9) ++bad;
      const double n = static_cast<double>(std::max<std::size_t>(a.size(), 1));
      if (std::abs(edit_distance(a, b, constant) / n - per(a, b)) > 1e-9) ++bad;
    }
    return Outcome{bad == 0, std::to_string(bad) + " violations over 1000 triples"};
  });

  criterion(3, "published_overall_cells", [&] {
    const auto scores = report::load_published_scores(ipakit_test::data_dir() / "published_scores.tsv");
    const auto checks = report::check_published(scores);
    std::map<std::string, double> recomputed;
    std::vector<std::string> flagged;
    for (const auto &c : checks) {
      recomputed[c.label] = c.recomputed;
      if (!c.matches) flagged.push_back(c.label);
    }
    const double sup = recomputed.at("supervised PER 1k");
    const double zs = recomputed.at("zero_shot PFER Ours (1k)");
    const double human = recomputed.at("zero_shot PFER Human (IAA)");
    const bool ok = std::abs(sup - 24.901) <= 1e-3 + 1e-12 && std::abs(zs - 21.221) <= 1e-3 + 1e-12 &&
                    std::abs(human - 19.571) <= 1e-3 + 1e-12 &&
                    flagged == std::vector<std::string>{"zero_shot PER Ours (full)", "zero_shot PFER Allosaurus"};
    std::string list;
    for (const auto &f : flagged) list += (list.empty() ? "" : "; ") + f;
    return Outcome{ok, "supervised PER 1k " + fmt("%.4f", sup) + ", zero_shot PFER Ours (1k) " + fmt("%.4f", zs) +
                           ", Human (IAA) " + fmt("%.4f", human) + ", flagged [" + list + "]"};
  });

  criterion(4, "feature_cost_k_kh", [&] {
    const auto raw = read_raw_csv(ipakit_test::data_dir() / "ipa_all.csv");
    const std::vector<std::string> *k = nullptr, *kh = nullptr;
    for (const auto &row : raw.rows) {
      if (row[0] == "k") k = &row;
      if (row[0] == "kʰ") kh = &row;
    }
    if (!k || !kh) return Outcome{false, "k or kʰ missing from the table"};
    int differ = 0;
    for (std::size_t i = 1; i < raw.header.size(); ++i) differ += (*k)[i] != (*kh)[i];
    const double expected = differ / static_cast<double>(raw.header.size() - 1);
    const double got = feature_substitution_cost(inv, "k", "kʰ");
    const bool ok = raw.header.size() == 25 && differ == 1 && std::abs(got - expected) <= 1e-12 &&
                    std::abs(got - 1.0 / 24.0) <= 1e-12;
    return Outcome{ok, std::to_string(differ) + " of " + std::to_string(raw.header.size() - 1) +
                           " cells differ; cost " + fmt("%.15f", got)};
  });

  criterion(5, "segmentation_round_trip", [&] {
    std::mt19937_64 rng(5);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      std::string text;
      for (auto n = 1 + rng() % 8; n > 0; --n) text += inv.phones()[rng() % inv.size()];
      try {
        std::string joined;
        for (const auto &p : segment(inv, text, SegmentMode::kStrict).phones) joined += p;
        if (joined != text) ++bad;
      } catch (const SegmentationError &) {
        ++bad;
      }
    }
    std::set<char32_t> alphabet;
    for (const auto &p : inv.phones())
      for (char32_t c : decode(p)) alphabet.insert(c);
    int accepted = 0, probes = 0;
    for (char32_t cp = 0x21; cp < 0x3000 && probes < 500; cp += 7) {
      if (alphabet.contains(cp) || (cp >= 0xD800 && cp < 0xE000)) continue;
      ++probes;
      try {
        segment(inv, "ka" + encode(cp) + "ta", SegmentMode::kStrict);
        ++accepted;
      } catch (const SegmentationError &) {
      }
    }
    return Outcome{bad == 0 && accepted == 0 && probes > 0,
                   std::to_string(bad) + " of 1000 concatenations failed; " + std::to_string(accepted) + " of " +
                       std::to_string(probes) + " foreign characters accepted"};
  });

  criterion(6, "g2p_lexicons", [&] {
    std::string detail;
    bool ok = true;
    for (const std::string locale : {"ja", "pl", "mt", "hu", "fi", "el", "ta"}) {
      const auto rules = g2p::load_ruleset_file(ipakit_test::data_dir() / "rules" / (locale + ".g2p"), locale);
      const auto lex = g2p::load_lexicon(ipakit_test::data_dir() / "lexicon" / (locale + ".tsv"));
      std::size_t hits = 0;
      for (const auto &e : lex) {
        try {
          const auto out = g2p::transliterate(rules, e.orthography, g2p::Mode::kStrict);
          segment(inv, out, SegmentMode::kStrict);
          if (out == normalize_ipa(e.ipa)) ++hits;
        } catch (const Error &) {
        }
      }
      ok = ok && lex.size() >= 20 && hits == lex.size();
      detail += (detail.empty() ? "" : ", ") + locale + " " + std::to_string(hits) + "/" + std::to_string(lex.size());
    }
    return Outcome{ok, detail};
  });

  criterion(7, "prepare_determinism_and_filters", [&] {
    ipakit_test::TempDir dir;
    const auto corpus = ipakit_test::write_synthetic_corpus(dir / "cv", {"hu", "fi", "mt"}, 1500);
    auto config_for = [&](const std::string &preset) {
      auto kv = KeyValueConfig::parse("locales = hu, fi, mt\nseed = 1234\npreset = " + preset + "\ninput = " +
                                          corpus.tsv.string() + "\nclip_durations = " + corpus.durations.string() + "\n",
                                      "acceptance.cfg");
      return make_prepare_config(kv, dir.path(), ipakit_test::data_dir());
    };
    run_prepare(config_for("1k"), dir / "one");
    run_prepare(config_for("1k"), dir / "two");
    bool same = true;
    for (const char *f : {"train.tsv", "valid.tsv", "test.tsv", "vocab.txt"})
      same = same && ipakit_test::read_text(dir / "one" / f) == ipakit_test::read_text(dir / "two" / f);

    const auto full = run_prepare(config_for("full"), dir / "full");
    std::set<std::string> surviving;
    for (const char *f : {"train.tsv", "valid.tsv", "test.tsv"})
      for (const auto &r : corpus::read_manifest(dir / "full" / f)) surviving.insert(r.clip_id);
    const bool exact = surviving == corpus.kept && full.label.dropped == 0;
    return Outcome{same && exact, std::string(same ? "identical" : "different") + " outputs across runs; " +
                                      std::to_string(surviving.size()) + " rows survive, " +
                                      std::to_string(corpus.kept.size()) + " expected, " +
                                      std::to_string(corpus.all.size() - surviving.size()) + " removed"};
  });

  criterion(8, "resampler", [&] {
    const std::size_t n = 48000;
    const auto x = ipakit_test::sine(440.0, 48000, n);
    const auto y = audio::resample(x, 48000, 16000);
    double peak = 0.0, best = -1.0;
    for (double f = 400.0; f <= 480.0; f += 0.1) {
      const double m = ipakit_test::dft_magnitude(y, f, 16000);
      if (m > best) {
        best = m;
        peak = f;
      }
    }
    const auto expected = static_cast<long>(std::ceil(n * 16000.0 / 48000.0));
    const std::vector<double> dc(n, 0.5);
    double dc_err = 0.0;
    for (double v : audio::resample(dc, 48000, 16000)) dc_err = std::max(dc_err, std::abs(v - 0.5));
    const bool ok = std::abs(peak - 440.0) <= 1.0 && std::labs(static_cast<long>(y.size()) - expected) <= 1 &&
                    dc_err <= 1e-4;
    return Outcome{ok, "peak " + fmt("%.1f Hz", peak) + ", length " + std::to_string(y.size()) + " (expected " +
                           std::to_string(expected) + "), DC error " + fmt("%.2e", dc_err)};
  });

  criterion(9, "vocabulary_size", [&] {
    const auto raw = read_raw_csv(ipakit_test::data_dir() / "ipa_all.csv");
    const auto vocab = corpus::build_vocab({}, inv, corpus::VocabMode::kFullInventory);
    const bool ok = raw.rows.size() == 6367 && vocab.size() == raw.rows.size() + 3;
    return Outcome{ok, std::to_string(vocab.size()) + " tokens for " + std::to_string(raw.rows.size()) + " table rows"};
  });

  return failures == 0 ? 0 : 1;
}
