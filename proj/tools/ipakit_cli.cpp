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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ipakit/ipakit.h"

namespace {

struct Failure {
  int code;
};

struct CString {
  char *p = nullptr;
  ~CString() { ipakit_free_string(p); }
  std::string str() const { return p ? p : ""; }
};

void check(ipakit_status s) {
  if (s == IPAKIT_OK) return;
  std::cerr << "ipakit: " << ipakit_status_name(s) << ": " << ipakit_last_error() << "\n";
  throw Failure{1};
}

std::string read_input(const std::string &path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "ipakit: cannot read " << path << "\n";
    throw Failure{1};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

/// "-" or empty means stdout.
void write_output(const std::string &path, const std::string &content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out.flush()) {
      std::cerr << "ipakit: cannot write " << path << "\n";
      throw Failure{1};
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::cerr << "ipakit: cannot write " << path << "\n";
    throw Failure{1};
  }
}

/// Table for the human, JSONL for the report. With no --report the JSONL
/// goes to stdout and the table to stderr.
void emit(const std::string &report_path, const std::string &table, const std::string &jsonl) {
  if (report_path.empty() || report_path == "-") {
    std::cerr << table;
    std::cout << jsonl << std::flush;
  } else {
    std::cout << table;
    write_output(report_path, jsonl);
  }
}

std::unique_ptr<ipakit_inventory, void (*)(ipakit_inventory *)> load_inventory(const std::string &path) {
  ipakit_inventory *inv = nullptr;
  check(ipakit_inventory_load(path.c_str(), &inv));
  return {inv, ipakit_inventory_free};
}

std::string join_path(const std::string &dir, const std::string &name) {
  return dir.empty() || dir.back() == '/' ? dir + name : dir + "/" + name;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Phonetic transcription toolkit: G2P, segmentation, corpus preparation, PER/PFER scoring"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(ipakit_version()));

  std::string data_dir = ipakit_default_data_dir();
  std::string report_path;
  std::string config_path;
  std::optional<unsigned long long> seed;
  bool strict = false;
  app.add_option("--data-dir", data_dir, "Directory holding ipa_all.csv and rules/")->capture_default_str();
  app.add_option("--report", report_path, "Report file (JSONL); stdout when omitted");
  app.add_option("--config", config_path, "Prepare config or ablation matrix");
  app.add_option("--seed", seed, "Override the config seed");
  auto *strict_flag = app.add_flag("--strict", strict, "Fail on characters outside the inventory or rules");
  app.add_flag("--lenient{false}", strict, "Pass unknown characters through (default)")->excludes(strict_flag);

  std::string inventory_path;
  const auto inventory_opt = [&](CLI::App *sub) {
    sub->add_option("--inventory", inventory_path, "Feature table (default: <data-dir>/ipa_all.csv)");
  };

  auto *g2p = app.add_subcommand("g2p", "Transliterate orthographic lines to IPA");
  std::string locale, g2p_input = "-", rules_dir;
  g2p->add_option("-l,--locale", locale, "Locale of the rule pack")->required();
  g2p->add_option("input", g2p_input, "Text file, one utterance per line (- for stdin)");
  g2p->add_option("--rules-dir", rules_dir, "Directory of <locale>.g2p packs (default: <data-dir>/rules)");

  auto *validate = app.add_subcommand("validate", "Check a rule pack against a word<TAB>ipa lexicon");
  std::string lexicon_path;
  validate->add_option("-l,--locale", locale, "Locale of the rule pack")->required();
  validate->add_option("lexicon", lexicon_path, "Lexicon TSV (default: <data-dir>/lexicon/<locale>.tsv)");
  validate->add_option("--rules-dir", rules_dir, "Directory of <locale>.g2p packs");
  inventory_opt(validate);

  auto *seg = app.add_subcommand("segment", "Split IPA lines into inventory phones");
  std::string seg_input = "-";
  seg->add_option("input", seg_input, "IPA file, one utterance per line (- for stdin)");
  inventory_opt(seg);

  auto *prepare = app.add_subcommand("prepare", "Build train/valid/test manifests and a vocabulary");
  std::string out_dir = "prepared";
  std::vector<std::string> sets;
  prepare->add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
  prepare->add_option("--set", sets, "Override a config key (key=value)");

  auto *eval = app.add_subcommand("eval", "Score a hypothesis file against reference transcriptions");
  std::string ref_path, hyp_path;
  eval->add_option("ref", ref_path, "Reference TSV with clip_id, locale, ipa")->required();
  eval->add_option("hyp", hyp_path, "Hypothesis TSV with clip_id, ipa")->required();
  inventory_opt(eval);

  auto *iaa = app.add_subcommand("iaa", "Agreement between two annotators (A is the reference)");
  iaa->add_option("annotator_a", ref_path, "Annotator A TSV")->required();
  iaa->add_option("annotator_b", hyp_path, "Annotator B TSV")->required();
  inventory_opt(iaa);

  auto *ablate = app.add_subcommand("ablate", "Prepare one dataset per cell of a config matrix");
  ablate->add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
  ablate->add_option("--set", sets, "Override a base config key (key=value)");

  auto *check_overall = app.add_subcommand("check-overall", "Recompute the Overall cells of published score rows");
  std::string scores_path;
  check_overall->add_option("scores", scores_path, "Scores TSV (default: <data-dir>/published_scores.tsv)");

  CLI11_PARSE(app, argc, argv);

  const auto inventory_file = [&] {
    return inventory_path.empty() ? join_path(data_dir, "ipa_all.csv") : inventory_path;
  };
  const auto rules_path = [&] { return rules_dir.empty() ? join_path(data_dir, "rules") : rules_dir; };

  try {
    if (*g2p || *validate) {
      CString locales;
      check(ipakit_g2p_locales(rules_path().c_str(), &locales.p));
      const auto available = lines_of(locales.str());
      if (std::find(available.begin(), available.end(), locale) == available.end()) {
        std::string list;
        for (const auto &l : available) list += (list.empty() ? "" : ", ") + l;
        std::cerr << "ipakit: unknown locale '" << locale << "'; available: " << list << "\n";
        return 2;
      }
      ipakit_ruleset *raw = nullptr;
      check(ipakit_ruleset_load(join_path(rules_path(), locale + ".g2p").c_str(), locale.c_str(), &raw));
      std::unique_ptr<ipakit_ruleset, void (*)(ipakit_ruleset *)> rs(raw, ipakit_ruleset_free);
      if (*validate) {
        auto inv = load_inventory(inventory_file());
        const auto lexicon =
            lexicon_path.empty() ? join_path(join_path(data_dir, "lexicon"), locale + ".tsv") : lexicon_path;
        CString jsonl;
        std::size_t failures = 0;
        check(ipakit_validate_ruleset(rs.get(), inv.get(), lexicon.c_str(), &jsonl.p, &failures));
        emit(report_path, std::to_string(failures) + " failing words\n", jsonl.str());
        return failures == 0 ? 0 : 1;
      }
      std::string out;
      int status = 0;
      std::size_t line_no = 0;
      for (const auto &line : lines_of(read_input(g2p_input))) {
        ++line_no;
        CString ipa;
        const auto s = ipakit_transliterate(rs.get(), line.c_str(), strict, &ipa.p);
        if (s != IPAKIT_OK) {
          std::cerr << "ipakit: line " << line_no << ": " << ipakit_last_error() << "\n";
          status = 1;
          out += "\n";
          continue;
        }
        out += ipa.str() + "\n";
      }
      write_output(report_path, out);
      return status;
    }

    if (*seg) {
      auto inv = load_inventory(inventory_file());
      std::string out;
      int status = 0;
      std::size_t line_no = 0;
      for (const auto &line : lines_of(read_input(seg_input))) {
        ++line_no;
        CString norm;
        check(ipakit_normalize(line.c_str(), 1, 0, &norm.p));
        ipakit_segmentation *raw = nullptr;
        if (ipakit_segment(inv.get(), norm.p, strict, &raw) != IPAKIT_OK) {
          std::cerr << "ipakit: line " << line_no << ": " << ipakit_last_error() << "\n";
          status = 1;
          out += "\n";
          continue;
        }
        std::unique_ptr<ipakit_segmentation, void (*)(ipakit_segmentation *)> s(raw, ipakit_segmentation_free);
        for (std::size_t i = 0; i < ipakit_segmentation_count(s.get()); ++i) {
          if (i) out += ' ';
          const std::string token = ipakit_segmentation_token(s.get(), i);
          out += ipakit_segmentation_is_residue(s.get(), i) ? "[" + token + "]" : token;
        }
        out += "\n";
      }
      write_output(report_path, out);
      return status;
    }

    if (*eval || *iaa) {
      auto inv = load_inventory(inventory_file());
      CString table, jsonl;
      check(ipakit_eval_files(inv.get(), ref_path.c_str(), hyp_path.c_str(), strict, *eval ? "eval" : "iaa",
                              &table.p, &jsonl.p));
      emit(report_path, table.str(), jsonl.str());
      return 0;
    }

    if (*prepare || *ablate) {
      if (config_path.empty()) {
        std::cerr << "ipakit: --config is required\n";
        return 2;
      }
      std::vector<std::string> keys, values;
      for (const auto &kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
          std::cerr << "ipakit: --set expects key=value, got '" << kv << "'\n";
          return 2;
        }
        keys.push_back(kv.substr(0, eq));
        values.push_back(kv.substr(eq + 1));
      }
      if (seed) {
        keys.push_back("seed");
        values.push_back(std::to_string(*seed));
      }
      std::vector<const char *> key_ptrs, value_ptrs;
      for (std::size_t i = 0; i < keys.size(); ++i) {
        key_ptrs.push_back(keys[i].c_str());
        value_ptrs.push_back(values[i].c_str());
      }
      CString table, jsonl;
      std::size_t problems = 0;
      if (*prepare)
        check(ipakit_prepare(config_path.c_str(), data_dir.c_str(), key_ptrs.data(), value_ptrs.data(),
                             keys.size(), out_dir.c_str(), &table.p, &jsonl.p, &problems));
      else
        check(ipakit_ablate(config_path.c_str(), data_dir.c_str(), key_ptrs.data(), value_ptrs.data(),
                            keys.size(), out_dir.c_str(), &table.p, &jsonl.p, &problems));
      const auto report = report_path.empty() ? join_path(out_dir, "report.jsonl") : report_path;
      emit(report, table.str(), jsonl.str());
      return problems == 0 ? 0 : 1;
    }

    if (*check_overall) {
      const auto path = scores_path.empty() ? join_path(data_dir, "published_scores.tsv") : scores_path;
      CString table, jsonl;
      std::size_t mismatches = 0;
      check(ipakit_check_published(path.c_str(), &table.p, &jsonl.p, &mismatches));
      emit(report_path, table.str(), jsonl.str());
      // Mismatching published rows are findings, not failures.
      return 0;
    }
  } catch (const Failure &f) {
    return f.code;
  }
  return 0;
}
