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

#include "ipakit/ipakit.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <map>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ipakit/errors.hpp"
#include "ipakit/g2p.hpp"
#include "ipakit/ipa_segment.hpp"
#include "ipakit/metrics.hpp"
#include "ipakit/phone_inventory.hpp"
#include "ipakit/pipeline.hpp"
#include "ipakit/report.hpp"
#include "ipakit/wav.hpp"

struct ipakit_inventory {
  ipakit::PhoneInventory inv;
};
struct ipakit_ruleset {
  ipakit::g2p::RuleSet rs;
};
struct ipakit_segmentation {
  std::vector<std::string> tokens;
  std::vector<bool> residue;
  std::size_t residue_count = 0;
};

namespace {

thread_local std::string g_last_error;

ipakit_status status_of(ipakit::ErrorKind kind) {
  using K = ipakit::ErrorKind;
  switch (kind) {
    case K::kInvalidArgument: return IPAKIT_E_INVALID_ARGUMENT;
    case K::kIo: return IPAKIT_E_IO;
    case K::kLoad: return IPAKIT_E_LOAD;
    case K::kOutOfVocabulary: return IPAKIT_E_OUT_OF_VOCABULARY;
    case K::kSegmentation: return IPAKIT_E_SEGMENTATION;
    case K::kParse: return IPAKIT_E_PARSE;
    case K::kTransliteration: return IPAKIT_E_TRANSLITERATION;
    case K::kIngest: return IPAKIT_E_INGEST;
    case K::kDecode: return IPAKIT_E_DECODE;
    case K::kConfig: return IPAKIT_E_CONFIG;
    case K::kMismatch: return IPAKIT_E_MISMATCH;
  }
  return IPAKIT_E_INTERNAL;
}

ipakit_status fail(ipakit_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <typename Fn>
ipakit_status guarded(Fn fn) {
  g_last_error.clear();
  try {
    fn();
    return IPAKIT_OK;
  } catch (const ipakit::Error &e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::invalid_argument &e) {
    return fail(IPAKIT_E_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc &) {
    return fail(IPAKIT_E_INTERNAL, "out of memory");
  } catch (const std::filesystem::filesystem_error &e) {
    return fail(IPAKIT_E_IO, e.what());
  } catch (const std::exception &e) {
    return fail(IPAKIT_E_INTERNAL, e.what());
  }
}

#define REQUIRE_ARG(cond)                                                  \
  do {                                                                     \
    if (!(cond)) return fail(IPAKIT_E_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void give(char **out, const std::string &s) {
  if (out) *out = dup_string(s);
}

std::vector<std::string> phones(const char *const *items, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!items[i]) throw std::invalid_argument("null phone in array");
    out.emplace_back(items[i]);
  }
  return out;
}

std::map<std::string, std::string> overrides(const char *const *keys, const char *const *values,
                                             std::size_t n) {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!keys[i] || !values[i]) throw std::invalid_argument("null override");
    out[keys[i]] = values[i];
  }
  return out;
}

std::filesystem::path data_dir_or_default(const char *data_dir) {
  return data_dir && *data_dir ? std::filesystem::path(data_dir) : std::filesystem::path(IPAKIT_DATA_DIR);
}

}  // namespace

extern "C" {

const char *ipakit_version(void) { return "0.1.0"; }

const char *ipakit_status_name(ipakit_status status) {
  switch (status) {
    case IPAKIT_OK: return "ok";
    case IPAKIT_E_INVALID_ARGUMENT: return "invalid argument";
    case IPAKIT_E_IO: return "i/o error";
    case IPAKIT_E_LOAD: return "load error";
    case IPAKIT_E_OUT_OF_VOCABULARY: return "out of vocabulary";
    case IPAKIT_E_SEGMENTATION: return "segmentation error";
    case IPAKIT_E_PARSE: return "parse error";
    case IPAKIT_E_TRANSLITERATION: return "transliteration error";
    case IPAKIT_E_INGEST: return "ingest error";
    case IPAKIT_E_DECODE: return "decode error";
    case IPAKIT_E_CONFIG: return "config error";
    case IPAKIT_E_MISMATCH: return "id mismatch";
    case IPAKIT_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char *ipakit_last_error(void) { return g_last_error.c_str(); }

void ipakit_free_string(char *s) { std::free(s); }

const char *ipakit_default_data_dir(void) { return IPAKIT_DATA_DIR; }

ipakit_status ipakit_inventory_load(const char *path, ipakit_inventory **out) {
  REQUIRE_ARG(path && out);
  return guarded([&] { *out = new ipakit_inventory{ipakit::load_feature_table_file(path)}; });
}

ipakit_status ipakit_inventory_parse(const char *text, size_t length, ipakit_inventory **out) {
  REQUIRE_ARG((text || length == 0) && out);
  return guarded([&] {
    *out = new ipakit_inventory{ipakit::load_feature_table(std::string_view(text ? text : "", length))};
  });
}

void ipakit_inventory_free(ipakit_inventory *inv) { delete inv; }

size_t ipakit_inventory_size(const ipakit_inventory *inv) { return inv ? inv->inv.size() : 0; }

int ipakit_inventory_contains(const ipakit_inventory *inv, const char *phone) {
  return inv && phone && inv->inv.contains(phone) ? 1 : 0;
}

const char *ipakit_inventory_phone(const ipakit_inventory *inv, size_t index) {
  if (!inv || index >= inv->inv.size()) return nullptr;
  return inv->inv.phones()[index].c_str();
}

ipakit_status ipakit_inventory_features(const ipakit_inventory *inv, const char *phone,
                                        int8_t out[IPAKIT_FEATURE_COUNT]) {
  REQUIRE_ARG(inv && phone && out);
  return guarded([&] {
    const auto &v = inv->inv.feature_vector(phone);
    for (std::size_t i = 0; i < ipakit::kFeatureCount; ++i) out[i] = v[i];
  });
}

ipakit_status ipakit_feature_cost(const ipakit_inventory *inv, const char *a, const char *b, double *out) {
  REQUIRE_ARG(inv && a && b && out);
  return guarded([&] { *out = ipakit::feature_substitution_cost(inv->inv, a, b); });
}

ipakit_status ipakit_normalize(const char *text, int keep_length, int strip_tone, char **out) {
  REQUIRE_ARG(text && out);
  return guarded([&] {
    give(out, ipakit::normalize_ipa(text, {keep_length != 0, strip_tone != 0}));
  });
}

ipakit_status ipakit_segment(const ipakit_inventory *inv, const char *text, int strict,
                             ipakit_segmentation **out) {
  REQUIRE_ARG(inv && text && out);
  return guarded([&] {
    const auto seg = ipakit::segment(inv->inv, text,
                                     strict ? ipakit::SegmentMode::kStrict : ipakit::SegmentMode::kLenient);
    auto result = std::make_unique<ipakit_segmentation>();
    std::size_t p = 0, r = 0;
    while (p < seg.phones.size() || r < seg.residue.size()) {
      const bool take_phone =
          r == seg.residue.size() || (p < seg.phones.size() && seg.phone_positions[p] < seg.residue[r].position);
      if (take_phone) {
        result->tokens.push_back(seg.phones[p++]);
        result->residue.push_back(false);
      } else {
        result->tokens.push_back(seg.residue[r++].character);
        result->residue.push_back(true);
      }
    }
    result->residue_count = seg.residue.size();
    *out = result.release();
  });
}

void ipakit_segmentation_free(ipakit_segmentation *seg) { delete seg; }

size_t ipakit_segmentation_count(const ipakit_segmentation *seg) { return seg ? seg->tokens.size() : 0; }

const char *ipakit_segmentation_token(const ipakit_segmentation *seg, size_t index) {
  if (!seg || index >= seg->tokens.size()) return nullptr;
  return seg->tokens[index].c_str();
}

int ipakit_segmentation_is_residue(const ipakit_segmentation *seg, size_t index) {
  return seg && index < seg->residue.size() && seg->residue[index] ? 1 : 0;
}

size_t ipakit_segmentation_residue_count(const ipakit_segmentation *seg) {
  return seg ? seg->residue_count : 0;
}

ipakit_status ipakit_per(const char *const *ref, size_t ref_len, const char *const *hyp, size_t hyp_len,
                         double *out) {
  REQUIRE_ARG((ref || ref_len == 0) && (hyp || hyp_len == 0) && out);
  return guarded([&] { *out = ipakit::per(phones(ref, ref_len), phones(hyp, hyp_len)); });
}

ipakit_status ipakit_pfer(const ipakit_inventory *inv, const char *const *ref, size_t ref_len,
                          const char *const *hyp, size_t hyp_len, double *out) {
  REQUIRE_ARG(inv && (ref || ref_len == 0) && (hyp || hyp_len == 0) && out);
  return guarded([&] { *out = ipakit::pfer(inv->inv, phones(ref, ref_len), phones(hyp, hyp_len)); });
}

ipakit_status ipakit_cer(const char *ref, const char *hyp, double *out) {
  REQUIRE_ARG(ref && hyp && out);
  return guarded([&] { *out = ipakit::cer(ref, hyp); });
}

ipakit_status ipakit_ruleset_load(const char *path, const char *locale, ipakit_ruleset **out) {
  REQUIRE_ARG(path && locale && out);
  return guarded([&] { *out = new ipakit_ruleset{ipakit::g2p::load_ruleset_file(path, locale)}; });
}

ipakit_status ipakit_ruleset_parse(const char *source, const char *locale, ipakit_ruleset **out) {
  REQUIRE_ARG(source && locale && out);
  return guarded([&] { *out = new ipakit_ruleset{ipakit::g2p::parse_ruleset(source, locale)}; });
}

void ipakit_ruleset_free(ipakit_ruleset *rs) { delete rs; }

ipakit_status ipakit_transliterate(const ipakit_ruleset *rs, const char *text, int strict, char **out) {
  REQUIRE_ARG(rs && text && out);
  return guarded([&] {
    give(out, ipakit::g2p::transliterate(rs->rs, text,
                                         strict ? ipakit::g2p::Mode::kStrict : ipakit::g2p::Mode::kLenient));
  });
}

ipakit_status ipakit_g2p_locales(const char *rules_dir, char **out) {
  REQUIRE_ARG(rules_dir && out);
  return guarded([&] {
    std::string joined;
    for (const auto &l : ipakit::g2p::available_locales(rules_dir)) joined += l + '\n';
    give(out, joined);
  });
}

ipakit_status ipakit_validate_ruleset(const ipakit_ruleset *rs, const ipakit_inventory *inv,
                                      const char *lexicon_path, char **jsonl, size_t *failures) {
  REQUIRE_ARG(rs && inv && lexicon_path);
  return guarded([&] {
    using nlohmann::ordered_json;
    const auto lexicon = ipakit::g2p::load_lexicon(lexicon_path);
    std::vector<std::string> words;
    for (const auto &e : lexicon) words.push_back(e.orthography);
    const auto report = ipakit::g2p::validate_ruleset(rs->rs, inv->inv, words);
    std::string out;
    std::size_t bad = report.failures.size();
    for (const auto &f : report.failures)
      out += ordered_json{{"record", "segmentation_failure"}, {"word", f.word}, {"output", f.output},
                          {"reason", f.reason}}.dump() + '\n';
    for (const auto &e : lexicon) {
      const auto got = ipakit::g2p::transliterate(rs->rs, e.orthography);
      const auto want = ipakit::normalize_ipa(e.ipa);
      if (got != want) {
        ++bad;
        out += ordered_json{{"record", "mismatch"}, {"word", e.orthography}, {"expected", want},
                            {"output", got}}.dump() + '\n';
      }
    }
    for (auto line : report.unused_rule_lines)
      out += ordered_json{{"record", "unused_rule"}, {"line", line}}.dump() + '\n';
    out += ordered_json{{"record", "summary"}, {"locale", rs->rs.locale}, {"words", lexicon.size()},
                        {"failures", bad}}.dump() + '\n';
    give(jsonl, out);
    if (failures) *failures = bad;
  });
}

ipakit_status ipakit_eval_files(const ipakit_inventory *inv, const char *ref_path, const char *hyp_path,
                                int strict, const char *kind, char **table, char **jsonl) {
  REQUIRE_ARG(inv && ref_path && hyp_path);
  return guarded([&] {
    const auto report = ipakit::report::evaluate_files(
        inv->inv, ref_path, hyp_path, strict ? ipakit::SegmentMode::kStrict : ipakit::SegmentMode::kLenient);
    const std::string t = ipakit::report::eval_table(report);
    const std::string j = ipakit::report::eval_jsonl(report, kind ? kind : "eval");
    give(table, t);
    give(jsonl, j);
  });
}

ipakit_status ipakit_check_published(const char *scores_path, char **table, char **jsonl,
                                     size_t *mismatches) {
  REQUIRE_ARG(scores_path);
  return guarded([&] {
    const auto checks = ipakit::report::check_published(ipakit::report::load_published_scores(scores_path));
    std::size_t bad = 0;
    for (const auto &c : checks) bad += c.matches ? 0 : 1;
    give(table, ipakit::report::checks_table(checks));
    give(jsonl, ipakit::report::checks_jsonl(checks));
    if (mismatches) *mismatches = bad;
  });
}

ipakit_status ipakit_prepare(const char *config_path, const char *data_dir, const char *const *override_keys,
                             const char *const *override_values, size_t override_count, const char *out_dir,
                             char **table, char **jsonl, size_t *hard_errors) {
  REQUIRE_ARG(config_path && out_dir && (override_count == 0 || (override_keys && override_values)));
  return guarded([&] {
    const auto config = ipakit::load_prepare_config(config_path, data_dir_or_default(data_dir),
                                                    overrides(override_keys, override_values, override_count));
    const auto summary = ipakit::run_prepare(config, out_dir);
    give(table, ipakit::report::prepare_table(summary));
    give(jsonl, ipakit::report::prepare_jsonl(summary));
    if (hard_errors) *hard_errors = summary.hard_errors;
  });
}

ipakit_status ipakit_ablate(const char *matrix_path, const char *data_dir, const char *const *override_keys,
                            const char *const *override_values, size_t override_count, const char *out_dir,
                            char **table, char **jsonl, size_t *failed_cells) {
  REQUIRE_ARG(matrix_path && out_dir && (override_count == 0 || (override_keys && override_values)));
  return guarded([&] {
    const auto matrix = ipakit::load_ablation_matrix(matrix_path);
    const auto cells = ipakit::run_ablation(matrix, out_dir, data_dir_or_default(data_dir),
                                            overrides(override_keys, override_values, override_count));
    std::size_t failed = 0;
    for (const auto &c : cells)
      if (c.status == "failed" || (c.summary && c.summary->hard_errors > 0)) ++failed;
    give(table, ipakit::report::ablation_table(cells));
    give(jsonl, ipakit::report::ablation_jsonl(cells));
    if (failed_cells) *failed_cells = failed;
  });
}

ipakit_status ipakit_probe_wav(const char *path, double *seconds) {
  REQUIRE_ARG(path && seconds);
  return guarded([&] { *seconds = ipakit::audio::probe_duration(path); });
}

ipakit_status ipakit_resample_wav(const char *in_path, const char *out_path, int target_rate) {
  REQUIRE_ARG(in_path && out_path);
  if (target_rate <= 0) return fail(IPAKIT_E_INVALID_ARGUMENT, "target rate must be positive");
  return guarded([&] { ipakit::audio::resample_wav(in_path, out_path, target_rate); });
}

}  // extern "C"
