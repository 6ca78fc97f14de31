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

/* C interface to ipakit. Every call returns an ipakit_status; on failure the
 * message is available from ipakit_last_error() on the same thread. Strings
 * returned through `char **` are owned by the caller and released with
 * ipakit_free_string(). */
#ifndef IPAKIT_IPAKIT_H_
#define IPAKIT_IPAKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(IPAKIT_BUILDING)
#define IPAKIT_API __attribute__((visibility("default")))
#else
#define IPAKIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ipakit_status {
  IPAKIT_OK = 0,
  IPAKIT_E_INVALID_ARGUMENT = 1,
  IPAKIT_E_IO = 2,
  IPAKIT_E_LOAD = 3,
  IPAKIT_E_OUT_OF_VOCABULARY = 4,
  IPAKIT_E_SEGMENTATION = 5,
  IPAKIT_E_PARSE = 6,
  IPAKIT_E_TRANSLITERATION = 7,
  IPAKIT_E_INGEST = 8,
  IPAKIT_E_DECODE = 9,
  IPAKIT_E_CONFIG = 10,
  IPAKIT_E_MISMATCH = 11,
  IPAKIT_E_INTERNAL = 12
} ipakit_status;

#define IPAKIT_FEATURE_COUNT 24

typedef struct ipakit_inventory ipakit_inventory;
typedef struct ipakit_ruleset ipakit_ruleset;
typedef struct ipakit_segmentation ipakit_segmentation;

IPAKIT_API const char *ipakit_version(void);
IPAKIT_API const char *ipakit_status_name(ipakit_status status);
/* Message of the last failed call on this thread; "" if none. */
IPAKIT_API const char *ipakit_last_error(void);
IPAKIT_API void ipakit_free_string(char *s);
/* Data directory compiled into the library (feature table, rule packs). */
IPAKIT_API const char *ipakit_default_data_dir(void);

/* Phone inventory. */
IPAKIT_API ipakit_status ipakit_inventory_load(const char *path, ipakit_inventory **out);
IPAKIT_API ipakit_status ipakit_inventory_parse(const char *text, size_t length, ipakit_inventory **out);
IPAKIT_API void ipakit_inventory_free(ipakit_inventory *inv);
IPAKIT_API size_t ipakit_inventory_size(const ipakit_inventory *inv);
IPAKIT_API int ipakit_inventory_contains(const ipakit_inventory *inv, const char *phone);
/* Phone at `index` in table order; NULL when out of range. */
IPAKIT_API const char *ipakit_inventory_phone(const ipakit_inventory *inv, size_t index);
IPAKIT_API ipakit_status ipakit_inventory_features(const ipakit_inventory *inv, const char *phone,
                                                   int8_t out[IPAKIT_FEATURE_COUNT]);
IPAKIT_API ipakit_status ipakit_feature_cost(const ipakit_inventory *inv, const char *a, const char *b,
                                             double *out);

/* Segmentation. */
IPAKIT_API ipakit_status ipakit_normalize(const char *text, int keep_length, int strip_tone, char **out);
IPAKIT_API ipakit_status ipakit_segment(const ipakit_inventory *inv, const char *text, int strict,
                                        ipakit_segmentation **out);
IPAKIT_API void ipakit_segmentation_free(ipakit_segmentation *seg);
/* Phones and residue in input order. */
IPAKIT_API size_t ipakit_segmentation_count(const ipakit_segmentation *seg);
IPAKIT_API const char *ipakit_segmentation_token(const ipakit_segmentation *seg, size_t index);
IPAKIT_API int ipakit_segmentation_is_residue(const ipakit_segmentation *seg, size_t index);
IPAKIT_API size_t ipakit_segmentation_residue_count(const ipakit_segmentation *seg);

/* Metrics over phone arrays. */
IPAKIT_API ipakit_status ipakit_per(const char *const *ref, size_t ref_len, const char *const *hyp,
                                    size_t hyp_len, double *out);
IPAKIT_API ipakit_status ipakit_pfer(const ipakit_inventory *inv, const char *const *ref, size_t ref_len,
                                     const char *const *hyp, size_t hyp_len, double *out);
IPAKIT_API ipakit_status ipakit_cer(const char *ref, const char *hyp, double *out);

/* G2P. */
IPAKIT_API ipakit_status ipakit_ruleset_load(const char *path, const char *locale, ipakit_ruleset **out);
IPAKIT_API ipakit_status ipakit_ruleset_parse(const char *source, const char *locale, ipakit_ruleset **out);
IPAKIT_API void ipakit_ruleset_free(ipakit_ruleset *rs);
IPAKIT_API ipakit_status ipakit_transliterate(const ipakit_ruleset *rs, const char *text, int strict,
                                              char **out);
/* Newline-separated locales with a pack in `rules_dir`. */
IPAKIT_API ipakit_status ipakit_g2p_locales(const char *rules_dir, char **out);
/* Checks the pack against a `word<TAB>ipa` lexicon. `jsonl` gets one record per
 * problem; `failures` counts words that mismatch or fail to segment. */
IPAKIT_API ipakit_status ipakit_validate_ruleset(const ipakit_ruleset *rs, const ipakit_inventory *inv,
                                                 const char *lexicon_path, char **jsonl, size_t *failures);

/* Reports. `table` and `jsonl` may be NULL when not wanted. */
IPAKIT_API ipakit_status ipakit_eval_files(const ipakit_inventory *inv, const char *ref_path,
                                           const char *hyp_path, int strict, const char *kind, char **table,
                                           char **jsonl);
IPAKIT_API ipakit_status ipakit_check_published(const char *scores_path, char **table, char **jsonl,
                                                size_t *mismatches);
IPAKIT_API ipakit_status ipakit_prepare(const char *config_path, const char *data_dir,
                                        const char *const *override_keys, const char *const *override_values,
                                        size_t override_count, const char *out_dir, char **table, char **jsonl,
                                        size_t *hard_errors);
IPAKIT_API ipakit_status ipakit_ablate(const char *matrix_path, const char *data_dir,
                                       const char *const *override_keys, const char *const *override_values,
                                       size_t override_count, const char *out_dir, char **table, char **jsonl,
                                       size_t *failed_cells);

/* Audio. */
IPAKIT_API ipakit_status ipakit_probe_wav(const char *path, double *seconds);
IPAKIT_API ipakit_status ipakit_resample_wav(const char *in_path, const char *out_path, int target_rate);

#ifdef __cplusplus
}
#endif

#endif /* IPAKIT_IPAKIT_H_ */
