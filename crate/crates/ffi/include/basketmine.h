#ifndef BASKETMINE_H
#define BASKETMINE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Run the association analysis in `bm_analyze`.
 */
#define BM_ANALYSIS_ASSOCIATION 1

/**
 * Run the rule-induction analysis in `bm_analyze`.
 */
#define BM_ANALYSIS_INDUCTION 2

/**
 * Run Apriori in `bm_analyze`.
 */
#define BM_ANALYSIS_APRIORI 4

typedef enum {
  BM_STATUS_OK = 0,
  BM_STATUS_NULL_ARGUMENT = 1,
  BM_STATUS_INVALID_UTF8 = 2,
  BM_STATUS_PARSE = 3,
  BM_STATUS_UNKNOWN_ITEM = 4,
  BM_STATUS_CONFIG = 5,
  BM_STATUS_UNDEFINED = 6,
  BM_STATUS_IO = 7,
  BM_STATUS_PANIC = 8,
} BmStatus;

typedef enum {
  BM_APRIORI_MODE_THRESHOLD = 0,
  BM_APRIORI_MODE_LOWEST_COUNT = 1,
} BmAprioriMode;

typedef enum {
  BM_QUADRANT_HIGH_ACC_HIGH_COV = 0,
  BM_QUADRANT_HIGH_ACC_LOW_COV = 1,
  BM_QUADRANT_LOW_ACC_HIGH_COV = 2,
  BM_QUADRANT_LOW_ACC_LOW_COV = 3,
} BmQuadrant;

typedef enum {
  BM_FORMAT_TEXT = 0,
  BM_FORMAT_STRUCTURED = 1,
  BM_FORMAT_DELIMITED = 2,
} BmFormat;

/**
 * Opaque transaction database.
 */
typedef struct BmDatabase BmDatabase;

/**
 * An exact ratio of two counts.
 */
typedef struct {
  uint64_t numerator;
  uint64_t denominator;
} BmFraction;

typedef struct {
  BmFraction min_support;
  BmFraction min_confidence;
  BmFraction min_accuracy;
  BmFraction min_coverage;
  BmAprioriMode apriori_mode;
  uint32_t display_precision;
  bool both_directions;
  uint32_t workers;
} BmConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The
 * pointer stays valid until the next `bm_*` call on the same thread.
 */
const char *bm_last_error(void);

/**
 * Fills `out` with the default thresholds (50% support, 70% confidence,
 * 50% accuracy, 70% coverage) and lowest-count Apriori.
 */
BmStatus bm_config_default(BmConfig *out);

/**
 * Parses transaction text. `aliases` holds extra `alias,canonical` lines
 * and may be null.
 */
BmStatus bm_database_parse(const char *text, const char *aliases, BmDatabase **out);

/**
 * Reads a transaction file. `aliases_path` may be null.
 */
BmStatus bm_database_read(const char *path, const char *aliases_path, BmDatabase **out);

/**
 * Releases a database handle. Null is ignored.
 */
void bm_database_free(BmDatabase *db);

BmStatus bm_database_total(const BmDatabase *db, uint64_t *out);

/**
 * Number of distinct canonical items.
 */
BmStatus bm_database_item_count(const BmDatabase *db, size_t *out);

/**
 * Transactions containing every comma-separated item in `items`. An empty
 * string is the empty itemset.
 */
BmStatus bm_count_support(const BmDatabase *db, const char *items, uint64_t *out);

/**
 * Confidence of `antecedent -> consequent`, both comma-separated item lists.
 */
BmStatus bm_confidence(const BmDatabase *db,
                       const char *antecedent,
                       const char *consequent,
                       BmFraction *out);

BmStatus bm_classify_quadrant(BmFraction accuracy,
                              BmFraction coverage,
                              const BmConfig *config,
                              BmQuadrant *out);

/**
 * The 0/1 matrix as comma-separated text. `items` may be null for every
 * catalog item. Free the result with `bm_string_free`.
 */
BmStatus bm_encode_matrix(const BmDatabase *db, const char *items, char **out);

/**
 * Runs the analyses selected by `analyses` (a mask of `BM_ANALYSIS_*`) and
 * renders the report without a timestamp. `items` may be null for every
 * catalog item. Free the result with `bm_string_free`.
 */
BmStatus bm_analyze(const BmDatabase *db,
                    const char *items,
                    const BmConfig *config,
                    uint32_t analyses,
                    BmFormat format,
                    char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void bm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BASKETMINE_H */
