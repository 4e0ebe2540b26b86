#ifndef CLARKKIT_H
#define CLARKKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ClarkkitMode {
  CLARKKIT_MODE_POLYNOMIAL = 0,
  CLARKKIT_MODE_DISTANCE = 1,
} ClarkkitMode;

typedef enum ClarkkitStatus {
  CLARKKIT_STATUS_OK = 0,
  CLARKKIT_STATUS_NULL_ARGUMENT = 1,
  CLARKKIT_STATUS_INVALID_UTF8 = 2,
  CLARKKIT_STATUS_PARSE_ERROR = 3,
  CLARKKIT_STATUS_INVALID_INPUT = 4,
  CLARKKIT_STATUS_NUMERICAL_ERROR = 5,
  CLARKKIT_STATUS_IO_ERROR = 6,
  CLARKKIT_STATUS_PANIC = 7,
} ClarkkitStatus;

typedef enum ClarkkitVerdictKind {
  CLARKKIT_VERDICT_KIND_FINITE = 0,
  CLARKKIT_VERDICT_KIND_DIVERGENT = 1,
  CLARKKIT_VERDICT_KIND_UNDETERMINED = 2,
} ClarkkitVerdictKind;

/**
 * Opaque self-map of the disc.
 */
typedef struct ClarkkitMap ClarkkitMap;

/**
 * Opaque boundary set.
 */
typedef struct ClarkkitSet ClarkkitSet;

/**
 * Outcome of `clarkkit_detect`. `value` and `julia_limit` are NaN when absent.
 */
typedef struct ClarkkitVerdict {
  enum ClarkkitVerdictKind kind;
  double value;
  double julia_limit;
} ClarkkitVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *clarkkit_last_error(void);

/**
 * Library version as a static string.
 */
const char *clarkkit_version(void);

/**
 * Parses a boundary-set JSON document.
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
enum ClarkkitStatus clarkkit_set_from_json(const char *json, struct ClarkkitSet **out_set);

/**
 * Beurling-Carleson entropy of the set.
 *
 * # Safety
 * `set` must come from `clarkkit_set_from_json`; `out_entropy` must be valid.
 */
enum ClarkkitStatus clarkkit_set_entropy(const struct ClarkkitSet *set, double *out_entropy);

/**
 * Number of distinct points in the set.
 *
 * # Safety
 * `set` must be a live handle; `out_count` must be valid.
 */
enum ClarkkitStatus clarkkit_set_point_count(const struct ClarkkitSet *set, size_t *out_count);

/**
 * # Safety
 * `set` must be null or a handle not yet freed.
 */
void clarkkit_set_free(struct ClarkkitSet *set);

/**
 * Parses a map JSON document. Relative grid paths resolve against
 * `base_dir`, or the working directory when it is null.
 *
 * # Safety
 * `json` must be a valid C string, `base_dir` null or a valid C string.
 */
enum ClarkkitStatus clarkkit_map_from_json(const char *json,
                                           const char *base_dir,
                                           struct ClarkkitMap **out_map);

/**
 * Builds the self-map whose angular-derivative set is the given finite set.
 *
 * # Safety
 * `set` must be a live handle and `out_map` a valid pointer.
 */
enum ClarkkitStatus clarkkit_map_construct(const struct ClarkkitSet *set,
                                           enum ClarkkitMode mode,
                                           uint32_t grid_log2,
                                           struct ClarkkitMap **out_map);

/**
 * Evaluates the map on the closed disc.
 *
 * # Safety
 * `map` must be a live handle; the output pointers must be valid.
 */
enum ClarkkitStatus clarkkit_map_eval(const struct ClarkkitMap *map,
                                      double re,
                                      double im,
                                      double *out_re,
                                      double *out_im);

/**
 * # Safety
 * `map` must be null or a handle not yet freed.
 */
void clarkkit_map_free(struct ClarkkitMap *map);

/**
 * Angular-derivative verdict at the turn `lambda_num / lambda_den`, with
 * `alpha = 1` and `depth` dyadic annuli.
 *
 * # Safety
 * `map` must be a live handle and `out_verdict` a valid pointer.
 */
enum ClarkkitStatus clarkkit_detect(const struct ClarkkitMap *map,
                                    int64_t lambda_num,
                                    int64_t lambda_den,
                                    uint32_t depth,
                                    struct ClarkkitVerdict *out_verdict);

/**
 * Runs the full verification for the set and returns the JSON report in
 * `out_json` (free with `clarkkit_string_free`) and the exit-code triage
 * (0 pass, 2 inconclusive, 1 fail) in `out_exit`. Probes are offset by
 * `1 / offset_den` turns from each point.
 *
 * # Safety
 * `set` must be a live handle; output pointers must be valid.
 */
enum ClarkkitStatus clarkkit_verify_json(const struct ClarkkitSet *set,
                                         enum ClarkkitMode mode,
                                         uint32_t grid_log2,
                                         uint32_t depth,
                                         int64_t offset_den,
                                         char **out_json,
                                         int32_t *out_exit);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void clarkkit_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLARKKIT_H */
