#ifndef POLARCH_H
#define POLARCH_H

/* Generated by cbindgen from the polarch-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a C API call.
 */
typedef enum PolarchStatus {
  POLARCH_STATUS_OK = 0,
  /**
   * Malformed spec, pattern, JSON or numeric string.
   */
  POLARCH_STATUS_PARSE_ERROR = 1,
  /**
   * Arguments outside the supported domain (order, dimension, ...).
   */
  POLARCH_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The channel has no canonical switch form.
   */
  POLARCH_STATUS_NOT_SYMMETRIC = 3,
  /**
   * The request is outside the explicit-construction budget.
   */
  POLARCH_STATUS_UNSUPPORTED = 4,
  /**
   * A null pointer or an internal failure.
   */
  POLARCH_STATUS_INTERNAL = 5,
} PolarchStatus;

/**
 * Opaque handle to a symmetric channel in canonical switch form.
 */
typedef struct PolarchChannel PolarchChannel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a caller-owned string.
 */
char *polarch_version(void);

/**
 * Last error message of the current thread (empty when the last call
 * succeeded); caller-owned.
 */
char *polarch_last_error_message(void);

/**
 * Releases a string returned by this library. Null is a no-op.
 */
void polarch_string_free(char *s);

/**
 * Parses a channel spec into a handle. Matrix-backed specs must describe a
 * symmetric channel.
 */
enum PolarchStatus polarch_channel_parse(const char *spec, struct PolarchChannel **out);

/**
 * Releases a channel handle. Null is a no-op.
 */
void polarch_channel_free(struct PolarchChannel *ch);

/**
 * Canonical switch form as a JSON mixture object (caller-owned string).
 */
enum PolarchStatus polarch_channel_to_json(const struct PolarchChannel *ch, char **out);

/**
 * Number of sub-channels in the canonical switch.
 */
size_t polarch_channel_part_count(const struct PolarchChannel *ch);

/**
 * Reliability functionals: capacity and Bhattacharyya parameter as
 * doubles, the exact error probability as a caller-owned fraction string.
 * Any output pointer may be null to skip that value.
 */
enum PolarchStatus polarch_channel_metrics(const struct PolarchChannel *ch,
                                           double *capacity,
                                           char **error_prob,
                                           double *bhattacharyya);

/**
 * Applies a transform pattern (a bit string such as "0110", leftmost bit
 * first) and returns the synthesized channel as a new handle.
 */
enum PolarchStatus polarch_transform(const struct PolarchChannel *ch,
                                     const char *pattern,
                                     struct PolarchChannel **out);

/**
 * Synthesizes all `2^order` channels and returns the reliability table as
 * CSV (columns `alpha,b_alpha,capacity,error_prob,bhattacharyya,phi`).
 * `max_parts` of 0 means unlimited.
 */
enum PolarchStatus polarch_construct_csv(const struct PolarchChannel *ch,
                                         uint32_t order,
                                         size_t max_parts,
                                         char **out);

/**
 * Information/frozen split for the given dimension, as JSON.
 */
enum PolarchStatus polarch_frozen_json(const struct PolarchChannel *ch,
                                       uint32_t order,
                                       size_t dimension,
                                       char **out);

/**
 * Monte-Carlo encode/transmit/decode outcome as JSON
 * (`{"trials":..,"frame_errors":..,"per_index":[..]}`).
 */
enum PolarchStatus polarch_simulate_json(const struct PolarchChannel *ch,
                                         uint32_t order,
                                         size_t dimension,
                                         uint64_t trials,
                                         uint64_t seed,
                                         bool genie,
                                         char **out);

/**
 * Exact erasure probability of the pattern transform of an erasure
 * channel, as a fraction string: the composed erasure map applied to `q`.
 */
enum PolarchStatus polarch_bec_erasure(const char *q, const char *pattern, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* POLARCH_H */
