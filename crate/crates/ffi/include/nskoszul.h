#ifndef NSKOSZUL_H
#define NSKOSZUL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NskStatus {
  NSK_STATUS_OK = 0,
  NSK_STATUS_NULL_POINTER = 1,
  NSK_STATUS_INVALID_UTF8 = 2,
  NSK_STATUS_PARSE = 3,
  NSK_STATUS_INVALID_ARGUMENT = 4,
  NSK_STATUS_INTERNAL = 5,
  NSK_STATUS_PANIC = 6,
} NskStatus;

typedef enum NskVerdict {
  NSK_VERDICT_TRUE = 0,
  NSK_VERDICT_FALSE = 1,
  NSK_VERDICT_INCONCLUSIVE = 2,
} NskVerdict;

typedef enum NskVerdictKind {
  NSK_VERDICT_KIND_LIN_ACYCLIC = 0,
  NSK_VERDICT_KIND_GR_LINEAR = 1,
  NSK_VERDICT_KIND_CONSTRUCTION_MATCH = 2,
} NskVerdictKind;

// Opaque Koszulness report handle.
typedef struct NskReport NskReport;

// Opaque ring handle.
typedef struct NskRing NskRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread, or null. The pointer
// stays valid until the next call into this library on the same thread.
const char *nsk_last_error(void);

// Parses a ring such as `x=1,y=3@32003`.
//
// # Safety
// `spec` must be a nul-terminated string and `out` a valid pointer.
enum NskStatus nsk_ring_parse(const char *spec, struct NskRing **out);

// # Safety
// `ring` must come from [`nsk_ring_parse`] and not be used afterwards.
void nsk_ring_free(struct NskRing *ring);

// Number of variables, or 0 for a null handle.
//
// # Safety
// `ring` must be null or a live handle.
uintptr_t nsk_ring_num_vars(const struct NskRing *ring);

// Runs the Koszulness tests on the truncation at `e`. A negative `bound`
// selects the default bound.
//
// # Safety
// `ring` must be a live handle and `out` a valid pointer.
enum NskStatus nsk_koszul_verdict(const struct NskRing *ring,
                                  int64_t e,
                                  int64_t bound,
                                  struct NskReport **out);

// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum NskStatus nsk_report_verdict(const struct NskReport *report,
                                  enum NskVerdictKind kind,
                                  enum NskVerdict *out);

// The report in the command-line tool's JSON schema.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer; free the result
// with [`nsk_string_free`].
enum NskStatus nsk_report_to_json(const struct NskReport *report, bool with_trace, char **out);

// # Safety
// `report` must come from [`nsk_koszul_verdict`] and not be used afterwards.
void nsk_report_free(struct NskReport *report);

// Predicted gr Betti table as a JSON array of `{"i","j","rank"}`.
//
// # Safety
// `weights` must point to `len` values and `out` be a valid pointer.
enum NskStatus nsk_construct_gr_betti(const uint32_t *weights,
                                      uintptr_t len,
                                      int64_t e,
                                      char **out);

// Minimal generators of the truncation at `e` as a JSON array of exponent vectors.
//
// # Safety
// `ring` must be a live handle and `out` a valid pointer.
enum NskStatus nsk_trunc_gens_json(const struct NskRing *ring, int64_t e, char **out);

// # Safety
// `s` must be null or a string returned by this library.
void nsk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NSKOSZUL_H */
