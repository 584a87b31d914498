/* C interface to fplab: Hilbert functions and graded Betti numbers of fat-point schemes on line configurations in the projective plane. */

#ifndef FPLAB_H
#define FPLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Which concrete realization [`fplab_oracle_double_delta_h`] builds.
enum FplabConfigKind
#ifdef __cplusplus
  : uint32_t
#endif // __cplusplus
 {
  // Rows stacked left-aligned on horizontal lines.
  FPLAB_CONFIG_KIND_STANDARD = 0,
  // Rows aligned so the diagonal points are collinear.
  FPLAB_CONFIG_KIND_SPREAD_OUT = 1,
  // Horizontal lines with pseudo-random abscissas (uses `seed`).
  FPLAB_CONFIG_KIND_GENERIC = 2,
};
#ifndef __cplusplus
typedef uint32_t FplabConfigKind;
#endif // __cplusplus

// Result of every call in this interface.
enum FplabStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  // The call succeeded.
  FPLAB_STATUS_OK = 0,
  // A required pointer argument was null.
  FPLAB_STATUS_NULL_ARGUMENT = 1,
  // The input vector is malformed (empty, unordered, zero entry, ...).
  FPLAB_STATUS_INVALID_INPUT = 2,
  // The requested quantity is not determined by the type vector.
  FPLAB_STATUS_NOT_UNIQUE = 3,
  // The output buffer is too small; `written` holds the needed length.
  FPLAB_STATUS_BUFFER_TOO_SMALL = 4,
  // The oracle computation failed; see `fplab_last_error_message`.
  FPLAB_STATUS_ORACLE_ERROR = 5,
  // An internal panic was caught at the boundary.
  FPLAB_STATUS_PANIC = 6,
};
#ifndef __cplusplus
typedef int32_t FplabStatus;
#endif // __cplusplus

// Opaque classification of the double scheme over a type vector.
typedef struct FplabClassification FplabClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Version of the underlying library, as a static NUL-terminated string.
const char *fplab_version(void);

// Message for the most recent failure on this thread, NUL-terminated.
// Valid until the next call into this library from the same thread.
// Never null; empty string when no failure has been recorded.
const char *fplab_last_error_message(void);

// First difference of the standard O-sequence of a pseudo type vector
// (`entries` weakly increasing, no value three times).
FplabStatus fplab_standard_osequence(const uint32_t *entries,
                                     size_t len,
                                     uint32_t *buf,
                                     size_t cap,
                                     size_t *written);

// Classifies the double scheme over a strictly increasing type vector.
// On success `*out` owns a handle that must be released with
// [`fplab_classification_free`].
FplabStatus fplab_classify_double(const uint32_t *entries,
                                  size_t len,
                                  struct FplabClassification **out);

// Releases a classification handle.  Null is a no-op.
void fplab_classification_free(struct FplabClassification *handle);

// Whether every configuration of this type gives the double scheme the
// same Hilbert function.
FplabStatus fplab_classification_hf_unique(const struct FplabClassification *handle, bool *out);

// Whether the graded Betti numbers are forced as well.
FplabStatus fplab_classification_betti_unique(const struct FplabClassification *handle, bool *out);

// Castelnuovo-Mumford regularity of the double scheme (twice the
// largest entry; independent of the configuration).
FplabStatus fplab_classification_regularity(const struct FplabClassification *handle,
                                            uint32_t *out);

// Number of minimal generators; `FPLAB_STATUS_NOT_UNIQUE` when the
// Betti numbers vary with the configuration.
FplabStatus fplab_classification_min_generators(const struct FplabClassification *handle,
                                                uint32_t *out);

// First difference of the predicted Hilbert function (the standard
// O-sequence value; the forced one exactly when `hf_unique`).
FplabStatus fplab_classification_delta_h(const struct FplabClassification *handle,
                                         uint32_t *buf,
                                         size_t cap,
                                         size_t *written);

// The forced Betti table: generator degrees into `gen_buf`, syzygy
// degrees into `syz_buf`.  `FPLAB_STATUS_NOT_UNIQUE` when the table is
// not determined by the type.
FplabStatus fplab_classification_betti(const struct FplabClassification *handle,
                                       uint32_t *gen_buf,
                                       size_t gen_cap,
                                       size_t *gen_written,
                                       uint32_t *syz_buf,
                                       size_t syz_cap,
                                       size_t *syz_written);

// Builds a configuration of the given type, doubles every point, and
// computes the difference Hilbert function with the rank oracle
// (exact rational arithmetic when `exact`, randomized modular
// otherwise).  This is the expensive call of the interface.
FplabStatus fplab_oracle_double_delta_h(const uint32_t *entries,
                                        size_t len,
                                        FplabConfigKind kind,
                                        uint64_t seed,
                                        bool exact,
                                        uint32_t *buf,
                                        size_t cap,
                                        size_t *written);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FPLAB_H */
