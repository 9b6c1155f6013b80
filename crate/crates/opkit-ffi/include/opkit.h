#ifndef OPKIT_H
#define OPKIT_H

/* Generated by cbindgen from opkit-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum OpkitStatus {
  // Success.
  OPKIT_STATUS_OK = 0,
  // A required pointer argument was null.
  OPKIT_STATUS_NULL_ARGUMENT = 1,
  // Dimensions were zero, inconsistent, or overflowed.
  OPKIT_STATUS_INVALID_DIMENSIONS = 2,
  // The underlying computation refused the input or failed; see
  // `opkit_last_error`.
  OPKIT_STATUS_COMPUTE_ERROR = 3,
  // A string argument was not valid UTF-8.
  OPKIT_STATUS_INVALID_UTF8 = 4,
  // A verification suite ran to completion but some check failed.
  OPKIT_STATUS_VERIFICATION_FAILED = 5,
} OpkitStatus;

// Opaque dense complex matrix handle.
typedef struct OpkitMatrix OpkitMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the message for the most recent failure on this thread into `buf`
// (NUL-terminated, truncated to `cap` bytes) and returns the full message
// length in bytes, excluding the terminator. `buf` may be null to query the
// length alone.
//
// # Safety
// `buf`, when non-null, must point to `cap` writable bytes.
size_t opkit_last_error(char *buf, size_t cap);

// Returns the library version as a static NUL-terminated string.
const char *opkit_version(void);

// Creates a `rows`×`cols` matrix from row-major entry arrays. `im` may be
// null for a real matrix. Returns null (with the error recorded) on bad
// arguments.
//
// # Safety
// `re` (and `im` when non-null) must point to `rows * cols` readable f64s.
struct OpkitMatrix *opkit_matrix_new(size_t rows, size_t cols, const double *re, const double *im);

// Releases a handle. Null is a no-op.
//
// # Safety
// `h` must be null or a handle from this library not yet freed.
void opkit_matrix_free(struct OpkitMatrix *h);

// Row count of the matrix behind `h`, or 0 for null.
//
// # Safety
// `h` must be null or a live handle.
size_t opkit_matrix_rows(const struct OpkitMatrix *h);

// Column count of the matrix behind `h`, or 0 for null.
//
// # Safety
// `h` must be null or a live handle.
size_t opkit_matrix_cols(const struct OpkitMatrix *h);

// Copies the entries of `h` into row-major `re`/`im` arrays. Either output
// may be null to skip that part.
//
// # Safety
// Non-null outputs must point to `rows * cols` writable f64s.
enum OpkitStatus opkit_matrix_copy_data(const struct OpkitMatrix *h, double *re, double *im);

// Reads a matrix from a Matrix Market (`.mtx`) or JSON file, detecting the
// format from the extension. Returns null on failure.
//
// # Safety
// `path` must be a NUL-terminated string.
struct OpkitMatrix *opkit_matrix_read(const char *path);

// Writes the matrix behind `h` to `path`, detecting the format from the
// extension.
//
// # Safety
// `h` must be a live handle; `path` a NUL-terminated string.
enum OpkitStatus opkit_matrix_write(const struct OpkitMatrix *h, const char *path);

// Polar decomposition T = U |T| = |T*| U. Any of the three outputs may be
// null to skip it. `rank_tol` = 0 selects the default numerical-rank
// threshold.
//
// # Safety
// `t` must be a live handle; non-null outputs must be writable pointer
// slots. Each returned handle must be freed with `opkit_matrix_free`.
enum OpkitStatus opkit_polar(const struct OpkitMatrix *t,
                             double rank_tol,
                             struct OpkitMatrix **u,
                             struct OpkitMatrix **abs_t,
                             struct OpkitMatrix **abs_t_star);

// Fractional power A^alpha of an accretive matrix, alpha in (0, 1].
//
// # Safety
// `a` must be a live handle; `out` a writable pointer slot. The returned
// handle must be freed with `opkit_matrix_free`.
enum OpkitStatus opkit_frac_power(const struct OpkitMatrix *a,
                                  double alpha,
                                  struct OpkitMatrix **out);

// Spectral projection E(lambda) of a Hermitian matrix onto eigenvalues
// <= lambda, computed by resolvent quadrature at relative tolerance
// `rel_tol` (pass 0 for the default).
//
// # Safety
// `h` must be a live handle; `out` a writable pointer slot. The returned
// handle must be freed with `opkit_matrix_free`.
enum OpkitStatus opkit_spectral_projection(const struct OpkitMatrix *h,
                                           double lambda,
                                           double rel_tol,
                                           struct OpkitMatrix **out);

// Sectorial factorization A = A_R^{1/2} (I + iX) A_R^{1/2}. Either output
// may be null to skip it. `rank_tol` = 0 selects the default numerical-rank
// threshold for the Hermitian-part square root.
//
// # Safety
// `a` must be a live handle; non-null outputs must be writable pointer
// slots. Each returned handle must be freed with `opkit_matrix_free`.
enum OpkitStatus opkit_kato_factor(const struct OpkitMatrix *a,
                                   double rank_tol,
                                   struct OpkitMatrix **a_r,
                                   struct OpkitMatrix **x);

// Numerical-range sectoriality test: writes the semi-angle (radians) to
// `theta` and whether the matrix is sectorial with vertex 0 to `sectorial`
// (either may be null).
//
// # Safety
// `a` must be a live handle; non-null outputs must be writable.
enum OpkitStatus opkit_sectorial_semi_angle(const struct OpkitMatrix *a,
                                            double *theta,
                                            bool *sectorial);

// Runs one named verification suite (see the CLI's `verify --suite` values)
// with the given seed. Returns `Ok` when every check passes,
// `VerificationFailed` when the suite ran but a check failed.
//
// # Safety
// `name` must be a NUL-terminated string.
enum OpkitStatus opkit_verify_suite(const char *name, uint64_t seed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OPKIT_H */
