#ifndef FUSIONSCAN_H
#define FUSIONSCAN_H

/* Generated from the Rust sources by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible FFI call.
 */
typedef enum FsStatus {
  /**
   * The call succeeded and the out parameters are valid.
   */
  FS_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  FS_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  FS_STATUS_INVALID_UTF8 = 2,
  /**
   * A signature failed to parse.
   */
  FS_STATUS_PARSE_ERROR = 3,
  /**
   * Arguments were structurally valid but unusable (for example the
   * dimension-90 rule requested for another dimension).
   */
  FS_STATUS_USAGE_ERROR = 4,
  /**
   * A panic was caught at the boundary; this is a bug.
   */
  FS_STATUS_INTERNAL_ERROR = 5,
} FsStatus;

/**
 * Opaque parsed type signature.
 */
typedef struct FsSignature FsSignature;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The crate version as a static NUL-terminated string. Do not free.
 */
const char *fs_version(void);

/**
 * The last error message recorded on this thread, or NULL if none.
 * Borrowed; valid until the next failing call on the same thread.
 */
const char *fs_last_error_message(void);

/**
 * Parses a type signature like `"(1,2;2,2;4,5)"` into a handle.
 *
 * # Safety
 * `text` must be NULL or NUL-terminated; `out` must be a valid pointer.
 */
enum FsStatus fs_signature_parse(const char *text, struct FsSignature **out);

/**
 * Releases a handle from [`fs_signature_parse`]. NULL is a no-op.
 *
 * # Safety
 * `sig` must be NULL or a pointer previously returned by
 * [`fs_signature_parse`] that has not been freed yet.
 */
void fs_signature_free(struct FsSignature *sig);

/**
 * Renders a signature in canonical tuple notation.
 *
 * # Safety
 * `sig` must be a live handle; `out` must be a valid pointer. The
 * returned string is owned by the caller (see [`fs_string_free`]).
 */
enum FsStatus fs_signature_render(const struct FsSignature *sig, char **out);

/**
 * The global (Frobenius-Perron) dimension of a signature.
 *
 * # Safety
 * `sig` must be a live handle; `out` must be a valid pointer.
 */
enum FsStatus fs_signature_global_dim(const struct FsSignature *sig, uint64_t *out);

/**
 * Whether every dimension of the signature divides `fpdim`. Fails with
 * `FS_STATUS_USAGE_ERROR` when `fpdim` is not the signature's global
 * dimension.
 *
 * # Safety
 * `sig` must be a live handle; `out` must be a valid pointer.
 */
enum FsStatus fs_signature_is_frobenius(const struct FsSignature *sig, uint64_t fpdim, bool *out);

/**
 * The number of candidate type signatures of the given global dimension.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum FsStatus fs_enumerate_count(uint64_t fpdim, uint64_t *out);

/**
 * Runs the arithmetic exclusion rules over every candidate of `fpdim`
 * and returns the full filter report as a JSON document.
 *
 * # Safety
 * `out` must be a valid pointer; the returned string is owned by the
 * caller (see [`fs_string_free`]).
 */
enum FsStatus fs_filter_json(uint64_t fpdim, bool enable_cor90_6, char **out);

/**
 * Decides feasibility of one signature and returns the outcome record
 * (status, node count, exhaustiveness, model if found) as JSON.
 *
 * # Safety
 * `text` must be NULL or NUL-terminated; `out` must be a valid pointer;
 * the returned string is owned by the caller (see [`fs_string_free`]).
 */
enum FsStatus fs_solve_json(const char *text, uint64_t budget, bool symmetry_breaking, char **out);

/**
 * Runs the full pipeline for one global dimension and returns the
 * classification report as JSON.
 *
 * # Safety
 * `out` must be a valid pointer; the returned string is owned by the
 * caller (see [`fs_string_free`]).
 */
enum FsStatus fs_classify_json(uint64_t fpdim,
                               bool enable_cor90_6,
                               bool solve_all,
                               uint64_t budget,
                               char **out);

/**
 * Releases a string returned through an `out` parameter. NULL is a
 * no-op.
 *
 * # Safety
 * `text` must be NULL or a pointer previously returned by this library
 * that has not been freed yet.
 */
void fs_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUSIONSCAN_H */
