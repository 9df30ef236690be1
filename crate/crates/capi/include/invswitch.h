/* C interface for the invswitch library. */

#ifndef INVSWITCH_H
#define INVSWITCH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum InvswitchStatus {
  InvswitchStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  InvswitchStatus_NullPointer = 1,
  /**
   * Arguments were structurally invalid (bad degree, bad name, bad set, ...).
   */
  InvswitchStatus_InvalidArgument = 2,
  /**
   * A provided buffer was too small.
   */
  InvswitchStatus_BufferTooSmall = 3,
  /**
   * An internal consistency check failed; this indicates a bug.
   */
  InvswitchStatus_InternalError = 4,
} InvswitchStatus;

/**
 * An immutable field handle (shared by the functions built over it).
 */
typedef struct InvswitchField InvswitchField;

/**
 * An immutable (n,n)-function handle.
 */
typedef struct InvswitchFunc InvswitchFunc;

/**
 * Cryptographic profile of a function. When the differential uniformity is
 * at most 4, `spectrum_is_triple` is true and the three counts describe the
 * full spectrum.
 */
typedef struct InvswitchProfile {
  uint32_t nonlinearity;
  uint32_t differential_uniformity;
  uint32_t algebraic_degree;
  bool spectrum_is_triple;
  uint64_t count_delta0;
  uint64_t count_delta2;
  uint64_t count_delta4;
} InvswitchProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates the built-in field of degree n (Conway polynomial, xi = x).
 *
 * # Safety
 * `out` must be a valid pointer. On success it receives a handle that must
 * be released with [`invswitch_field_free`].
 */
enum InvswitchStatus invswitch_field_new(uint32_t n, struct InvswitchField **out);

/**
 * Creates a field from an explicit reduction polynomial and primitive
 * element (coordinate bitmasks, bit i = coefficient of x^i).
 *
 * # Safety
 * Same contract as [`invswitch_field_new`].
 */
enum InvswitchStatus invswitch_field_new_custom(uint32_t n,
                                                uint32_t poly,
                                                uint32_t xi,
                                                struct InvswitchField **out);

/**
 * Releases a field handle. Passing null is a no-op.
 *
 * # Safety
 * `field` must be null or a handle previously returned by a constructor and
 * not yet freed.
 */
void invswitch_field_free(struct InvswitchField *field);

/**
 * Field degree n, or 0 for a null handle.
 *
 * # Safety
 * `field` must be null or a live field handle.
 */
uint32_t invswitch_field_degree(const struct InvswitchField *field);

/**
 * Reduction polynomial bitmask, or 0 for a null handle.
 *
 * # Safety
 * `field` must be null or a live field handle.
 */
uint32_t invswitch_field_poly(const struct InvswitchField *field);

/**
 * Builds a named function: "G1", "G2", "G3", "GM", "F1", "F2", "F3", or
 * "inverse" for the multiplicative inverse function.
 *
 * # Safety
 * `field` must be a live field handle, `name` a NUL-terminated string, and
 * `out` a valid pointer; the returned handle must be released with
 * [`invswitch_func_free`].
 */
enum InvswitchStatus invswitch_func_named(const struct InvswitchField *field,
                                          const char *name,
                                          struct InvswitchFunc **out);

/**
 * Builds G(x) = x^-1 + delta_U(x) from a V given as xi-exponents (the set
 * must satisfy the trace conditions and be closed under x -> x/(x+1)).
 *
 * # Safety
 * `field` must be a live field handle, `exponents` must point to `len`
 * readable u32 values (null only if `len` is 0), and `out` must be valid.
 */
enum InvswitchStatus invswitch_func_from_v_exponents(const struct InvswitchField *field,
                                                     const uint32_t *exponents,
                                                     size_t len,
                                                     struct InvswitchFunc **out);

/**
 * Wraps an explicit lookup table of 2^n entries (index = input bits).
 *
 * # Safety
 * `field` must be a live field handle, `table` must point to `len` readable
 * u32 values, and `out` must be valid.
 */
enum InvswitchStatus invswitch_func_from_table(const struct InvswitchField *field,
                                               const uint32_t *table,
                                               size_t len,
                                               struct InvswitchFunc **out);

/**
 * Releases a function handle. Passing null is a no-op.
 *
 * # Safety
 * `func` must be null or a handle previously returned by a constructor and
 * not yet freed.
 */
void invswitch_func_free(struct InvswitchFunc *func);

/**
 * Table length (2^n), or 0 for a null handle.
 *
 * # Safety
 * `func` must be null or a live function handle.
 */
size_t invswitch_func_table_len(const struct InvswitchFunc *func);

/**
 * Evaluates the function at input bits x (must be < 2^n).
 *
 * # Safety
 * `func` must be a live function handle and `out` a valid pointer.
 */
enum InvswitchStatus invswitch_func_eval(const struct InvswitchFunc *func,
                                         uint32_t x,
                                         uint32_t *out);

/**
 * Copies the full lookup table into `buf` (capacity `len` entries).
 *
 * # Safety
 * `func` must be a live function handle and `buf` must point to `len`
 * writable u32 slots.
 */
enum InvswitchStatus invswitch_func_copy_table(const struct InvswitchFunc *func,
                                               uint32_t *buf,
                                               size_t len);

/**
 * 1 if the function is a permutation, 0 otherwise (or for a null handle).
 *
 * # Safety
 * `func` must be null or a live function handle.
 */
bool invswitch_func_is_permutation(const struct InvswitchFunc *func);

/**
 * Computes the full profile: nonlinearity, differential uniformity and
 * spectrum, algebraic degree.
 *
 * # Safety
 * `func` must be a live function handle and `out` a valid pointer.
 */
enum InvswitchStatus invswitch_func_profile(const struct InvswitchFunc *func,
                                            struct InvswitchProfile *out);

/**
 * Static description of a status code.
 */
const char *invswitch_status_message(enum InvswitchStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INVSWITCH_H */
