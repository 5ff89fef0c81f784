#ifndef PNT_H
#define PNT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>
#include <stddef.h>

// Result codes shared by every fallible function.
typedef enum PntStatus {
  PNT_STATUS_OK = 0,
  PNT_STATUS_INVALID_ARGUMENT = 1,
  PNT_STATUS_OUT_OF_DATA = 2,
  PNT_STATUS_FORMAT = 3,
  PNT_STATUS_PARSE = 4,
  PNT_STATUS_NUMERIC_FAILURE = 5,
  PNT_STATUS_CACHE = 6,
  PNT_STATUS_IO = 7,
  PNT_STATUS_NULL_POINTER = 8,
  PNT_STATUS_PANIC = 9,
} PntStatus;

// r̄^(k) over 1..=n_max, with its differenced statistics.
typedef struct PntIteratedAverage PntIteratedAverage;

// Von Mangoldt table with ψ, θ and π prefix sums.
typedef struct PntLambdaTable PntLambdaTable;

// Ordinates of zeta zeros.
typedef struct PntZeroSet PntZeroSet;

// Outcome of one truncated Perron kernel integral.
typedef struct PntPerronResult {
  double a;
  double b;
  double t;
  uintptr_t k;
  double numeric_re;
  double numeric_im;
  double main_term;
  double bound;
  double gap;
  double quadrature_error_estimate;
} PntPerronResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *pnt_version(void);

// Message for the last failure on this thread, or an empty string. The
// pointer stays valid until the next failing call on the same thread.
const char *pnt_last_error_message(void);

// Sieve Λ(1..=n_max).
//
// # Safety
// `out_table` must be a valid pointer to writable storage.
enum PntStatus pnt_lambda_table_new(uintptr_t n_max, struct PntLambdaTable **out_table);

// Load a table from a sieve cache file, verifying its checksum.
//
// # Safety
// `path` must be a NUL-terminated string; `out_table` must be writable.
enum PntStatus pnt_lambda_table_read_cache(const char *path, struct PntLambdaTable **out_table);

// # Safety
// `table` must come from this library and not be used afterwards. Null is
// ignored.
void pnt_lambda_table_free(struct PntLambdaTable *table);

// # Safety
// `table` must be a live handle (or null, which returns 0).
uintptr_t pnt_lambda_table_n_max(const struct PntLambdaTable *table);

// ψ(x).
//
// # Safety
// `table` must be a live handle and `out_value` writable.
enum PntStatus pnt_lambda_table_psi(const struct PntLambdaTable *table,
                                    uintptr_t x,
                                    double *out_value);

// θ(x).
//
// # Safety
// `table` must be a live handle and `out_value` writable.
enum PntStatus pnt_lambda_table_theta(const struct PntLambdaTable *table,
                                      uintptr_t x,
                                      double *out_value);

// Λ(x).
//
// # Safety
// `table` must be a live handle and `out_value` writable.
enum PntStatus pnt_lambda_table_lambda(const struct PntLambdaTable *table,
                                       uintptr_t x,
                                       double *out_value);

// π(x).
//
// # Safety
// `table` must be a live handle and `out_value` writable.
enum PntStatus pnt_lambda_table_prime_pi(const struct PntLambdaTable *table,
                                         uintptr_t x,
                                         uint64_t *out_value);

// r̄^(k) over 1..=n_max from the table's error series.
//
// # Safety
// `table` must be a live handle and `out_average` writable.
enum PntStatus pnt_iterated_average_new(const struct PntLambdaTable *table,
                                        uintptr_t k,
                                        uintptr_t n_max,
                                        struct PntIteratedAverage **out_average);

// # Safety
// `average` must come from this library and not be used afterwards.
void pnt_iterated_average_free(struct PntIteratedAverage *average);

// r̄^(k)(n), n ≥ 1.
//
// # Safety
// `average` must be a live handle and `out_value` writable.
enum PntStatus pnt_iterated_average_value(const struct PntIteratedAverage *average,
                                          uintptr_t n,
                                          double *out_value);

// r̂ = (k+1)(r̄(n) − r̄(n−1)), n ≥ 2.
//
// # Safety
// `average` must be a live handle and `out_value` writable.
enum PntStatus pnt_iterated_average_hat(const struct PntIteratedAverage *average,
                                        uintptr_t n,
                                        double *out_value);

// r̂′ = (n−1)(r̄(n) − r̄(n−1)), n ≥ 2.
//
// # Safety
// `average` must be a live handle and `out_value` writable.
enum PntStatus pnt_iterated_average_hat_prime(const struct PntIteratedAverage *average,
                                              uintptr_t n,
                                              double *out_value);

// r̃(n), n ≥ 3 and k ≥ 2.
//
// # Safety
// `average` must be a live handle and `out_value` writable.
enum PntStatus pnt_iterated_average_tilde(const struct PntIteratedAverage *average,
                                          uintptr_t n,
                                          double *out_value);

// Read a zeros file: one ordinate per line, `#` comments allowed.
//
// # Safety
// `path` must be a NUL-terminated string; `out_zeros` writable.
enum PntStatus pnt_zero_set_load_path(const char *path, struct PntZeroSet **out_zeros);

// Parse zeros from an in-memory buffer of `len` bytes.
//
// # Safety
// `data` must point to `len` readable bytes; `out_zeros` writable.
enum PntStatus pnt_zero_set_load_buffer(const char *data,
                                        uintptr_t len,
                                        struct PntZeroSet **out_zeros);

// # Safety
// `zeros` must come from this library and not be used afterwards.
void pnt_zero_set_free(struct PntZeroSet *zeros);

// Number of ordinates (0 for null).
//
// # Safety
// `zeros` must be a live handle or null.
uintptr_t pnt_zero_set_len(const struct PntZeroSet *zeros);

// Σ_{0<γ≤T} 2·Re[x^ρ/(ρ(ρ+1)⋯(ρ+k))]. `out_count_used` may be null.
//
// # Safety
// `zeros` must be a live handle and `out_value` writable.
enum PntStatus pnt_zero_sum(const struct PntZeroSet *zeros,
                            double x,
                            double t,
                            uintptr_t k,
                            double *out_value,
                            uintptr_t *out_count_used);

// zero_sum(x, T, i)/√x for i in 1..=3.
//
// # Safety
// `zeros` must be a live handle and `out_value` writable.
enum PntStatus pnt_lambda_factor(const struct PntZeroSet *zeros,
                                 double x,
                                 double t,
                                 uintptr_t i,
                                 double *out_value);

// 2·Σ_{γ≤T} 1/γ².
//
// # Safety
// `zeros` must be a live handle and `out_value` writable.
enum PntStatus pnt_gamma_square_tail(const struct PntZeroSet *zeros, double t, double *out_value);

// r̄(x) + zero_sum(x, T, 1); `average` must have order 1.
//
// # Safety
// Both handles must be live and `out_value` writable.
enum PntStatus pnt_explicit_formula_residual(const struct PntIteratedAverage *average,
                                             const struct PntZeroSet *zeros,
                                             uintptr_t x,
                                             double t,
                                             double *out_value);

// (1/2πi)∫_{b−iT}^{b+iT} k!·a^s/(s(s+1)⋯(s+k)) ds with its limit and bound.
//
// # Safety
// `out_result` must be writable.
enum PntStatus pnt_perron_integral(double a,
                                   double b,
                                   double t,
                                   uintptr_t k,
                                   struct PntPerronResult *out_result);

// a^b·min(1/T, 1/(T²|log a|)), a ≠ 1.
//
// # Safety
// `out_value` must be writable.
enum PntStatus pnt_lemma1_error_bound(double a, double b, double t, double *out_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PNT_H */
