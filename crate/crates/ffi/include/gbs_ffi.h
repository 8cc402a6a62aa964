#ifndef GBS_FFI_H
#define GBS_FFI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GbsStatus {
  GBS_STATUS_OK = 0,
  GBS_STATUS_NULL_ARGUMENT = 1,
  GBS_STATUS_INVALID_UTF8 = 2,
  GBS_STATUS_PARSE = 3,
  GBS_STATUS_DOMAIN = 4,
  GBS_STATUS_PRECONDITION = 5,
  GBS_STATUS_BOUND_EXCEEDED = 6,
  GBS_STATUS_INTERNAL = 7,
  GBS_STATUS_PANIC = 8,
} GbsStatus;

typedef enum GbsClassKind {
  GBS_CLASS_KIND_INFINITE_CYCLIC = 0,
  GBS_CLASS_KIND_BS11 = 1,
  GBS_CLASS_KIND_BS1_MINUS1 = 2,
  GBS_CLASS_KIND_SOLVABLE_BS1N = 3,
  GBS_CLASS_KIND_NON_SOLVABLE = 4,
} GbsClassKind;

typedef enum GbsAnswer {
  GBS_ANSWER_YES = 0,
  GBS_ANSWER_NO = 1,
  GBS_ANSWER_UNKNOWN = 2,
} GbsAnswer;

/**
 * Opaque graph handle.
 */
typedef struct GbsGraph GbsGraph;

/**
 * Opaque prime-set handle.
 */
typedef struct GbsPrimeSet GbsPrimeSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty after a
 * successful call. Owned by the library and valid until the next call.
 */
const char *gbs_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void gbs_string_free(char *s);

/**
 * Parse a graph from its JSON form.
 *
 * # Safety
 * `json` must be a valid C string; `out` must be writable.
 */
enum GbsStatus gbs_graph_from_json(const char *json, struct GbsGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library, not yet freed.
 */
void gbs_graph_free(struct GbsGraph *g);

/**
 * New handle holding the reduced form of `g`.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum GbsStatus gbs_graph_reduce(const struct GbsGraph *g, struct GbsGraph **out);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable. The string
 * written to `out` is released with [`gbs_string_free`].
 */
enum GbsStatus gbs_graph_to_json(const struct GbsGraph *g, char **out);

/**
 * Class of a reduced graph. `n_out` receives `n` for the solvable
 * BS(1, n) class and 0 otherwise; it may be null.
 *
 * # Safety
 * `g` must be a live graph handle; `kind` must be writable.
 */
enum GbsStatus gbs_graph_classify(const struct GbsGraph *g,
                                  enum GbsClassKind *kind,
                                  int64_t *n_out);

/**
 * Parse a prime set: `all`, `{2,3}` or `all-{2}`.
 *
 * # Safety
 * `set_text` must be a valid C string; `out` must be writable.
 */
enum GbsStatus gbs_primes_parse(const char *set_text, struct GbsPrimeSet **out);

/**
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void gbs_primes_free(struct GbsPrimeSet *p);

/**
 * Is the group of `g` residually a finite group of the class given by
 * `primes`? `json_out` may be null; otherwise it receives the verdict
 * as JSON.
 *
 * # Safety
 * `g` and `primes` must be live handles; `answer` must be writable.
 */
enum GbsStatus gbs_residual(const struct GbsGraph *g,
                            const struct GbsPrimeSet *primes,
                            uint64_t bound,
                            enum GbsAnswer *answer,
                            char **json_out);

/**
 * Conjugacy separability counterpart of [`gbs_residual`].
 *
 * # Safety
 * Same as [`gbs_residual`].
 */
enum GbsStatus gbs_conjsep(const struct GbsGraph *g,
                           const struct GbsPrimeSet *primes,
                           uint64_t bound,
                           enum GbsAnswer *answer,
                           char **json_out);

/**
 * Conjugacy in BS(1, n) of two words over `t`, `a`.
 *
 * # Safety
 * `x` and `y` must be valid C strings; `out` must be writable.
 */
enum GbsStatus gbs_bs_are_conjugate(int64_t n, const char *x, const char *y, bool *out);

/**
 * Conjugacy of `t^i1 a^j1` and `t^i2 a^j2` in H(n, r, s).
 *
 * # Safety
 * `out` must be writable.
 */
enum GbsStatus gbs_h_are_conjugate(int64_t n,
                                   uint64_t r,
                                   uint64_t s,
                                   int64_t i1,
                                   int64_t j1,
                                   int64_t i2,
                                   int64_t j2,
                                   bool *out);

/**
 * Membership of `s` in the set of admissible quotient moduli for `n`
 * and `primes`.
 *
 * # Safety
 * `primes` must be a live handle; `out` must be writable.
 */
enum GbsStatus gbs_in_xi(int64_t n, uint64_t s, const struct GbsPrimeSet *primes, bool *out);

/**
 * Elements of BS(1, n) that no quotient in the class separates, as JSON
 * `{"n","u","v","w","q"}`.
 *
 * # Safety
 * `primes` must be a live handle; `json_out` must be writable.
 */
enum GbsStatus gbs_fusion_witness(int64_t n,
                                  const struct GbsPrimeSet *primes,
                                  uint64_t missing,
                                  char **json_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GBS_FFI_H */
