/* ebit: entanglement measures, LOCC simulation and asymptotic conversion
 * rates for bipartite pure states, behind a C ABI.
 *
 * Conventions:
 *   - Entanglement is measured in ebits (log base 2); the singlet is 1.
 *   - Amplitude buffers are row-major over (a, b) with interleaved
 *     re, im doubles: buffer length is 2 * dim_a * dim_b.
 *   - Every function returning ebit_status leaves its outputs untouched
 *     on failure; ebit_last_error() describes the most recent failure on
 *     the calling thread.
 *   - char** outputs receive heap strings owned by the caller; release
 *     them with ebit_string_free().  Handles are released with their
 *     matching *_free(); all *_free functions accept NULL.
 */

#ifndef EBIT_H
#define EBIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EBIT_API __declspec(dllexport)
#else
#define EBIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ebit_status {
  EBIT_OK = 0,
  EBIT_ERR_INVALID_ARGUMENT = 1,
  EBIT_ERR_SHAPE = 2,
  EBIT_ERR_INVARIANT = 3,
  EBIT_ERR_CAPACITY = 4,
  EBIT_ERR_PARSE = 5,
  EBIT_ERR_IO = 6,
  EBIT_ERR_COMPUTE = 7,
  EBIT_ERR_PROTOCOL = 8,
  EBIT_ERR_INTERNAL = 9
} ebit_status;

typedef enum ebit_format { EBIT_FORMAT_CSV = 0, EBIT_FORMAT_JSON = 1 } ebit_format;

typedef struct ebit_state ebit_state;       /* bipartite pure state */
typedef struct ebit_protocol ebit_protocol; /* ordered local operations */
typedef struct ebit_ensemble ebit_ensemble; /* probabilistic branches */

EBIT_API const char* ebit_version(void);
EBIT_API const char* ebit_status_name(ebit_status status);

/* Message of the most recent failing call on this thread ("" if none). */
EBIT_API const char* ebit_last_error(void);
EBIT_API void ebit_string_free(char* s);

/* --- states ------------------------------------------------------------ */

/* Builds a state from amplitudes; accepts norms within 1e-6 of 1 and
 * renormalizes. */
EBIT_API ebit_status ebit_state_create(int64_t dim_a, int64_t dim_b,
                                       const double* re_im, ebit_state** out);
EBIT_API ebit_status ebit_state_singlet(ebit_state** out);
/* sqrt(p)|00> + sqrt(1-p)|11> */
EBIT_API ebit_status ebit_state_two_term(double p, ebit_state** out);
EBIT_API ebit_status ebit_state_basis(int64_t dim_a, int64_t dim_b, int64_t a,
                                      int64_t b, ebit_state** out);
/* Haar-direction random state, deterministic in (seed, stream). */
EBIT_API ebit_status ebit_state_random(int64_t dim_a, int64_t dim_b,
                                       uint64_t seed, uint64_t stream,
                                       ebit_state** out);
EBIT_API ebit_status ebit_state_tensor(const ebit_state* s1,
                                       const ebit_state* s2, ebit_state** out);
EBIT_API ebit_status ebit_state_dims(const ebit_state* s, int64_t* dim_a,
                                     int64_t* dim_b);
/* re_im must hold 2*dim_a*dim_b doubles. */
EBIT_API ebit_status ebit_state_amplitudes(const ebit_state* s, double* re_im);
/* |<s1|s2>|^2 */
EBIT_API ebit_status ebit_state_fidelity(const ebit_state* s1,
                                         const ebit_state* s2, double* out);
EBIT_API ebit_status ebit_state_from_json(const char* json_text,
                                          ebit_state** out);
EBIT_API ebit_status ebit_state_to_json(const ebit_state* s, char** json_out);
EBIT_API ebit_status ebit_state_load(const char* path, ebit_state** out);
EBIT_API ebit_status ebit_state_save(const ebit_state* s, const char* path);
EBIT_API void ebit_state_free(ebit_state* s);

/* --- entanglement ------------------------------------------------------ */

EBIT_API ebit_status ebit_entropy(const ebit_state* s, double* ebits);
EBIT_API ebit_status ebit_schmidt_rank(const ebit_state* s, int64_t* rank);
/* coeffs must hold min(dim_a, dim_b) doubles; *count receives how many
 * were written (always the full min(dim_a, dim_b), descending). */
EBIT_API ebit_status ebit_schmidt_coeffs(const ebit_state* s, double* coeffs,
                                         int64_t* count);
/* {"rank": r, "coeffs": [...]} */
EBIT_API ebit_status ebit_schmidt_json(const ebit_state* s, char** json_out);

/* --- protocols and ensembles ------------------------------------------- */

EBIT_API ebit_status ebit_protocol_from_json(const char* json_text,
                                             ebit_protocol** out);
EBIT_API ebit_status ebit_protocol_to_json(const ebit_protocol* p,
                                           char** json_out);
EBIT_API ebit_status ebit_protocol_load(const char* path, ebit_protocol** out);
EBIT_API ebit_status ebit_protocol_save(const ebit_protocol* p,
                                        const char* path);
/* Unconditional random protocol: alternating sides, Haar unitaries and
 * two-outcome Kraus measurements, deterministic in (seed, stream). */
EBIT_API ebit_status ebit_protocol_random(int64_t dim_a, int64_t dim_b,
                                          int depth, uint64_t seed,
                                          uint64_t stream, ebit_protocol** out);
EBIT_API void ebit_protocol_free(ebit_protocol* p);

EBIT_API ebit_status ebit_protocol_run(const ebit_state* s,
                                       const ebit_protocol* p,
                                       ebit_ensemble** out);
EBIT_API ebit_status ebit_ensemble_size(const ebit_ensemble* e, int64_t* count);
EBIT_API ebit_status ebit_ensemble_prob(const ebit_ensemble* e, int64_t index,
                                        double* prob);
EBIT_API ebit_status ebit_ensemble_state(const ebit_ensemble* e, int64_t index,
                                         ebit_state** out);
EBIT_API ebit_status ebit_ensemble_average_entanglement(const ebit_ensemble* e,
                                                        double* ebits);
EBIT_API void ebit_ensemble_free(ebit_ensemble* e);

/* --- monotonicity ------------------------------------------------------ */

typedef struct ebit_monotonicity_result {
  double before;
  double after_avg;
  int satisfied; /* after_avg <= before + 1e-9 */
  double slack;  /* before - after_avg */
} ebit_monotonicity_result;

EBIT_API ebit_status ebit_monotonicity_check(const ebit_state* s,
                                             const ebit_protocol* p,
                                             ebit_monotonicity_result* out);

typedef struct ebit_sweep_summary {
  uint64_t trials;
  uint64_t satisfied;
  int has_violation;
  uint64_t violation_trial; /* valid when has_violation */
} ebit_sweep_summary;

/* Seeded random-protocol fuzzing over `pair_count` (dim_a, dim_b) pairs
 * given as interleaved int64s.  When a violation is found and
 * violation_json is non-NULL, it receives a replayable dump embedding the
 * state and protocol. */
EBIT_API ebit_status ebit_monotonicity_sweep(uint64_t trials,
                                             const int64_t* dim_pairs,
                                             size_t pair_count, int max_depth,
                                             uint64_t seed,
                                             ebit_sweep_summary* out,
                                             char** violation_json);

/* --- asymptotic conversion --------------------------------------------- */

typedef struct ebit_yield {
  uint64_t k;
  double expected_ebits;
  double per_copy;
  double gap; /* source entropy minus per_copy */
  double whole_singlets_per_copy;
  double std_error; /* negative when not applicable (exact method) */
} ebit_yield;

/* Binary entropy of the two-term source with squared coefficient p. */
EBIT_API ebit_status ebit_source_entropy(double p, double* bits);
EBIT_API ebit_status ebit_concentrate_exact(double p, uint64_t k,
                                            ebit_yield* out);
EBIT_API ebit_status ebit_concentrate_sample(double p, uint64_t k,
                                             uint64_t trials, uint64_t seed,
                                             uint64_t stream, ebit_yield* out);
/* Yield table over ascending k values; trials = 0 selects the exact
 * method, otherwise Monte Carlo with the given seed. */
EBIT_API ebit_status ebit_concentrate_table(double p, const uint64_t* ks,
                                            size_t k_count, uint64_t trials,
                                            uint64_t seed, ebit_format format,
                                            char** out);
/* Columns k,per_copy_ebits,gap_ebits over ascending k values. */
EBIT_API ebit_status ebit_ratio_table(double p, const uint64_t* ks,
                                      size_t k_count, ebit_format format,
                                      char** out);
EBIT_API ebit_status ebit_dilution_fidelity(double p, uint64_t n, double rate,
                                            double* fidelity);
/* Columns n,rate,fidelity. */
EBIT_API ebit_status ebit_dilution_curve(double p, uint64_t n,
                                         const double* rates, size_t rate_count,
                                         ebit_format format, char** out);

/* --- measures lab ------------------------------------------------------ */

/* Runs every builtin candidate through the axiom suite.  report_json
 * receives the full matrix; unique_name (optional) receives the name of
 * the sole all-pass builtin.  Fails with EBIT_ERR_INVARIANT if that
 * candidate is not exactly `entropy`. */
EBIT_API ebit_status ebit_uniqueness_report(uint64_t seed, uint64_t stream,
                                            uint64_t trials, char** report_json,
                                            char** unique_name);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EBIT_H */
