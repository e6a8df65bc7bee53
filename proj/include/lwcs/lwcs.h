/* C interface to the lwcs library.  Every call returns an lwcs status code
   (0 on success); lwcs_last_error() holds the message of the last failure on
   the calling thread.  Strings returned through char** are owned by the
   caller and released with lwcs_string_free. */
#ifndef LWCS_LWCS_H
#define LWCS_LWCS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define LWCS_API __attribute__((visibility("default")))
#else
#define LWCS_API
#endif

/* status codes, stable */
enum {
  LWCS_OK = 0,
  LWCS_NOT_PRIME = 1,
  LWCS_CAP_EXCEEDED = 2,
  LWCS_ZERO_INVERSE = 3,
  LWCS_CTX_MISMATCH = 4,
  LWCS_ZERO_ARGUMENT = 5,
  LWCS_EVEN_CHARACTERISTIC = 6,
  LWCS_FILTER_REQUIRES_QUAD_EXT = 7,
  LWCS_SHAPE_MISMATCH = 8,
  LWCS_NOT_REGULAR = 9,
  LWCS_NOT_TRIVIAL_ON_BASE = 10,
  LWCS_SINGULAR_MATRIX = 11,
  LWCS_POLE_HIT = 12,
  LWCS_UNSUPPORTED_CHAR = 13,
  LWCS_BAD_SUBSET = 14,
  LWCS_UNSUPPORTED_CONDUCTOR = 15,
  LWCS_INSUFFICIENT_PRECISION = 16,
  LWCS_PRECISION_LOSS = 17,
  LWCS_UNSUPPORTED_FIELD = 18,
  LWCS_DIVISION_BY_ZERO_EXPR = 19,
  LWCS_ESSENTIAL_SINGULARITY = 20,
  LWCS_INSUFFICIENT_ORDER = 21,
  LWCS_POLE_AT_ONE = 22,
  LWCS_MISSING_ARCH_STUB = 23,
  LWCS_UNSUPPORTED_CASE = 24,
  LWCS_USAGE_ERROR = 25,
  LWCS_INVARIANT_VIOLATION = 26,
  LWCS_INVALID_ARGUMENT = 27,
  LWCS_INTERNAL = 99
};

typedef struct {
  double re, im;
} lwcs_complex;

typedef struct lwcs_field lwcs_field;
typedef struct lwcs_local lwcs_local;
typedef struct lwcs_spec lwcs_spec;

LWCS_API const char* lwcs_version(void);
LWCS_API const char* lwcs_status_name(int status);
LWCS_API const char* lwcs_last_error(void);
LWCS_API void lwcs_string_free(char* s);

/* ---- finite fields and character sums ---- */

LWCS_API int lwcs_field_new(uint32_t p, uint32_t f, lwcs_field** out);
LWCS_API void lwcs_field_free(lwcs_field* F);
LWCS_API int lwcs_field_q(const lwcs_field* F, uint32_t* q);

/* tau(chi_k, psi_a); chi_k(x) = e(k dlog x / (q-1)), psi_a(x) = e(Tr(a x)/p) */
LWCS_API int lwcs_gauss_sum(const lwcs_field* F, uint32_t k, uint32_t a, lwcs_complex* out);
LWCS_API int lwcs_jacobi_sum(const lwcs_field* F, uint32_t a, uint32_t b, lwcs_complex* out);

/* normalized hypergeometric sum; t is a field element in the integer encoding */
LWCS_API int lwcs_hyper_sum(const lwcs_field* F, const uint32_t* chi, size_t m, const uint32_t* eta, size_t n,
                            uint32_t t, lwcs_complex* out);
/* flags set to 1 when the tuple is Kummer / Belyi / inverse-Belyi induced */
LWCS_API int lwcs_hyper_exceptional(const lwcs_field* F, const uint32_t* chi, size_t m, const uint32_t* eta,
                                    size_t n, int* kummer, int* belyi, int* inverse_belyi);

typedef struct {
  uint32_t q;
  uint64_t triples;
  double max_s_over_q, max_t_over_sqrtq;
  uint32_t chi_k, eta_k, rho_k;
  lwcs_complex s_at_max;
  int review, small_char;
} lwcs_scan_row;

/* all (chi, eta, rho) for one odd prime power q */
LWCS_API int lwcs_charsum_scan_q(uint32_t q, int rho_restricted, lwcs_scan_row* out);
/* method: 0 direct, 1 via A/B, 2 via T */
LWCS_API int lwcs_charsum_S(uint32_t p, uint32_t f, uint32_t chi, uint32_t eta, uint32_t rho, int method,
                            lwcs_complex* out);

/* ---- local weights ---- */

typedef struct {
  int xi_pi;      /* case1, case2ns: +1 or -1 (0 means +1) */
  int n;          /* case2ns level (0 means 1) */
  int conj;       /* case2ns: 0 symmetric, 1 second display */
  uint32_t theta; /* case2sc: exponent on F_{q^2}^x, 0 picks the first regular one */
  uint32_t t;     /* case3: field element, 0 means 1 */
} lwcs_case_params;

/* case: case1, case2ns, case2sc, case3, case4ns; params may be NULL */
LWCS_API int lwcs_local_new(uint32_t q, const char* kind, const lwcs_case_params* params, lwcs_local** out);
LWCS_API void lwcs_local_free(lwcs_local* L);
LWCS_API int lwcs_local_theta(const lwcs_local* L, uint32_t* theta);

/* chi(varpi) = chi_pi, chi on units has exponent k mod q-1.  Centered s.
   *vanishes is set when the weight is identically zero for this chi. */
LWCS_API int lwcs_local_closed(const lwcs_local* L, lwcs_complex chi_pi, uint32_t k, lwcs_complex s,
                               lwcs_complex* out, int* vanishes);
/* direct p-adic integration at depth N (prime q only) */
LWCS_API int lwcs_local_oracle(const lwcs_local* L, int N, lwcs_complex chi_pi, uint32_t k, lwcs_complex s,
                               lwcs_complex* value, double* tail_bound);
/* case2sc subset terms; out has lwcs_subset_count() entries */
LWCS_API size_t lwcs_subset_count(void);
LWCS_API const char* lwcs_subset_name(size_t i);
LWCS_API int lwcs_local_components(const lwcs_local* L, lwcs_complex chi_pi, uint32_t k, lwcs_complex s,
                                   lwcs_complex* out);

/* ---- global bookkeeping ---- */

LWCS_API int lwcs_spec_parse(const char* json, lwcs_spec** out);
LWCS_API void lwcs_spec_free(lwcs_spec* S);
LWCS_API int lwcs_spec_json(const lwcs_spec* S, char** out);

/* C[0] total, C[1..4] per conductor exponent; log_bound of the bound shape */
LWCS_API int lwcs_conductors(const lwcs_spec* S, double C[5], double* log_bound);
/* *order is written only when *has_order is set */
LWCS_API int lwcs_d3_status(const lwcs_spec* S, int* vanishes, int* has_order, int* order, char** reason);
/* residue at s = 1/2 for r = 1; *available is 0 otherwise */
LWCS_API int lwcs_d3_value(const lwcs_spec* S, int* available, lwcs_complex* out);
/* per-place Laurent ledger and residues as a JSON object.  With unit_stubs
   every real place gets the constant stub 1; otherwise the call fails with
   LWCS_MISSING_ARCH_STUB when r >= 1. */
LWCS_API int lwcs_d4_ledger_json(const lwcs_spec* S, int unit_stubs, int nmax, char** out);

LWCS_API int lwcs_arch_m3(double tau, double T, double Delta, int eps_v, int eps, double* out);

#ifdef __cplusplus
}
#endif

#endif
