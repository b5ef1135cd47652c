#ifndef QUADFIB_H
#define QUADFIB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef QUADFIB_BUILDING
#    define QF_API __declspec(dllexport)
#  else
#    define QF_API __declspec(dllimport)
#  endif
#elif __GNUC__ >= 4
#  define QF_API __attribute__((visibility("default")))
#else
#  define QF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every function returns one of these. Details of the last failure on the
 * calling thread are available from qf_last_error(). */
enum {
    QF_OK = 0,
    QF_E_INVALID = 1,     /* bad argument or precondition */
    QF_E_CEILING = 2,     /* work or sieve ceiling exceeded */
    QF_E_CONSISTENCY = 3, /* an internal identity check failed */
    QF_E_NOMEM = 4,
    QF_E_INTERNAL = 5,
    QF_E_BUFFER = 6       /* output buffer too small; the needed size is still reported */
};

enum { QF_INSOLUBLE = 0, QF_SOLUBLE = 1, QF_UNKNOWN = 2 };

enum { QF_COUNT_RAW = 0, QF_COUNT_N = 1, QF_COUNT_N1 = 2, QF_COUNT_N2 = 3, QF_COUNT_REGION = 4 };

enum { QF_COEFF_ONES = 0, QF_COEFF_MOBIUS = 1, QF_COEFF_RANDOM = 2 };

typedef struct qf_context qf_context;

QF_API const char* qf_version(void);
QF_API const char* qf_status_string(int status);
QF_API const char* qf_last_error(void);

/* sieve_limit = 0 picks the default of 10^6. Counting, the bilinear sum and
 * the Euler products all need their range to fit under the sieve. */
QF_API int qf_context_create(uint32_t sieve_limit, qf_context** out);
QF_API void qf_context_destroy(qf_context* ctx);
QF_API uint32_t qf_context_sieve_limit(const qf_context* ctx);

QF_API int qf_jacobi(int64_t a, int64_t n, int* out);
/* place 0 is the real place, otherwise a prime. */
QF_API int qf_hilbert(int64_t a, int64_t b, uint64_t place, int* out);

typedef struct {
    uint64_t place; /* 0 = real */
    int verdict;    /* QF_INSOLUBLE, QF_SOLUBLE, QF_UNKNOWN */
} qf_place_verdict;

/* Local verdicts at the real place, 2 and every odd prime of the normalized
 * coefficient product. *count receives the number of places. */
QF_API int qf_check(qf_context* ctx, const int64_t coeffs[4], qf_place_verdict* out, size_t cap, size_t* count,
                    int* everywhere_soluble);
QF_API int qf_normalize(qf_context* ctx, const int64_t coeffs[4], int64_t out[4]);
QF_API int qf_find_point(const int64_t coeffs[4], int64_t height_bound, int64_t out[4], int* found);

typedef struct {
    unsigned workers;       /* 0 means 1 */
    uint64_t ceiling;       /* 0 means 10^5 */
    size_t memo_capacity;   /* LRU entries per worker, 0 = off */
    int reference;          /* nonzero: brute-force route */
} qf_count_options;

QF_API int qf_count(qf_context* ctx, int kind, const int l[4], uint64_t B, const qf_count_options* opts,
                    uint64_t* out);
/* hist[h] for 0 <= h <= B; cap must be at least B + 1. */
QF_API int qf_height_histogram(qf_context* ctx, int kind, const int l[4], uint64_t B, const qf_count_options* opts,
                               uint64_t* hist, size_t cap);

typedef struct {
    uint64_t B, N, N1, N2, raw;
    double elapsed_ms;
} qf_census_row;

QF_API int qf_census(qf_context* ctx, uint64_t B, const qf_count_options* opts, qf_census_row* out);

typedef struct {
    int64_t m[4];          /* m02, m03, m12, m13 */
    int sigma[4];
    int64_t value[4];      /* Sigma_{1,2}, Sigma_{2,2}, Sigma_{1,3}, Sigma_{2,3} */
    int64_t expected[4];
    int pass;
} qf_sigma_row;

/* The full table over m_ij in {1,2,3,5}. Call with rows = NULL to get the size. */
QF_API int qf_sigma_table(qf_sigma_row* rows, size_t cap, size_t* count);
QF_API int qf_sigma(const int64_t m[4], const int sigma[4], int r, int i, int64_t* out);

typedef struct {
    uint64_t a1, a2;                     /* set sizes */
    uint64_t a1_product_one, a2_product_one;
    int component_sums_integral;
} qf_set_counts;

QF_API int qf_mod8_set_counts(qf_set_counts* out);

QF_API int qf_charsum_indicator(qf_context* ctx, const int64_t s[4], const int64_t m[4], const int sigma[4], int r,
                                int* via_charsum, int* direct);

typedef struct {
    uint64_t checked, mismatches;
    double elapsed_ms;
} qf_identity_report;

QF_API int qf_identity_suite(qf_context* ctx, int64_t s_max, int64_t m_max, unsigned workers, qf_identity_report* out);
QF_API int qf_identity_random(qf_context* ctx, uint64_t count, int64_t bound, uint64_t seed, qf_identity_report* out);

typedef struct {
    double value;
    uint64_t prime_limit;
    double tail_radius;
} qf_euler_product;

typedef struct {
    qf_euler_product closed;   /* returned constant */
    qf_euler_product cri[4];   /* keys (1,2), (1,3), (2,2), (2,3), plain truncation */
    double weighted;           /* 2 c12 + 2 c13 + c22 + c23 */
    double weighted_radius, closed_radius;
    int agree;
} qf_constant_report;

QF_API int qf_leading_constant(qf_context* ctx, uint64_t prime_limit, qf_constant_report* out);
QF_API int qf_constant_cri(qf_context* ctx, int r, int i, uint64_t prime_limit, qf_euler_product* out);
QF_API int qf_main_term(double B, double c, double* out);

QF_API int qf_bilinear(qf_context* ctx, int64_t X, int64_t z, int mode, uint64_t seed, int64_t ceiling, int64_t* S,
                       double* normalized);

typedef int64_t (*qf_test_fn)(int64_t n, void* user);

/* Evaluates the four hyperbola terms by brute force. *holds = 1 when
 * full == first + second - overlap. */
QF_API int qf_hyperbola_check(int64_t X, int64_t Y, const int64_t c[4], const qf_test_fn g[4], void* user, int* holds);

#ifdef __cplusplus
}
#endif

#endif
