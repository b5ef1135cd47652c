#include "quadfib/quadfib.h"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "quadfib/charsum.hpp"
#include "quadfib/constant.hpp"
#include "quadfib/counting.hpp"
#include "quadfib/solubility.hpp"

struct qf_context {
    explicit qf_context(std::uint32_t limit) : sieve(limit) {}
    qf::SpfSieve sieve;
};

namespace {

thread_local std::string g_last_error;

template <class F>
int guarded(F&& f) {
    try {
        g_last_error.clear();
        return f();
    } catch (const std::out_of_range& e) {
        g_last_error = e.what();
        return QF_E_CEILING;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return QF_E_INVALID;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return QF_E_INVALID;
    } catch (const std::logic_error& e) {
        g_last_error = e.what();
        return QF_E_CONSISTENCY;
    } catch (const std::overflow_error& e) {
        g_last_error = e.what();
        return QF_E_CEILING;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return QF_E_NOMEM;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QF_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return QF_E_INTERNAL;
    }
}

int fail(int code, const char* msg) {
    g_last_error = msg;
    return code;
}

#define QF_REQUIRE(cond, msg) \
    if (!(cond)) return fail(QF_E_INVALID, msg)

std::array<std::int64_t, 4> vec4(const int64_t* x) { return {x[0], x[1], x[2], x[3]}; }
std::array<int, 4> bits4(const int* x) { return {x[0], x[1], x[2], x[3]}; }

qf::CountOptions to_options(const qf_count_options* o) {
    qf::CountOptions out;
    if (!o) return out;
    out.workers = o->workers ? o->workers : 1;
    if (o->ceiling) out.ceiling = o->ceiling;
    out.memo_capacity = o->memo_capacity;
    return out;
}

qf::Route to_route(const qf_count_options* o) { return o && o->reference ? qf::Route::Reference : qf::Route::Fast; }

int verdict_code(qf::Verdict v) {
    switch (v) {
        case qf::Verdict::Insoluble: return QF_INSOLUBLE;
        case qf::Verdict::Soluble: return QF_SOLUBLE;
        default: return QF_UNKNOWN;
    }
}

qf_euler_product to_c(const qf::EulerProductResult& r) {
    return {static_cast<double>(r.value), r.prime_limit, static_cast<double>(r.tail_radius)};
}

}  // namespace

extern "C" {

const char* qf_version(void) { return "0.1.0"; }

const char* qf_status_string(int status) {
    switch (status) {
        case QF_OK: return "ok";
        case QF_E_INVALID: return "invalid argument";
        case QF_E_CEILING: return "ceiling exceeded";
        case QF_E_CONSISTENCY: return "consistency check failed";
        case QF_E_NOMEM: return "out of memory";
        case QF_E_INTERNAL: return "internal error";
        case QF_E_BUFFER: return "buffer too small";
    }
    return "unknown status";
}

const char* qf_last_error(void) { return g_last_error.c_str(); }

int qf_context_create(uint32_t sieve_limit, qf_context** out) {
    QF_REQUIRE(out, "out is null");
    *out = nullptr;
    return guarded([&]() -> int {
        *out = new qf_context(sieve_limit ? sieve_limit : 1000000u);
        return QF_OK;
    });
}

void qf_context_destroy(qf_context* ctx) { delete ctx; }

uint32_t qf_context_sieve_limit(const qf_context* ctx) { return ctx ? ctx->sieve.limit() : 0; }

int qf_jacobi(int64_t a, int64_t n, int* out) {
    QF_REQUIRE(out, "out is null");
    return guarded([&]() -> int {
        *out = qf::jacobi(a, n);
        return QF_OK;
    });
}

int qf_hilbert(int64_t a, int64_t b, uint64_t place, int* out) {
    QF_REQUIRE(out, "out is null");
    return guarded([&]() -> int {
        *out = qf::hilbert_symbol(a, b, qf::Place::of_prime(place));
        return QF_OK;
    });
}

int qf_check(qf_context* ctx, const int64_t coeffs[4], qf_place_verdict* out, size_t cap, size_t* count,
             int* everywhere_soluble) {
    QF_REQUIRE(ctx && coeffs && count, "null argument");
    return guarded([&]() -> int {
        qf::Quadric q{vec4(coeffs)};
        auto rows = qf::local_verdicts(q, ctx->sieve);
        *count = rows.size();
        if (everywhere_soluble) *everywhere_soluble = qf::is_everywhere_locally_soluble(q, ctx->sieve) ? 1 : 0;
        if (!out) return QF_OK;
        if (cap < rows.size()) return fail(QF_E_BUFFER, "place buffer too small");
        for (std::size_t i = 0; i < rows.size(); ++i)
            out[i] = {rows[i].place.kind == qf::Place::Real ? 0 : rows[i].place.p, verdict_code(rows[i].verdict)};
        return QF_OK;
    });
}

int qf_normalize(qf_context* ctx, const int64_t coeffs[4], int64_t out[4]) {
    QF_REQUIRE(ctx && coeffs && out, "null argument");
    return guarded([&]() -> int {
        auto q = qf::normalize(qf::Quadric{vec4(coeffs)}, ctx->sieve);
        std::memcpy(out, q.a.data(), sizeof(int64_t) * 4);
        return QF_OK;
    });
}

int qf_find_point(const int64_t coeffs[4], int64_t height_bound, int64_t out[4], int* found) {
    QF_REQUIRE(coeffs && out && found, "null argument");
    return guarded([&]() -> int {
        auto pt = qf::find_rational_point(qf::Quadric{vec4(coeffs)}, height_bound);
        *found = pt ? 1 : 0;
        if (pt) std::memcpy(out, pt->data(), sizeof(int64_t) * 4);
        return QF_OK;
    });
}

static qf::CountProblem to_problem(int kind, const int l[4]) {
    switch (kind) {
        case QF_COUNT_RAW:
        case QF_COUNT_N: return qf::CountProblem::raw();
        case QF_COUNT_N1: return qf::CountProblem::n1();
        case QF_COUNT_N2: return qf::CountProblem::n2();
        case QF_COUNT_REGION:
            if (!l) throw std::invalid_argument("region count needs a sign vector");
            return qf::CountProblem::region(bits4(l));
    }
    throw std::invalid_argument("unknown count kind");
}

int qf_count(qf_context* ctx, int kind, const int l[4], uint64_t B, const qf_count_options* opts, uint64_t* out) {
    QF_REQUIRE(ctx && out, "null argument");
    return guarded([&]() -> int {
        const auto o = to_options(opts);
        const auto route = to_route(opts);
        if (kind == QF_COUNT_N)
            *out = qf::count_N(B, ctx->sieve, o, route);
        else {
            auto h = qf::height_histogram(to_problem(kind, l), B, ctx->sieve, o, route);
            uint64_t t = 0;
            for (auto x : h) t += x;
            *out = t;
        }
        return QF_OK;
    });
}

int qf_height_histogram(qf_context* ctx, int kind, const int l[4], uint64_t B, const qf_count_options* opts,
                        uint64_t* hist, size_t cap) {
    QF_REQUIRE(ctx && hist, "null argument");
    QF_REQUIRE(kind != QF_COUNT_N, "use QF_COUNT_RAW for the histogram behind N");
    if (cap < B + 1) return fail(QF_E_BUFFER, "histogram buffer needs B + 1 entries");
    return guarded([&]() -> int {
        auto h = qf::height_histogram(to_problem(kind, l), B, ctx->sieve, to_options(opts), to_route(opts));
        std::memcpy(hist, h.data(), sizeof(uint64_t) * h.size());
        return QF_OK;
    });
}

int qf_census(qf_context* ctx, uint64_t B, const qf_count_options* opts, qf_census_row* out) {
    QF_REQUIRE(ctx && out, "null argument");
    return guarded([&]() -> int {
        auto r = qf::census_row(B, ctx->sieve, to_options(opts));
        *out = {r.B, r.N, r.N1, r.N2, r.raw, r.elapsed_ms};
        return QF_OK;
    });
}

int qf_sigma_table(qf_sigma_row* rows, size_t cap, size_t* count) {
    QF_REQUIRE(count, "count is null");
    return guarded([&]() -> int {
        auto t = qf::sigma_table();
        *count = t.size();
        if (!rows) return QF_OK;
        if (cap < t.size()) return fail(QF_E_BUFFER, "sigma buffer too small");
        for (std::size_t i = 0; i < t.size(); ++i) {
            qf_sigma_row& r = rows[i];
            for (int j = 0; j < 4; ++j) {
                r.m[j] = t[i].m[j];
                r.sigma[j] = t[i].sigma[j];
                r.value[j] = t[i].value[j];
                r.expected[j] = t[i].expected[j];
            }
            r.pass = t[i].pass ? 1 : 0;
        }
        return QF_OK;
    });
}

int qf_sigma(const int64_t m[4], const int sigma[4], int r, int i, int64_t* out) {
    QF_REQUIRE(m && sigma && out, "null argument");
    QF_REQUIRE((r == 1 || r == 2) && (i == 2 || i == 3), "need r in {1,2} and i in {2,3}");
    return guarded([&]() -> int {
        qf::CountVariant v{r};
        *out = i == 2 ? qf::sigma_r2(vec4(m), bits4(sigma), v) : qf::sigma_r3(vec4(m), bits4(sigma), v);
        return QF_OK;
    });
}

int qf_mod8_set_counts(qf_set_counts* out) {
    QF_REQUIRE(out, "out is null");
    return guarded([&]() -> int {
        out->a1 = qf::mod8_set_A1().count();
        out->a2 = qf::mod8_set_A2().count();
        out->a1_product_one = qf::count_with_product_one(qf::mod8_set_A1());
        out->a2_product_one = qf::count_with_product_one(qf::mod8_set_A2());
        out->component_sums_integral = qf::component_sums_integral() ? 1 : 0;
        return QF_OK;
    });
}

int qf_charsum_indicator(qf_context* ctx, const int64_t s[4], const int64_t m[4], const int sigma[4], int r,
                         int* via_charsum, int* direct) {
    QF_REQUIRE(ctx && s && m && sigma, "null argument");
    return guarded([&]() -> int {
        qf::CharsumInput in{vec4(s), vec4(m), bits4(sigma), qf::CountVariant{r}};
        std::string why;
        if (!qf::admissible(in, &why)) throw std::invalid_argument(why);
        if (via_charsum) *via_charsum = qf::indicator_via_charsum(in);
        if (direct) *direct = qf::indicator_direct(in, ctx->sieve);
        return QF_OK;
    });
}

int qf_identity_suite(qf_context* ctx, int64_t s_max, int64_t m_max, unsigned workers, qf_identity_report* out) {
    QF_REQUIRE(ctx && out, "null argument");
    return guarded([&]() -> int {
        auto rep = qf::identity_suite(s_max, m_max, ctx->sieve, workers ? workers : 1);
        *out = {rep.checked, rep.mismatches, rep.elapsed_ms};
        return QF_OK;
    });
}

int qf_identity_random(qf_context* ctx, uint64_t count, int64_t bound, uint64_t seed, qf_identity_report* out) {
    QF_REQUIRE(ctx && out, "null argument");
    return guarded([&]() -> int {
        auto rep = qf::identity_random(count, bound, seed, ctx->sieve);
        *out = {rep.checked, rep.mismatches, rep.elapsed_ms};
        return QF_OK;
    });
}

int qf_leading_constant(qf_context* ctx, uint64_t prime_limit, qf_constant_report* out) {
    QF_REQUIRE(ctx && out, "null argument");
    return guarded([&]() -> int {
        auto lc = qf::leading_constant(prime_limit, ctx->sieve);
        out->closed = to_c(lc.closed);
        for (int j = 0; j < 4; ++j) out->cri[j] = to_c(lc.cri[j]);
        out->weighted = static_cast<double>(lc.weighted);
        out->weighted_radius = static_cast<double>(lc.weighted_radius);
        out->closed_radius = static_cast<double>(lc.closed_radius);
        out->agree = lc.agree ? 1 : 0;
        return QF_OK;
    });
}

int qf_constant_cri(qf_context* ctx, int r, int i, uint64_t prime_limit, qf_euler_product* out) {
    QF_REQUIRE(ctx && out, "null argument");
    return guarded([&]() -> int {
        *out = to_c(qf::constant_cri(qf::VariantKey{r, i}, prime_limit, ctx->sieve));
        return QF_OK;
    });
}

int qf_main_term(double B, double c, double* out) {
    QF_REQUIRE(out, "out is null");
    return guarded([&]() -> int {
        *out = static_cast<double>(qf::main_term(B, c));
        return QF_OK;
    });
}

int qf_bilinear(qf_context* ctx, int64_t X, int64_t z, int mode, uint64_t seed, int64_t ceiling, int64_t* S,
                double* normalized) {
    QF_REQUIRE(ctx && S && normalized, "null argument");
    QF_REQUIRE(mode >= QF_COEFF_ONES && mode <= QF_COEFF_RANDOM, "unknown coefficient mode");
    return guarded([&]() -> int {
        auto res = qf::bilinear_hyperbolic_sum(X, z, static_cast<qf::CoeffMode>(mode), seed, ctx->sieve,
                                               ceiling > 0 ? ceiling : qf::kBilinearCeiling);
        *S = res.S;
        *normalized = res.normalized;
        return QF_OK;
    });
}

int qf_hyperbola_check(int64_t X, int64_t Y, const int64_t c[4], const qf_test_fn g[4], void* user, int* holds) {
    QF_REQUIRE(c && g && holds, "null argument");
    for (int j = 0; j < 4; ++j) QF_REQUIRE(g[j], "null test function");
    return guarded([&]() -> int {
        std::array<qf::TestFunction, 4> fns;
        for (int j = 0; j < 4; ++j) {
            qf_test_fn fn = g[j];
            fns[j] = [fn, user](std::int64_t n) { return fn(n, user); };
        }
        *holds = qf::hyperbola_split_check(X, Y, vec4(c), fns) ? 1 : 0;
        return QF_OK;
    });
}

}  // extern "C"
