#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include <cstring>
#include <vector>

#include "quadfib/quadfib.h"

namespace {
struct Ctx {
    qf_context* c = nullptr;
    Ctx() { REQUIRE(qf_context_create(0, &c) == QF_OK); }
    ~Ctx() { qf_context_destroy(c); }
};

int64_t ident(int64_t n, void*) { return n; }
}  // namespace

TEST_CASE("context lifecycle") {
    Ctx ctx;
    CHECK(qf_context_sieve_limit(ctx.c) == 1000000u);
    CHECK(qf_context_create(0, nullptr) == QF_E_INVALID);
    qf_context_destroy(nullptr);
    CHECK(std::strlen(qf_version()) > 0);
}

TEST_CASE("symbols") {
    int v = 0;
    CHECK(qf_jacobi(2, 15, &v) == QF_OK);
    CHECK(v == 1);
    CHECK(qf_jacobi(2, 16, &v) == QF_E_INVALID);
    CHECK(std::strlen(qf_last_error()) > 0);
    CHECK(qf_hilbert(-1, -1, 0, &v) == QF_OK);
    CHECK(v == -1);
}

TEST_CASE("check reports each place") {
    Ctx ctx;
    const int64_t a[4] = {1, 1, 1, -7};
    size_t n = 0;
    int els = -1;
    CHECK(qf_check(ctx.c, a, nullptr, 0, &n, &els) == QF_OK);
    CHECK(n == 3);
    CHECK(els == 0);
    std::vector<qf_place_verdict> rows(n);
    CHECK(qf_check(ctx.c, a, rows.data(), 1, &n, &els) == QF_E_BUFFER);
    CHECK(qf_check(ctx.c, a, rows.data(), rows.size(), &n, &els) == QF_OK);
    for (auto r : rows) CHECK((r.verdict == QF_INSOLUBLE) == (r.place == 2));

    int64_t out[4];
    int found = 0;
    const int64_t b[4] = {1, 1, -1, -1};
    CHECK(qf_find_point(b, 1, out, &found) == QF_OK);
    CHECK(found == 1);
    const int64_t z[4] = {0, 1, 1, 1};
    CHECK(qf_normalize(ctx.c, z, out) == QF_E_INVALID);
}

TEST_CASE("counting through the C API") {
    Ctx ctx;
    qf_count_options o{1, 0, 0, 0};
    uint64_t n = 0, n1 = 0, n2 = 0;
    CHECK(qf_count(ctx.c, QF_COUNT_N, nullptr, 100, &o, &n) == QF_OK);
    CHECK(qf_count(ctx.c, QF_COUNT_N1, nullptr, 100, &o, &n1) == QF_OK);
    CHECK(qf_count(ctx.c, QF_COUNT_N2, nullptr, 100, &o, &n2) == QF_OK);
    CHECK(n == 15216);
    CHECK(n == 2 * n1 + n2);
    const int l[4] = {1, 0, 0, 0};
    uint64_t reg = 0;
    CHECK(qf_count(ctx.c, QF_COUNT_REGION, l, 100, &o, &reg) == QF_OK);
    CHECK(reg == n1);
    CHECK(qf_count(ctx.c, QF_COUNT_REGION, nullptr, 100, &o, &reg) == QF_E_INVALID);

    std::vector<uint64_t> hist(101);
    CHECK(qf_height_histogram(ctx.c, QF_COUNT_RAW, nullptr, 100, &o, hist.data(), 50) == QF_E_BUFFER);
    CHECK(qf_height_histogram(ctx.c, QF_COUNT_RAW, nullptr, 100, &o, hist.data(), hist.size()) == QF_OK);
    uint64_t tot = 0;
    for (auto h : hist) tot += h;
    CHECK(tot == 4 * n);

    qf_count_options tight{1, 50, 0, 0};
    CHECK(qf_count(ctx.c, QF_COUNT_N, nullptr, 100, &tight, &n) == QF_E_CEILING);

    qf_census_row row;
    CHECK(qf_census(ctx.c, 30, &o, &row) == QF_OK);
    CHECK(row.N == 1124);
    CHECK(row.raw == 4 * row.N);
}

TEST_CASE("sigma and sets") {
    size_t n = 0;
    CHECK(qf_sigma_table(nullptr, 0, &n) == QF_OK);
    std::vector<qf_sigma_row> rows(n);
    CHECK(qf_sigma_table(rows.data(), n, &n) == QF_OK);
    for (const auto& r : rows) CHECK(r.pass == 1);
    const int64_t m[4] = {1, 1, 1, 1};
    const int s[4] = {0, 0, 0, 0};
    int64_t v = 0;
    CHECK(qf_sigma(m, s, 1, 2, &v) == QF_OK);
    CHECK(v == 192);
    CHECK(qf_sigma(m, s, 3, 2, &v) == QF_E_INVALID);
    qf_set_counts sets;
    CHECK(qf_mod8_set_counts(&sets) == QF_OK);
    CHECK(sets.a1_product_one == 48);
    CHECK(sets.a2_product_one == 32);
}

TEST_CASE("charsum and identity") {
    Ctx ctx;
    const int64_t one[4] = {1, 1, 1, 1};
    const int zero[4] = {0, 0, 0, 0};
    int a = -1, b = -1;
    CHECK(qf_charsum_indicator(ctx.c, one, one, zero, 1, &a, &b) == QF_OK);
    CHECK(a == 1);
    CHECK(b == 1);
    const int64_t even[4] = {2, 1, 1, 1};
    CHECK(qf_charsum_indicator(ctx.c, even, one, zero, 1, &a, &b) == QF_E_INVALID);
    qf_identity_report rep;
    CHECK(qf_identity_random(ctx.c, 50, 20, 1, &rep) == QF_OK);
    CHECK(rep.mismatches == 0);
}

TEST_CASE("constant and bilinear") {
    Ctx ctx;
    qf_constant_report rep;
    CHECK(qf_leading_constant(ctx.c, 10000, &rep) == QF_OK);
    CHECK(rep.agree == 1);
    CHECK(rep.closed.value > 4.15);
    CHECK(qf_leading_constant(ctx.c, 2000000, &rep) == QF_E_CEILING);
    qf_euler_product e;
    CHECK(qf_constant_cri(ctx.c, 2, 2, 1000, &e) == QF_OK);
    CHECK(qf_constant_cri(ctx.c, 2, 4, 1000, &e) == QF_E_INVALID);
    double mt = 0;
    CHECK(qf_main_term(1e4, 4.15, &mt) == QF_OK);
    CHECK(mt > 0);
    int64_t S = 0;
    double norm = 0;
    CHECK(qf_bilinear(ctx.c, 100, 50, QF_COEFF_ONES, 0, 0, &S, &norm) == QF_OK);
    CHECK(S == 0);
    CHECK(qf_bilinear(ctx.c, 100, 50, 9, 0, 0, &S, &norm) == QF_E_INVALID);
}

TEST_CASE("hyperbola callback") {
    const int64_t c[4] = {1, 1, 1, 1};
    const qf_test_fn g[4] = {ident, ident, ident, ident};
    int holds = 0;
    CHECK(qf_hyperbola_check(16, 4, c, g, nullptr, &holds) == QF_OK);
    CHECK(holds == 1);
}
