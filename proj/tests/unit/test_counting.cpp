#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include <cmath>
#include <random>

#include "quadfib/counting.hpp"

using namespace qf;

namespace {
const SpfSieve& sieve() {
    static const SpfSieve s(1000000);
    return s;
}
using A4 = std::array<std::int64_t, 4>;
}  // namespace

TEST_CASE("height and fibres") {
    CHECK(height({{1, 1, 1, 1}}) == 1);
    CHECK(height({{3, -2, 1, 5}}) == 15);
    CHECK_THROWS_AS(height({{-7, 7, 1, 1}}), std::invalid_argument);
    CHECK(fibre_quadric({{1, 1, 1, 1}}, {1}, true).a == A4{-1, 1, 1, -1});
    CHECK(fibre_quadric({{1, 1, 1, 1}}, {2}, true).a == A4{1, 1, -1, -1});
    CHECK(fibre_quadric({{2, 3, 5, 7}}, {1}, false).a == A4{10, 21, 15, 14});
}

// Reference values from tests/oracle/count_oracle.py.
TEST_CASE("frozen counts") {
    CHECK(count_N(1, sieve()) == 0);
    CHECK(count_N1(1, sieve()) == 0);
    CHECK(count_N2(1, sieve()) == 0);
    CHECK(count_N(10, sieve()) == 112);
    CHECK(count_N1(10, sieve()) == 50);
    CHECK(count_N2(10, sieve()) == 12);
    CHECK(count_N(100, sieve()) == 15216);
    CHECK(count_N1(100, sieve()) == 5922);
    CHECK(count_N2(100, sieve()) == 3372);
}

TEST_CASE("fast and reference routes agree") {
    for (std::uint64_t B : {5u, 17u, 40u}) {
        for (auto prob : {CountProblem::raw(), CountProblem::n1(), CountProblem::n2(),
                          CountProblem::region({1, 0, 0, 0}), CountProblem::region({1, 0, 1, 0})}) {
            auto f = height_histogram(prob, B, sieve(), {}, Route::Fast);
            auto r = height_histogram(prob, B, sieve(), {}, Route::Reference);
            REQUIRE(f == r);
        }
    }
}

TEST_CASE("worker count does not change results") {
    CountOptions one, many;
    many.workers = 5;
    CHECK(height_histogram(CountProblem::raw(), 150, sieve(), one) ==
          height_histogram(CountProblem::raw(), 150, sieve(), many));
    CountOptions memo;
    memo.memo_capacity = 64;
    CHECK(count_N2(150, sieve(), memo) == count_N2(150, sieve()));
}

TEST_CASE("N = 2 N1 + N2") {
    for (std::uint64_t B = 1; B <= 60; ++B) REQUIRE(count_N(B, sieve()) == 2 * count_N1(B, sieve()) + count_N2(B, sieve()));
}

TEST_CASE("sign regions") {
    const std::uint64_t B = 40;
    const auto n1 = count_N1(B, sieve()), n2 = count_N2(B, sieve());
    for (int mask = 0; mask < 16; ++mask) {
        std::array<int, 4> l{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1};
        const int w = l[0] + l[1] + l[2] + l[3];
        const auto got = region_count(B, l, sieve());
        if (w == 1 || w == 3)
            CHECK(got == n1);
        else if (l[0] != l[1] && l[2] != l[3])
            CHECK(got == n2);
        else
            CHECK(got == 0);
    }
}

TEST_CASE("N1 stays under the crude cardinality bound") {
    for (std::uint64_t B : {10u, 50u, 100u}) {
        const double b = static_cast<double>(B);
        CHECK(static_cast<double>(count_N1(B, sieve())) <= 4 * b * b * (1 + std::log(b)));
    }
}

TEST_CASE("ceiling") {
    CountOptions o;
    o.ceiling = 50;
    CHECK_THROWS_AS(count_N(51, sieve(), o), std::out_of_range);
    CHECK_THROWS_AS(count_N(0, sieve()), std::invalid_argument);
}

TEST_CASE("decomposition") {
    auto d = decompose({1, 1, 1, 1}, sieve());
    CHECK(d.b == A4{1, 1, 1, 1});
    CHECK(d.m == A4{1, 1, 1, 1});
    CHECK(d.s == A4{1, 1, 1, 1});
    CHECK(d.sigma == std::array<int, 4>{0, 0, 0, 0});

    d = decompose({6, 1, 3, 5}, sieve());
    CHECK(d.m == A4{3, 1, 1, 1});
    CHECK(d.sigma == std::array<int, 4>{1, 0, 0, 0});
    CHECK(d.s == A4{1, 1, 1, 5});
    CHECK(d.b == A4{1, 1, 1, 1});

    d = decompose({12, 1, 1, 1}, sieve());
    CHECK(d.b == A4{2, 1, 1, 1});
    CHECK(d.m == A4{1, 1, 1, 1});
    CHECK(d.s == A4{3, 1, 1, 1});
    CHECK(d.sigma == std::array<int, 4>{0, 0, 0, 0});
}

TEST_CASE("decomposition reconstructs its input") {
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 3000) {
        A4 t;
        for (auto& x : t) x = 1 + static_cast<std::int64_t>(rng() % 2000);
        if (std::gcd(t[0], t[1]) != 1 || std::gcd(t[2], t[3]) != 1) continue;
        auto d = decompose(t, sieve());
        REQUIRE(reconstruct(d) == t);
        for (auto s : d.s) REQUIRE(s % 2 == 1);
        ++done;
    }
}

TEST_CASE("hyperbola split") {
    std::array<TestFunction, 4> ones;
    for (auto& g : ones) g = [](std::int64_t) { return std::int64_t{1}; };
    CHECK(hyperbola_split_check(30, 5, {1, 1, 1, 1}, ones));

    std::array<TestFunction, 4> pm;
    for (int j = 0; j < 4; ++j)
        pm[j] = [j](std::int64_t n) { return ((n * 2654435761u + j * 40503u) >> 7) & 1 ? std::int64_t{1} : std::int64_t{-1}; };
    CHECK(hyperbola_split_check(50, 7, {1, 2, 1, 3}, pm));

    std::array<TestFunction, 4> ident;
    for (auto& g : ident) g = [](std::int64_t n) { return n; };
    CHECK(hyperbola_split_check(16, 4, {1, 1, 1, 1}, ident));
    CHECK_THROWS_AS(hyperbola_split_check(16, 5, {1, 1, 1, 1}, ident), std::invalid_argument);
}
