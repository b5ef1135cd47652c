#include <doctest.h>

#include <numeric>
#include <ostream>
#include <stdexcept>

#include <random>

#include "quadfib/solubility.hpp"

using namespace qf;

namespace {
const SpfSieve& sieve() {
    static const SpfSieve s(100000);
    return s;
}
Quadric Q(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) { return Quadric{{a, b, c, d}}; }
}  // namespace

TEST_CASE("normalize") {
    CHECK(normalize(Q(4, 9, 25, 49), sieve()).a == std::array<std::int64_t, 4>{1, 1, 1, 1});
    CHECK(normalize(Q(2, 2, 2, 2), sieve()).a == std::array<std::int64_t, 4>{1, 1, 1, 1});
    CHECK(normalize(Q(12, -45, 7, 2), sieve()).a == std::array<std::int64_t, 4>{3, -5, 7, 2});
}

TEST_CASE("real place") {
    CHECK(solvable_real(Q(1, 1, 1, 1)) == Verdict::Insoluble);
    CHECK(solvable_real(Q(-1, 1, 1, -1)) == Verdict::Soluble);
    CHECK(solvable_real(Q(-1, -1, -1, -1)) == Verdict::Insoluble);
}

TEST_CASE("odd primes") {
    CHECK(local_indicator_odd(Q(1, 1, 1, -1), 3) == Verdict::Soluble);
    CHECK(local_indicator_odd(Q(3, 3, 1, 1), 3) == Verdict::Insoluble);
    CHECK(local_indicator_odd(Q(3, 3, 1, 2), 3) == Verdict::Soluble);
}

TEST_CASE("prime 2") {
    CHECK(local_indicator_2(Q(1, 1, 1, 1)) == Verdict::Insoluble);
    CHECK(local_indicator_2(Q(1, 7, 1, 7)) == Verdict::Soluble);
    CHECK(local_indicator_2(Q(2, 2, 1, 7)) == Verdict::Soluble);
}

TEST_CASE("mod 8 sets") {
    CHECK(mod8_set_A1().count() == 240);
    CHECK(mod8_set_A2().count() == 224);
    CHECK(count_with_product_one(mod8_set_A1()) == 48);
    CHECK(count_with_product_one(mod8_set_A2()) == 32);
    CHECK_FALSE(mod8_set_A1().test(mod8_index({1, 1, 1, 1})));
    CHECK(mod8_set_permuted(0, 1, 2, 3) == mod8_set_A2());
}

TEST_CASE("hilbert symbol") {
    CHECK(hilbert_symbol(-1, -1, Place::real()) == -1);
    CHECK(hilbert_symbol(-1, -1, Place::two()) == -1);
    for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u})
        CHECK(hilbert_symbol(p, p, Place::odd(p)) == jacobi(-1, p));
}

TEST_CASE("hilbert symbol is bilinear and symmetric") {
    std::mt19937_64 rng(3);
    auto draw = [&] {
        std::int64_t x = static_cast<std::int64_t>(rng() % 401) - 200;
        return x == 0 ? 1 : x;
    };
    for (int i = 0; i < 3000; ++i) {
        std::int64_t a = draw(), b = draw(), c = draw();
        for (std::uint64_t p : {0u, 2u, 3u, 5u, 7u}) {
            Place v = Place::of_prime(p);
            REQUIRE(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v));
            REQUIRE(hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v));
            REQUIRE(hilbert_symbol(a, -a, v) == 1);
        }
    }
}

TEST_CASE("oracle examples") {
    CHECK(padic_oracle(Q(1, 1, 1, -1), Place::odd(5), 4) == Verdict::Soluble);
    CHECK(padic_oracle(Q(3, 3, 1, 1), Place::odd(3), 4) == Verdict::Insoluble);
    CHECK(padic_oracle(Q(1, 1, 1, 1), Place::two(), 6) == Verdict::Insoluble);
    CHECK_THROWS_AS(padic_oracle(Q(1, 1, 1, 1), Place::odd(3), 40), std::out_of_range);
}

TEST_CASE("global test") {
    CHECK(has_rational_point(Q(1, 1, -1, -1), sieve()));
    CHECK_FALSE(has_rational_point(Q(1, 1, 1, 1), sieve()));
    CHECK_FALSE(has_rational_point(Q(1, 1, 1, -7), sieve()));
    auto v = local_verdicts(Q(1, 1, 1, -7), sieve());
    for (const auto& pv : v) CHECK((pv.verdict == Verdict::Insoluble) == (pv.place.kind == Place::Two));
}

TEST_CASE("rational points") {
    auto p = find_rational_point(Q(1, 1, -1, -1), 1);
    REQUIRE(p);
    CHECK(*p == std::array<std::int64_t, 4>{1, 0, 1, 0});
    CHECK_FALSE(find_rational_point(Q(1, 1, 1, 1), 5));
    auto z = find_rational_point(Q(1, -2, 3, -5), 10);
    REQUIRE(z);
    std::int64_t s = (*z)[0] * (*z)[0] - 2 * (*z)[1] * (*z)[1] + 3 * (*z)[2] * (*z)[2] - 5 * (*z)[3] * (*z)[3];
    CHECK(s == 0);
}

// A small search hit must agree with the local verdicts.
TEST_CASE("search hits are everywhere locally soluble") {
    for (std::int64_t a = -6; a <= 6; ++a)
        for (std::int64_t b = -6; b <= 6; ++b)
            for (std::int64_t c = 1; c <= 6; ++c) {
                if (!a || !b) continue;
                Quadric q = Q(a, b, c, -1);
                if (find_rational_point(q, 6)) REQUIRE(is_everywhere_locally_soluble(q, sieve()));
            }
}
