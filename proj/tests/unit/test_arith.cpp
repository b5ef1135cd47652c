#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include <random>

#include "quadfib/arith.hpp"

using namespace qf;

namespace {
const SpfSieve& sieve() {
    static const SpfSieve s(100000);
    return s;
}

int legendre_by_euler(std::int64_t a, std::int64_t p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    std::int64_t r = 1, b = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}
}  // namespace

TEST_CASE("jacobi small values") {
    CHECK(jacobi(1, 45) == 1);
    CHECK(jacobi(3, 5) == -1);
    CHECK(jacobi(2, 15) == 1);
    CHECK(jacobi(5, 15) == 0);
    CHECK(jacobi(-1, 7) == -1);
    CHECK_THROWS_AS(jacobi(3, 8), std::invalid_argument);
    CHECK_THROWS_AS(jacobi(3, -5), std::invalid_argument);
}

TEST_CASE("jacobi is multiplicative and matches Euler's criterion") {
    for (std::uint32_t p : sieve().primes()) {
        if (p == 2) continue;
        if (p > 400) break;
        for (std::int64_t a = -50; a <= 50; ++a) REQUIRE(jacobi(a, p) == legendre_by_euler(a, p));
    }
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        std::int64_t a = static_cast<std::int64_t>(rng() % 20001) - 10000;
        std::int64_t n = 2 * static_cast<std::int64_t>(rng() % 5000) + 1;
        std::int64_t m = 2 * static_cast<std::int64_t>(rng() % 5000) + 1;
        REQUIRE(jacobi(a, n * m) == jacobi(a, n) * jacobi(a, m));
        if (a > 0) REQUIRE(jacobi(a, n) == jacobi_u64(static_cast<std::uint64_t>(a), n));
    }
}

TEST_CASE("quadratic reciprocity for odd coprime pairs") {
    for (std::int64_t m = 3; m < 200; m += 2)
        for (std::int64_t n = 3; n < 200; n += 2) {
            if (std::gcd(m, n) != 1) continue;
            int sign = ((m - 1) / 2 * ((n - 1) / 2)) % 2 ? -1 : 1;
            REQUIRE(jacobi(m, n) * jacobi(n, m) == sign);
        }
}

TEST_CASE("odd part and squarefree split") {
    auto o = odd_part(40);
    CHECK(o.e == 3);
    CHECK(o.m == 5);
    o = odd_part(-6);
    CHECK(o.e == 1);
    CHECK(o.m == -3);
    o = odd_part(7);
    CHECK(o.e == 0);
    CHECK(o.m == 7);

    auto s = squarefree_split(12, sieve());
    CHECK(s.a == 3);
    CHECK(s.b == 2);
    s = squarefree_split(-50, sieve());
    CHECK(s.a == -2);
    CHECK(s.b == 5);
    s = squarefree_split(7, sieve());
    CHECK(s.a == 7);
    CHECK(s.b == 1);
    for (std::int64_t n = -3000; n <= 3000; ++n) {
        if (n == 0) continue;
        auto q = squarefree_split(n, sieve());
        REQUIRE(q.a * q.b * q.b == n);
        REQUIRE(mu_squared(sieve().factor(static_cast<std::uint64_t>(std::abs(q.a)))) == 1);
    }
}

TEST_CASE("divisor functions and squares") {
    CHECK(tau(sieve().factor(12)) == 6);
    CHECK(mu_squared(sieve().factor(12)) == 0);
    CHECK(omega(sieve().factor(60)) == 3);
    CHECK_FALSE(is_square(-4));
    CHECK(is_square(0));
    CHECK(is_square(144));
    CHECK_FALSE(is_square(143));
    CHECK(isqrt(99) == 9);
    CHECK(valuation(96, 2) == 5);
}

TEST_CASE("sieve factorization reproduces n") {
    for (std::uint64_t n = 1; n < 20000; ++n) {
        auto f = sieve().factor(n);
        std::uint64_t prod = 1;
        for (auto [p, e] : f.factors) {
            REQUIRE(sieve().is_prime(p));
            for (int i = 0; i < e; ++i) prod *= p;
        }
        REQUIRE(prod == n);
    }
    CHECK(sieve().is_prime(99991));
    CHECK(is_prime_u64(1000000007ull));
    CHECK_FALSE(is_prime_u64(1000000007ull * 3));
}
