#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include <cmath>

#include "quadfib/constant.hpp"

using namespace qf;

namespace {
const SpfSieve& sieve() {
    static const SpfSieve s(1000000);
    return s;
}
}  // namespace

TEST_CASE("rho values") {
    CHECK(rho({1, 2}) == Rational(11968, 9));
    CHECK(rho({2, 3}) == Rational(1600, 9));
    CHECK(rho_prime({2, 3}, 5) == 1);
    CHECK(rho_prime({2, 3}, 7) == -1);
    CHECK(rho_prime({1, 3}, 7) == 1);
    CHECK_THROWS_AS(rho({3, 3}), std::invalid_argument);
    for (auto k : kVariantKeys) CHECK(rho_from_parts(k) == rho(k));
}

TEST_CASE("mu sums") {
    auto mu = mu_power_sums();
    CHECK(mu.plain == Rational(25, 9));
    CHECK(mu.zero_count == Rational(80, 9));
    CHECK(mu.pair_product == Rational(64, 9));
    CHECK(mu.agree);
}

TEST_CASE("coefficient identities") {
    CHECK(5 * Rational(11968, 9) / 256 == Rational(935, 36));
    CHECK(Rational(1600, 9) / 256 == Rational(25, 36));
    CHECK(coefficient_identities());
}

TEST_CASE("Euler factors") {
    // 1 + 2/3 + 4/9 + 2/27 + 1/81 = 178/81.
    CHECK(euler_factor_exact({1, 2}, 3) == Rational(89, 72));
    CHECK(euler_factor_exact({2, 3}, 3) == Rational(71, 72));
    for (auto k : kVariantKeys)
        for (std::int64_t p : {3, 5, 7, 97, 997}) {
            auto e = euler_factor_exact(k, p);
            CHECK(std::fabs(static_cast<double>(euler_factor(k, p)) -
                            static_cast<double>(e.numerator()) / e.denominator()) < 1e-15);
        }
    CHECK(std::fabs(euler_factor({1, 2}, 999983) - 1) < 1e-11);
    CHECK_THROWS_AS(euler_factor_exact({1, 2}, 1009), std::out_of_range);
    CHECK(verify_tail_constants(20000));
}

TEST_CASE("truncated products") {
    auto a = constant_cri({1, 2}, 10000, sieve());
    auto b = constant_cri({1, 2}, 100000, sieve());
    auto c = constant_cri({1, 2}, 1000000, sieve());
    CHECK(b.tail_radius < a.tail_radius);
    CHECK(std::fabs(c.value - b.value) < 1e-6);
    CHECK(std::fabs(c.value - b.value) <= b.tail_radius * b.value);
    auto plain = constant_cri({2, 3}, 100000, sieve(), ProductRoute::Plain);
    auto acc = constant_cri({2, 3}, 100000, sieve());
    CHECK(std::fabs(plain.value - acc.value) <= plain.value * std::expm1(plain.tail_radius) + acc.value * acc.tail_radius);
    CHECK_THROWS_AS(constant_cri({1, 2}, 2000000, sieve()), std::out_of_range);
}

TEST_CASE("leading constant") {
    auto lc = leading_constant(100000, sieve());
    CHECK(lc.agree);
    CHECK(lc.closed.value > 0);
    CHECK(lc.closed.value == doctest::Approx(4.1581269044).epsilon(1e-9));
}

TEST_CASE("main term") {
    const long double e = std::exp(1.0L);
    const long double Be = std::exp(e);
    CHECK(static_cast<double>(main_term(Be, 1)) == doctest::Approx(static_cast<double>(Be * Be / e)));
    const long double B = 1000, k = 3;
    const long double ratio = main_term(k * B, 2) / main_term(B, 2);
    const long double want = k * k * std::log(std::log(k * B)) / std::log(std::log(B)) * std::log(B) / std::log(k * B);
    CHECK(static_cast<double>(ratio) == doctest::Approx(static_cast<double>(want)));
    CHECK(std::isfinite(static_cast<double>(main_term(1e4L, 4.15))));
    CHECK_THROWS_AS(main_term(2, 1), std::invalid_argument);
}
