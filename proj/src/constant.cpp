#include "quadfib/constant.hpp"

#include <cfloat>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "quadfib/charsum.hpp"

namespace qf {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// Neumaier's compensated sum.
struct CompensatedSum {
    long double sum = 0, comp = 0;
    void add(long double x) {
        long double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    long double value() const { return sum + comp; }
};

bool twisted(VariantKey k) { return k.r == 2 && k.i == 3; }

int chi4(std::uint64_t p) { return p % 4 == 1 ? 1 : -1; }

// log of the factor with the p^-2 terms divided out; O(p^-3).
long double log_accelerated(VariantKey k, std::uint64_t p) {
    const long double u = 1.0L / static_cast<long double>(p);
    const long double lf = std::log(euler_factor(k, p));
    if (!twisted(k)) return lf + 3 * std::log1p(-u * u);
    const long double c = chi4(p);
    return lf + std::log1p(-u * u) + 2 * std::log1p(-c * u * u);
}

void ensure_tail_constants() {
    static std::once_flag once;
    static bool ok = false;
    std::call_once(once, [] { ok = verify_tail_constants(1000); });
    if (!ok) throw std::logic_error("Euler factor tail bound failed its startup check");
}

}  // namespace

void validate(VariantKey k) {
    for (auto v : kVariantKeys)
        if (v.r == k.r && v.i == k.i) return;
    throw std::invalid_argument("variant key must be one of (1,2), (1,3), (2,2), (2,3)");
}

Rational rho(VariantKey k) {
    validate(k);
    return twisted(k) ? Rational(1600, 9) : Rational(11968, 9);
}

int rho_prime(VariantKey k, std::uint64_t p) {
    validate(k);
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("rho_prime: p must be an odd prime");
    return twisted(k) ? chi4(p) : 1;
}

MuSums mu_power_sums() {
    MuSums out;
    // One pair (mu0, mu1) with min = 0: weight 1 at (0,0), 4^-a at (a,0) and (0,a).
    const Rational geometric(1, 3);  // sum_{a >= 1} 4^-a
    const Rational pair = 1 + 2 * geometric;
    const Rational zeros = 2 + 2 * geometric;
    out.plain = pair * pair;
    out.zero_count = 2 * zeros * pair;
    out.pair_product = zeros * zeros;

    long double p = 0, z = 0, pp = 0;
    for (int a0 = 0; a0 < 40; ++a0)
        for (int a1 = 0; a1 < 40; ++a1) {
            if (a0 && a1) continue;
            for (int a2 = 0; a2 < 40; ++a2)
                for (int a3 = 0; a3 < 40; ++a3) {
                    if (a2 && a3) continue;
                    const long double w = std::pow(4.0L, -(a0 + a1 + a2 + a3));
                    const int z01 = (a0 == 0) + (a1 == 0), z23 = (a2 == 0) + (a3 == 0);
                    p += w;
                    z += w * (z01 + z23);
                    pp += w * z01 * z23;
                }
        }
    out.plain_direct = p;
    out.zero_count_direct = z;
    out.pair_product_direct = pp;
    auto close = [](long double x, Rational r) {
        const long double e = static_cast<long double>(r.numerator()) / r.denominator();
        return std::fabs(x - e) <= 64 * LDBL_EPSILON * e;
    };
    out.agree = close(p, out.plain) && close(z, out.zero_count) && close(pp, out.pair_product);
    return out;
}

Rational rho_from_parts(VariantKey k) {
    validate(k);
    const CountVariant v{k.r};
    auto sigma = [&](const Vec4& m) {
        const Bits4 zero{};
        return k.i == 2 ? sigma_r2(m, zero, v) : sigma_r3(m, zero, v);
    };
    // Odd case at m = 1; the (-1/m) of the twisted key lives in rho_prime.
    const std::int64_t odd = sigma({1, 1, 1, 1});
    const std::int64_t even = sigma({2, 1, 1, 1});
    const MuSums mu = mu_power_sums();
    return Rational(odd) * mu.plain + Rational(even, 2) * mu.zero_count + Rational(even, 4) * mu.pair_product;
}

bool coefficient_identities() {
    return 5 * rho({1, 2}) / 256 == Rational(935, 36) && rho({2, 3}) / 256 == Rational(25, 36);
}

long double euler_factor(VariantKey k, std::uint64_t p) {
    const long double u = 1.0L / static_cast<long double>(p);
    const int rp = rho_prime(k, p);
    const long double inner = 1 + 2 * u + 2 * (rp + 1) * u * u + 2 * u * u * u + u * u * u * u;
    const long double lead = 1 / ((1 + u) * (1 + u));
    return lead * inner;
}

Rational euler_factor_exact(VariantKey k, std::int64_t p) {
    if (p > 1000) throw std::out_of_range("euler_factor_exact: p must be at most 1000");
    const int rp = rho_prime(k, static_cast<std::uint64_t>(p));
    const std::int64_t p2 = p * p, p3 = p2 * p, p4 = p3 * p;
    const Rational inner = 1 + Rational(2, p) + Rational(2 * (rp + 1), p2) + Rational(2, p3) + Rational(1, p4);
    return Rational(p2, (p + 1) * (p + 1)) * inner;
}

bool verify_tail_constants(std::uint64_t limit) {
    for (auto k : kVariantKeys)
        for (std::uint64_t p = 3; p <= limit; p += 2) {
            const long double pp = static_cast<long double>(p);
            if (std::fabs(std::log(euler_factor(k, p))) * pp * pp > kPlainTailC) return false;
            if (std::fabs(log_accelerated(k, p)) * pp * pp * pp > kAcceleratedTailC) return false;
        }
    return true;
}

EulerProductResult constant_cri(VariantKey k, std::uint64_t prime_limit, const SpfSieve& sieve, ProductRoute route) {
    validate(k);
    if (prime_limit < 3) throw std::invalid_argument("prime_limit must be at least 3");
    if (prime_limit > sieve.limit()) throw std::out_of_range("prime_limit exceeds the sieve limit");
    ensure_tail_constants();

    CompensatedSum logs;
    std::uint64_t count = 0;
    for (std::uint32_t p : sieve.primes()) {
        if (p > prime_limit) break;
        if (p == 2) continue;
        logs.add(route == ProductRoute::Accelerated ? log_accelerated(k, p) : std::log(euler_factor(k, p)));
        ++count;
    }
    const Rational r = rho(k);
    const long double front = static_cast<long double>(r.numerator()) / r.denominator() / (256 * kPi * kPi);
    const long double P = static_cast<long double>(prime_limit);
    EulerProductResult out;
    out.prime_limit = prime_limit;
    long double product = std::exp(logs.value());
    if (route == ProductRoute::Accelerated) {
        // prod_{p odd} (1 - p^-2)^-1 = pi^2 / 8 and prod_{p odd} (1 - chi4(p) p^-2)^-1 = Catalan's constant.
        const long double z2 = kPi * kPi / 8;
        product *= twisted(k) ? z2 * kCatalan * kCatalan : z2 * z2 * z2;
        out.tail_radius = kAcceleratedTailC / (2 * P * P);
    } else {
        out.tail_radius = kPlainTailC / P;
    }
    out.tail_radius += 4 * static_cast<long double>(count + 16) * LDBL_EPSILON;
    out.value = front * product;
    return out;
}

LeadingConstant leading_constant(std::uint64_t prime_limit, const SpfSieve& sieve) {
    LeadingConstant lc;
    const auto p1 = constant_cri({1, 2}, prime_limit, sieve);
    const auto p2 = constant_cri({2, 3}, prime_limit, sieve);
    // Strip rho / (256 pi^2) back off to get the bare products.
    const long double P1 = p1.value * 256 * kPi * kPi * 9 / 11968;
    const long double P2 = p2.value * 256 * kPi * kPi * 9 / 1600;
    const long double a = 935 / (36 * kPi * kPi) * P1;
    const long double b = 25 / (36 * kPi * kPi) * P2;
    lc.closed.value = a + b;
    lc.closed.prime_limit = prime_limit;
    lc.closed.tail_radius = std::max(p1.tail_radius, p2.tail_radius);
    lc.closed_radius = a * std::expm1(p1.tail_radius) + b * std::expm1(p2.tail_radius);

    const std::array<long double, 4> w{2, 2, 1, 1};
    for (int j = 0; j < 4; ++j) {
        lc.cri[j] = constant_cri(kVariantKeys[j], prime_limit, sieve, ProductRoute::Plain);
        lc.weighted += w[j] * lc.cri[j].value;
        lc.weighted_radius += w[j] * lc.cri[j].value * std::expm1(lc.cri[j].tail_radius);
    }
    lc.agree = std::fabs(lc.weighted - lc.closed.value) <= lc.weighted_radius + lc.closed_radius;
    if (!lc.agree) throw std::logic_error("leading_constant: routes disagree beyond the tail radii");
    return lc;
}

long double main_term(long double B, long double c) {
    if (!(B >= 3)) throw std::invalid_argument("main_term: B must be at least 3");
    return c * B * B * std::log(std::log(B)) / std::log(B);
}

}  // namespace qf
