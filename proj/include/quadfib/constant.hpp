#pragma once

#include <array>
#include <cstdint>

#include <boost/rational.hpp>

#include "quadfib/arith.hpp"

namespace qf {

using Rational = boost::rational<std::int64_t>;

struct VariantKey {
    int r = 1;
    int i = 2;
};
// Throws std::invalid_argument unless (r, i) is one of (1,2), (1,3), (2,2), (2,3).
void validate(VariantKey k);
constexpr std::array<VariantKey, 4> kVariantKeys{{{1, 2}, {1, 3}, {2, 2}, {2, 3}}};

Rational rho(VariantKey k);
int rho_prime(VariantKey k, std::uint64_t p);

// Sums of 4^-(mu0+mu1+mu2+mu3) over mu with min(mu0,mu1) = min(mu2,mu3) = 0, weighted by
// 1, the number of zero entries, and (#zeros among mu0,mu1) * (#zeros among mu2,mu3).
struct MuSums {
    Rational plain, zero_count, pair_product;
    long double plain_direct = 0, zero_count_direct = 0, pair_product_direct = 0;
    bool agree = false;
};
MuSums mu_power_sums();

// rho rebuilt from the mod-8 sums and MuSums; must equal rho().
Rational rho_from_parts(VariantKey k);

// 5 rho(1,2) / 256 == 935/36 and rho(2,3) / 256 == 25/36.
bool coefficient_identities();

long double euler_factor(VariantKey k, std::uint64_t p);
// Exact local factor for p <= 1000.
Rational euler_factor_exact(VariantKey k, std::int64_t p);

enum class ProductRoute {
    Accelerated,  // divide out zeta-type factors with known closed forms, truncate the rest
    Plain,        // truncate the product itself
};

struct EulerProductResult {
    long double value = 0;
    std::uint64_t prime_limit = 0;
    long double tail_radius = 0;  // bound on |log(true / truncated)|
};

// Bounds on the tail terms: |log f(p)| <= kPlainTailC / p^2 and |log g(p)| <= kAcceleratedTailC / p^3.
constexpr long double kPlainTailC = 7.0L;
constexpr long double kAcceleratedTailC = 8.0L;
// Checks both bounds for 3 <= p <= limit. Called once before the first product is evaluated.
bool verify_tail_constants(std::uint64_t limit = 1000);

constexpr long double kCatalan = 0.915965594177219015054603514932384110774L;

// The product over odd primes of euler_factor, with rho / (256 pi^2) in front.
EulerProductResult constant_cri(VariantKey k, std::uint64_t prime_limit, const SpfSieve& sieve,
                                ProductRoute route = ProductRoute::Accelerated);

struct LeadingConstant {
    EulerProductResult closed;               // the two-product closed form (returned value)
    std::array<EulerProductResult, 4> cri;   // plain truncations, in kVariantKeys order
    long double weighted = 0;                // 2 c12 + 2 c13 + c22 + c23
    long double weighted_radius = 0;         // absolute
    long double closed_radius = 0;           // absolute
    bool agree = false;
};
// Throws std::logic_error when the two routes disagree beyond the combined radii.
LeadingConstant leading_constant(std::uint64_t prime_limit, const SpfSieve& sieve);

// c B^2 log log B / log B; B >= 3.
long double main_term(long double B, long double c);

}  // namespace qf
