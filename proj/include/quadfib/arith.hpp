#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace qf {

using i128 = __int128;
using u128 = unsigned __int128;

struct Factorization {
    std::uint64_t n = 1;
    std::vector<std::pair<std::uint64_t, int>> factors;  // (prime, exponent), primes increasing
};

// Smallest-prime-factor table for 2..limit. Immutable after construction.
class SpfSieve {
public:
    explicit SpfSieve(std::uint32_t limit);

    std::uint32_t limit() const { return limit_; }
    std::uint32_t spf(std::uint32_t k) const;
    bool is_prime(std::uint64_t n) const;
    const std::vector<std::uint32_t>& primes() const { return primes_; }

    // Any n >= 1. Trial division by the sieve primes, Pollard rho beyond that.
    Factorization factor(std::uint64_t n) const;

private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

// Jacobi symbol (a/n). n must be odd and positive; (a/1) = 1.
int jacobi(i128 a, i128 n);

// Unchecked variant for 0 <= a and odd n > 0.
inline int jacobi_u64(std::uint64_t a, std::uint64_t n) {
    a %= n;
    int t = 1;
    while (a != 0) {
        int z = __builtin_ctzll(a);
        a >>= z;
        if ((z & 1) && ((n & 7) == 3 || (n & 7) == 5)) t = -t;
        if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        std::uint64_t r = n % a;
        n = a;
        a = r;
    }
    return n == 1 ? t : 0;
}

struct OddPart {
    int e;
    i128 m;
};
// n = 2^e * m with m odd. Rejects 0.
OddPart odd_part(i128 n);

struct SquarefreeSplit {
    std::int64_t a;  // squarefree, same sign as n
    std::int64_t b;  // b >= 1
};
// n = a * b^2. Requires |n| <= sieve.limit().
SquarefreeSplit squarefree_split(std::int64_t n, const SpfSieve& sieve);

// Signed squarefree kernel for any nonzero 64-bit n, via factorization.
std::int64_t squarefree_kernel(std::int64_t n, const SpfSieve& sieve);

std::uint64_t tau(const Factorization& f);
int mu_squared(const Factorization& f);
int omega(const Factorization& f);
int valuation(std::uint64_t n, std::uint64_t p);
bool is_square(i128 n);
std::uint64_t isqrt(u128 n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
bool is_prime_u64(std::uint64_t n);

}  // namespace qf
