#include "quadfib/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qf {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

// Brent's variant; the constant c walks 1, 2, 3, ... so runs are reproducible.
std::uint64_t pollard_rho(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        const std::uint64_t m = 128;
        std::uint64_t r = 1;
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

SpfSieve::SpfSieve(std::uint32_t limit) : limit_(std::max<std::uint32_t>(limit, 2)), spf_(limit_ + 1, 0) {
    for (std::uint32_t i = 2; i <= limit_; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = i;
            primes_.push_back(i);
        }
        for (std::uint32_t p : primes_) {
            if (p > spf_[i] || static_cast<std::uint64_t>(p) * i > limit_) break;
            spf_[p * i] = p;
        }
    }
}

std::uint32_t SpfSieve::spf(std::uint32_t k) const {
    if (k < 2 || k > limit_) throw std::out_of_range("spf: argument outside sieve range");
    return spf_[k];
}

bool SpfSieve::is_prime(std::uint64_t n) const {
    if (n <= limit_) return n >= 2 && spf_[n] == n;
    return is_prime_u64(n);
}

Factorization SpfSieve::factor(std::uint64_t n) const {
    if (n == 0) throw std::invalid_argument("factor: zero has no factorization");
    Factorization f;
    f.n = n;
    std::vector<std::uint64_t> ps;
    std::uint64_t m = n;
    if (m > limit_) {
        for (std::uint32_t p : primes_) {
            if (static_cast<std::uint64_t>(p) * p > m || m <= limit_) break;
            while (m % p == 0) {
                ps.push_back(p);
                m /= p;
            }
        }
    }
    if (m <= limit_) {
        while (m > 1) {
            std::uint32_t p = spf_[m];
            ps.push_back(p);
            m /= p;
        }
    } else {
        factor_rec(m, ps);
    }
    std::sort(ps.begin(), ps.end());
    for (std::uint64_t p : ps) {
        if (!f.factors.empty() && f.factors.back().first == p)
            ++f.factors.back().second;
        else
            f.factors.push_back({p, 1});
    }
    return f;
}

int jacobi(i128 a, i128 n) {
    if (n <= 0 || (n & 1) == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
    a %= n;
    if (a < 0) a += n;
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            int r = static_cast<int>(n & 7);
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

OddPart odd_part(i128 n) {
    if (n == 0) throw std::invalid_argument("odd_part: zero");
    int e = 0;
    while ((n & 1) == 0) {
        n /= 2;
        ++e;
    }
    return {e, n};
}

SquarefreeSplit squarefree_split(std::int64_t n, const SpfSieve& sieve) {
    if (n == 0) throw std::invalid_argument("squarefree_split: zero");
    std::uint64_t m = n < 0 ? 0 - static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
    if (m > sieve.limit()) throw std::out_of_range("squarefree_split: |n| exceeds sieve limit");
    std::int64_t a = 1, b = 1;
    std::uint32_t r = static_cast<std::uint32_t>(m);
    while (r > 1) {
        std::uint32_t p = sieve.spf(r);
        int e = 0;
        while (r % p == 0) {
            r /= p;
            ++e;
        }
        if (e & 1) a *= p;
        for (int i = 0; i < e / 2; ++i) b *= p;
    }
    return {n < 0 ? -a : a, b};
}

std::int64_t squarefree_kernel(std::int64_t n, const SpfSieve& sieve) {
    if (n == 0) throw std::invalid_argument("squarefree_kernel: zero");
    std::uint64_t m = n < 0 ? 0 - static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
    std::uint64_t a = 1;
    for (auto [p, e] : sieve.factor(m).factors)
        if (e & 1) a *= p;
    return n < 0 ? -static_cast<std::int64_t>(a) : static_cast<std::int64_t>(a);
}

std::uint64_t tau(const Factorization& f) {
    std::uint64_t t = 1;
    for (auto& pe : f.factors) t *= static_cast<std::uint64_t>(pe.second + 1);
    return t;
}

int mu_squared(const Factorization& f) {
    for (auto& pe : f.factors)
        if (pe.second > 1) return 0;
    return 1;
}

int omega(const Factorization& f) { return static_cast<int>(f.factors.size()); }

int valuation(std::uint64_t n, std::uint64_t p) {
    if (n == 0 || p < 2) throw std::invalid_argument("valuation: need n > 0 and p >= 2");
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

std::uint64_t isqrt(u128 n) {
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(i128 n) {
    if (n < 0) return false;
    std::uint64_t r = isqrt(static_cast<u128>(n));
    return static_cast<i128>(r) * r == n;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace qf
