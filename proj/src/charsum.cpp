#include "quadfib/charsum.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace qf {

namespace {

std::int64_t odd_of(std::int64_t n) {
    while (n % 2 == 0) n /= 2;
    return n;
}

int v2_of(std::int64_t n) {
    int e = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++e;
    }
    return e;
}

// Trial division; arguments here are products of a few small numbers.
bool squarefree_small(std::uint64_t n) {
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

int omega_small(std::uint64_t n) {
    int w = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ++w;
        while (n % p == 0) n /= p;
    }
    return w + (n > 1);
}

std::vector<std::int64_t> divisors_small(std::int64_t n) {
    std::vector<std::int64_t> lo, hi;
    for (std::int64_t d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) hi.push_back(n / d);
        }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

std::int64_t prod(const Vec4& x) { return x[0] * x[1] * x[2] * x[3]; }
int sum(const Bits4& x) { return x[0] + x[1] + x[2] + x[3]; }

int jac(i128 a, i128 n) { return jacobi(a, n); }

// Enumerate every 4-tuple drawn from per-coordinate lists.
template <class F>
void for_each_tuple(const std::array<std::vector<std::int64_t>, 4>& lists, F f) {
    Vec4 x;
    for (auto a : lists[0]) {
        x[0] = a;
        for (auto b : lists[1]) {
            x[1] = b;
            for (auto c : lists[2]) {
                x[2] = c;
                for (auto d : lists[3]) {
                    x[3] = d;
                    f(x);
                }
            }
        }
    }
}

const std::array<Bits4, 5>& sigma_options() {
    static const std::array<Bits4, 5> opts{{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
    return opts;
}

bool is_odd_case(const Vec4& m, const Bits4& sigma) { return prod(m) % 2 != 0 && sum(sigma) == 0; }

template <class Weight>
std::int64_t mod8_sum(const Vec4& m, const Bits4& sigma, CountVariant v, Weight weight) {
    const Mod8Set& A = set_A(m, sigma);
    const int d = v.delta();
    const int o1 = static_cast<int>(odd_of(m[1] * m[2]) % 8);
    const int o2 = static_cast<int>(odd_of(m[0] * m[3]) % 8);
    auto red = [](int x) { return ((x % 8) + 8) % 8; };
    const auto units = mod8_units4();
    std::int64_t total = 0;
    for (const Mod8& q : elements(A)) {
        const int c0 = red(-d * q[0]), c1 = q[1], c2 = red(d * q[2]), c3 = red(-q[3]);
        for (const Mod8& L : units) {
            if ((L[0] * L[2] * o1) % 8 != c0) continue;
            if ((L[1] * L[3] * o1) % 8 != c1) continue;
            if ((L[1] * L[2] * o2) % 8 != c2) continue;
            if ((L[0] * L[3] * o2) % 8 != c3) continue;
            total += weight(L);
        }
    }
    return total;
}

}  // namespace

bool admissible_m_sigma(const Vec4& m, const Bits4& sigma, std::string* why) {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    for (auto x : m)
        if (x < 1) return fail("m entries must be positive");
    for (int x : sigma)
        if (x != 0 && x != 1) return fail("sigma entries must be 0 or 1");
    if (!squarefree_small(static_cast<std::uint64_t>(prod(m)))) return fail("m02 m03 m12 m13 must be squarefree");
    if (sum(sigma) > 1) return fail("at most one sigma_i may be 1");
    if (sum(sigma) == 1 && prod(m) % 2 == 0) return fail("sigma and m cannot both carry the factor 2");
    return true;
}

bool admissible(const CharsumInput& in, std::string* why) {
    if (in.v.r != 1 && in.v.r != 2) {
        if (why) *why = "r must be 1 or 2";
        return false;
    }
    if (!admissible_m_sigma(in.m, in.sigma, why)) return false;
    for (auto x : in.s)
        if (x < 1 || x % 2 == 0) {
            if (why) *why = "s entries must be odd and positive";
            return false;
        }
    if (!squarefree_small(static_cast<std::uint64_t>(prod(in.s)))) {
        if (why) *why = "s0 s1 s2 s3 must be squarefree";
        return false;
    }
    if (std::gcd(prod(in.s), prod(in.m)) != 1) {
        if (why) *why = "s must be coprime to the m product";
        return false;
    }
    return true;
}

int reciprocity_exponent(const Vec4& d, const Vec4& k, CountVariant v) {
    for (auto x : d)
        if (x < 1 || x % 2 == 0) throw std::domain_error("reciprocity_exponent: d must be odd and positive");
    for (auto x : k)
        if (x < 1 || x % 2 == 0) throw std::domain_error("reciprocity_exponent: k must be odd and positive");
    const i128 delta = v.delta();
    const i128 D = prod(d), K = prod(k);
    const i128 num = (2 - delta) * K * D - D + static_cast<i128>(k[0]) * k[1] - static_cast<i128>(k[2]) * k[3] - (1 - delta);
    if (num % 4 != 0) throw std::domain_error("reciprocity_exponent: numerator not divisible by 4");
    i128 f = num / 4;
    return static_cast<int>(((f % 2) + 2) % 2);
}

int theta2(const Vec4& d, const Vec4& dt, const Vec4& k, const Vec4& l) {
    return jac(prod(l), prod(d)) * jac(prod(dt), prod(k)) * jac(static_cast<i128>(l[0]) * l[1], k[2] * k[3]) *
           jac(static_cast<i128>(l[2]) * l[3], k[0] * k[1]);
}

int theta1(const Vec4& d, const Vec4& K, const Bits4& sigma, const Vec4& m, CountVariant v) {
    const int f = reciprocity_exponent(d, K, v);
    const i128 two_s = i128{1} << sum(sigma);
    const i128 two_23 = i128{1} << (sigma[2] + sigma[3]);
    const i128 two_01 = i128{1} << (sigma[0] + sigma[1]);
    const i128 two_m = i128{1} << v2_of(prod(m));
    int t = jac(two_s, prod(d)) * jac(two_23, K[0] * K[1]) * jac(two_01, K[2] * K[3]) * jac(two_m, prod(K));
    return f ? -t : t;
}

int theta_full(const Vec4& d, const Vec4& dt, const Vec4& k, const Vec4& l, const Bits4& sigma, const Vec4& m,
               CountVariant v) {
    const int f = reciprocity_exponent(d, k, v);
    const i128 Dt = prod(dt);
    const i128 a = (i128{1} << sum(sigma)) * prod(l);
    const i128 b = i128{1} << v2_of(prod(m));
    const i128 c = (i128{1} << (sigma[2] + sigma[3])) * l[2] * l[3] * Dt;
    const i128 e = (i128{1} << (sigma[0] + sigma[1])) * l[0] * l[1] * Dt;
    int t = jac(a, prod(d)) * jac(b, prod(k)) * jac(c, k[0] * k[1]) * jac(e, k[2] * k[3]);
    return f ? -t : t;
}

const Mod8Set& set_A(const Vec4& m, const Bits4& sigma) {
    std::string why;
    if (!admissible_m_sigma(m, sigma, &why)) throw std::invalid_argument("set_A: " + why);
    if (sum(sigma) == 0) {
        if ((m[1] * m[2]) % 2 == 0) return mod8_set_permuted(0, 1, 2, 3);
        if ((m[0] * m[3]) % 2 == 0) return mod8_set_permuted(2, 3, 0, 1);
        return mod8_set_A1();
    }
    if (sigma[0]) return mod8_set_permuted(0, 3, 1, 2);
    if (sigma[1]) return mod8_set_permuted(1, 2, 0, 3);
    if (sigma[2]) return mod8_set_permuted(0, 2, 1, 3);
    return mod8_set_permuted(1, 3, 0, 2);
}

Quadric charsum_quadric(const CharsumInput& in) {
    const auto& s = in.s;
    const auto& m = in.m;
    const auto& g = in.sigma;
    const std::int64_t d = in.v.delta();
    const std::int64_t a = m[1] * m[2], b = m[0] * m[3];
    return Quadric{{-d * (std::int64_t{1} << (g[0] + g[2])) * s[0] * s[2] * a,
                    (std::int64_t{1} << (g[1] + g[3])) * s[1] * s[3] * a,
                    d * (std::int64_t{1} << (g[1] + g[2])) * s[1] * s[2] * b,
                    -(std::int64_t{1} << (g[0] + g[3])) * s[0] * s[3] * b}};
}

Mod8 twoadic_vector(const CharsumInput& in) {
    const auto& s = in.s;
    const std::int64_t d = in.v.delta();
    const std::int64_t a = odd_of(in.m[1] * in.m[2]), b = odd_of(in.m[0] * in.m[3]);
    return {unit_mod8(-d * s[0] * s[2] * a), unit_mod8(s[1] * s[3] * a), unit_mod8(d * s[1] * s[2] * b),
            unit_mod8(-s[0] * s[3] * b)};
}

int indicator_via_charsum(const CharsumInput& in) {
    std::string why;
    if (!admissible(in, &why)) throw std::invalid_argument("indicator_via_charsum: " + why);
    if (!set_A(in.m, in.sigma).test(mod8_index(twoadic_vector(in)))) return 0;

    std::array<std::vector<std::int64_t>, 4> dlists, klists;
    Vec4 modd;
    for (int i = 0; i < 4; ++i) {
        modd[i] = odd_of(in.m[i]);
        dlists[i] = divisors_small(modd[i]);
        klists[i] = divisors_small(in.s[i]);
    }
    std::int64_t total = 0;
    for_each_tuple(dlists, [&](const Vec4& d) {
        Vec4 dt{modd[0] / d[0], modd[1] / d[1], modd[2] / d[2], modd[3] / d[3]};
        for_each_tuple(klists, [&](const Vec4& k) {
            Vec4 l{in.s[0] / k[0], in.s[1] / k[1], in.s[2] / k[2], in.s[3] / k[3]};
            // At p | s2 s3 the local symbol is (2^(sigma0+sigma1) s0 s1 m / p) with no delta, but f_r
            // folds a (delta / k2 k3) into the sign. Undo it.
            total += theta_full(d, dt, k, l, in.sigma, in.m, in.v) * jac(in.v.delta(), k[2] * k[3]);
        });
    });
    const std::int64_t tau = std::int64_t{1} << omega_small(static_cast<std::uint64_t>(prod(in.s) * prod(modd)));
    if (total % tau != 0 || (total / tau != 0 && total / tau != 1))
        throw std::logic_error("indicator_via_charsum: sum is not 0 or 1");
    return static_cast<int>(total / tau);
}

int indicator_direct(const CharsumInput& in, const SpfSieve& sieve) {
    return has_rational_point(charsum_quadric(in), sieve) ? 1 : 0;
}

std::int64_t sigma_r2(const Vec4& m, const Bits4& sigma, CountVariant v) {
    return mod8_sum(m, sigma, v, [](const Mod8&) { return std::int64_t{1}; });
}

std::int64_t sigma_r3(const Vec4& m, const Bits4& sigma, CountVariant v) {
    const Vec4 modd{odd_of(m[0]), odd_of(m[1]), odd_of(m[2]), odd_of(m[3])};
    return mod8_sum(m, sigma, v, [&](const Mod8& K) {
        return std::int64_t{theta1(modd, Vec4{K[0], K[1], K[2], K[3]}, sigma, m, v)};
    });
}

std::int64_t sigma_expected(const Vec4& m, const Bits4& sigma, CountVariant v, int i) {
    const bool odd = is_odd_case(m, sigma);
    if (i == 2 || v.r == 1) return odd ? 192 : 128;
    return odd ? 64 * jac(-1, odd_of(prod(m))) : 0;
}

std::vector<SigmaRow> sigma_table(const std::vector<std::int64_t>& values) {
    std::vector<SigmaRow> rows;
    const std::array<std::vector<std::int64_t>, 4> lists{values, values, values, values};
    for_each_tuple(lists, [&](const Vec4& m) {
        for (const Bits4& g : sigma_options()) {
            if (!admissible_m_sigma(m, g)) continue;
            SigmaRow row;
            row.m = m;
            row.sigma = g;
            int c = 0;
            for (int i : {2, 3})
                for (int r : {1, 2}) {
                    CountVariant v{r};
                    row.value[c] = i == 2 ? sigma_r2(m, g, v) : sigma_r3(m, g, v);
                    row.expected[c] = sigma_expected(m, g, v, i);
                    ++c;
                }
            row.pass = row.value == row.expected;
            rows.push_back(row);
        }
    });
    return rows;
}

bool component_sums_integral() {
    for (const Mod8Set* s : {&mod8_set_A1(), &mod8_set_A2()})
        for (const Mod8& q : elements(*s)) {
            if ((q[0] * q[1] * q[2] * q[3]) % 8 != 1) continue;
            if ((q[0] + q[1] + q[2] + q[3]) % 4 != 0) return false;
        }
    return true;
}

namespace {

void compare_one(const CharsumInput& in, const SpfSieve& sieve, IdentityReport& rep) {
    ++rep.checked;
    if (indicator_via_charsum(in) != indicator_direct(in, sieve)) {
        ++rep.mismatches;
        if (rep.failures.size() < 10) rep.failures.push_back(in);
    }
}

}  // namespace

IdentityReport identity_suite(std::int64_t s_max, std::int64_t m_max, const SpfSieve& sieve, unsigned workers) {
    if (s_max < 1 || m_max < 1) throw std::invalid_argument("identity_suite: bounds must be positive");
    if (s_max > 99 || m_max > 30) throw std::out_of_range("identity_suite: box too large");
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::int64_t> svals, mvals;
    for (std::int64_t x = 1; x <= s_max; x += 2)
        if (squarefree_small(x)) svals.push_back(x);
    for (std::int64_t x = 1; x <= m_max; ++x)
        if (squarefree_small(x)) mvals.push_back(x);

    std::vector<Vec4> stuples, mtuples;
    for_each_tuple({svals, svals, svals, svals}, [&](const Vec4& s) {
        if (squarefree_small(static_cast<std::uint64_t>(prod(s)))) stuples.push_back(s);
    });
    for_each_tuple({mvals, mvals, mvals, mvals}, [&](const Vec4& m) {
        if (squarefree_small(static_cast<std::uint64_t>(prod(m)))) mtuples.push_back(m);
    });

    const unsigned W = std::max(1u, workers);
    std::vector<IdentityReport> parts(W);
    auto work = [&](unsigned w) {
        for (std::size_t i = w; i < stuples.size(); i += W)
            for (const Vec4& m : mtuples) {
                if (std::gcd(prod(stuples[i]), prod(m)) != 1) continue;
                for (const Bits4& g : sigma_options()) {
                    if (!admissible_m_sigma(m, g)) continue;
                    for (int r : {1, 2}) compare_one(CharsumInput{stuples[i], m, g, CountVariant{r}}, sieve, parts[w]);
                }
            }
    };
    if (W == 1) {
        work(0);
    } else {
        std::vector<std::thread> th;
        for (unsigned w = 0; w < W; ++w) th.emplace_back(work, w);
        for (auto& t : th) t.join();
    }
    IdentityReport rep;
    for (auto& p : parts) {
        rep.checked += p.checked;
        rep.mismatches += p.mismatches;
        for (auto& f : p.failures)
            if (rep.failures.size() < 10) rep.failures.push_back(f);
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

IdentityReport identity_random(std::uint64_t count, std::int64_t bound, std::uint64_t seed, const SpfSieve& sieve) {
    if (bound < 1 || bound > 1000) throw std::invalid_argument("identity_random: bound must be in [1, 1000]");
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> svals, mvals;
    for (std::int64_t x = 1; x <= bound; ++x)
        if (squarefree_small(x)) {
            mvals.push_back(x);
            if (x % 2) svals.push_back(x);
        }
    auto pick = [&](const std::vector<std::int64_t>& v) {
        return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
    };
    IdentityReport rep;
    while (rep.checked < count) {
        CharsumInput in;
        for (int i = 0; i < 4; ++i) {
            in.s[i] = pick(svals);
            in.m[i] = pick(mvals);
        }
        in.sigma = sigma_options()[std::uniform_int_distribution<int>(0, 4)(rng)];
        in.v.r = 1 + static_cast<int>(rng() & 1);
        if (!admissible(in)) continue;
        compare_one(in, sieve, rep);
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

const char* to_string(CoeffMode m) {
    switch (m) {
        case CoeffMode::Ones: return "ones";
        case CoeffMode::Mobius: return "mobius";
        case CoeffMode::Random: return "random";
    }
    return "?";
}

CoeffMode coeff_mode_from_string(const std::string& s) {
    if (s == "ones") return CoeffMode::Ones;
    if (s == "mobius") return CoeffMode::Mobius;
    if (s == "random") return CoeffMode::Random;
    throw std::invalid_argument("unknown coefficient mode: " + s);
}

BilinearResult bilinear_hyperbolic_sum(std::int64_t X, std::int64_t z, CoeffMode mode, std::uint64_t seed,
                                       const SpfSieve& sieve, std::int64_t ceiling) {
    if (z < 2 || z > X) throw std::invalid_argument("bilinear: need 2 <= z <= X");
    if (X > ceiling) throw std::out_of_range("bilinear: X exceeds the work ceiling");
    if (static_cast<std::uint64_t>(X) > sieve.limit()) throw std::out_of_range("bilinear: X exceeds the sieve limit");

    // mu(n) for odd n, 0 off the support.
    std::vector<std::int8_t> mu(X + 1, 0);
    for (std::int64_t n = 1; n <= X; n += 2) {
        std::uint32_t r = static_cast<std::uint32_t>(n);
        int sign = 1;
        bool sqf = true;
        while (r > 1 && sqf) {
            std::uint32_t p = sieve.spf(r);
            r /= p;
            if (r % p == 0) sqf = false;
            sign = -sign;
        }
        mu[n] = sqf ? static_cast<std::int8_t>(sign) : 0;
    }
    std::vector<std::int8_t> a(X + 1, 0), b(X + 1, 0);
    std::mt19937_64 ga(seed), gb(seed ^ 0x9E3779B97F4A7C15ULL);
    for (std::int64_t n = 1; n <= X; ++n) {
        const bool ra = ga() & 1, rb = gb() & 1;
        if (mu[n] == 0) continue;
        switch (mode) {
            case CoeffMode::Ones: a[n] = b[n] = 1; break;
            case CoeffMode::Mobius: a[n] = b[n] = mu[n]; break;
            case CoeffMode::Random:
                a[n] = ra ? 1 : -1;
                b[n] = rb ? 1 : -1;
                break;
        }
    }

    std::int64_t S = 0;
    for (std::int64_t n = z + 1; n * (z + 1) <= X; ++n) {
        if (a[n] == 0) continue;
        std::int64_t row = 0;
        for (std::int64_t m = z + 1; m * n <= X; ++m)
            if (b[m]) row += b[m] * jacobi_u64(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m));
        S += a[n] * row;
    }
    BilinearResult res;
    res.X = X;
    res.z = z;
    res.mode = mode;
    res.S = S;
    const double lx = std::log(static_cast<double>(X));
    res.normalized = std::abs(static_cast<double>(S)) * std::sqrt(static_cast<double>(z)) / (static_cast<double>(X) * lx * lx * lx);
    return res;
}

}  // namespace qf
