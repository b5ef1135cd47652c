#include "quadfib/solubility.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace qf {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Soluble: return "soluble";
        case Verdict::Insoluble: return "insoluble";
        default: return "unknown";
    }
}

Place Place::odd(std::uint64_t p) {
    if (p % 2 == 0 || !is_prime_u64(p)) throw std::invalid_argument("Place::odd: need an odd prime");
    return {Odd, p};
}

Place Place::of_prime(std::uint64_t p) {
    if (p == 0) return real();
    if (p == 2) return two();
    return odd(p);
}

std::string Place::name() const {
    if (kind == Real) return "inf";
    return std::to_string(p);
}

std::uint8_t unit_mod8(std::int64_t a) {
    std::int64_t r = a % 8;
    if (r < 0) r += 8;
    return static_cast<std::uint8_t>(r);
}

std::vector<Mod8> mod8_units4() {
    static const std::uint8_t u[4] = {1, 3, 5, 7};
    std::vector<Mod8> out;
    out.reserve(256);
    for (auto a : u)
        for (auto b : u)
            for (auto c : u)
                for (auto d : u) out.push_back({a, b, c, d});
    return out;
}

std::vector<Mod8> elements(const Mod8Set& s) {
    std::vector<Mod8> out;
    for (const Mod8& q : mod8_units4())
        if (s.test(mod8_index(q))) out.push_back(q);
    return out;
}

std::size_t count_with_product_one(const Mod8Set& s) {
    std::size_t n = 0;
    for (const Mod8& q : elements(s))
        if ((q[0] * q[1] * q[2] * q[3]) % 8 == 1) ++n;
    return n;
}

namespace {

bool in_A1(const Mod8& q) {
    for (int i : {0, 1})
        for (int j : {2, 3}) {
            int s = (q[i] + q[j]) % 8;
            if (s == 0 || s == 4) return true;
        }
    static const int pairs[7][2] = {{0, 0}, {2, 0}, {2, 6}, {0, 6}, {6, 0}, {6, 2}, {0, 2}};
    int s01 = (q[0] + q[1]) % 8, s23 = (q[2] + q[3]) % 8;
    for (auto& p : pairs)
        if (p[0] == s01 && p[1] == s23) return true;
    return false;
}

bool in_A2(const Mod8& q) {
    static const int orders[8][4] = {{0, 1, 2, 3}, {1, 0, 2, 3}, {0, 1, 3, 2}, {1, 0, 3, 2},
                                     {2, 3, 0, 1}, {3, 2, 0, 1}, {2, 3, 1, 0}, {3, 2, 1, 0}};
    for (auto& o : orders)
        for (int v : {1, 3, 5, 7}) {
            int s = (q[o[0]] + q[o[1]]) % 8;
            bool first = s == 0 || s == (2 * v) % 8;
            bool second = ((q[o[2]] + v) * (q[o[3]] + v)) % 8 == 0;
            if (first && second) return true;
        }
    return false;
}

Mod8Set build(bool (*pred)(const Mod8&)) {
    Mod8Set s;
    for (const Mod8& q : mod8_units4())
        if (pred(q)) s.set(mod8_index(q));
    return s;
}

std::int64_t checked_abs(std::int64_t a) {
    if (a == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("coefficient magnitude overflows");
    return a < 0 ? -a : a;
}

// Odd-prime indicator for a quadric whose coefficients have v_p <= 1 and are not all divisible by p.
bool odd_core(const std::array<std::int64_t, 4>& c, std::int64_t p) {
    int div[4], nd = 0, nn = 0, undiv[4];
    for (int i = 0; i < 4; ++i) {
        if (c[i] % p == 0)
            div[nd++] = i;
        else
            undiv[nn++] = i;
    }
    if (nd != 2) return true;
    auto res = [p](std::int64_t x) {
        std::int64_t r = x % p;
        return static_cast<std::uint64_t>(r < 0 ? r + p : r);
    };
    auto mul = [p](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>(static_cast<u128>(x) * y % static_cast<std::uint64_t>(p));
    };
    auto up = static_cast<std::uint64_t>(p);
    std::uint64_t kl = mul(res(c[undiv[0]]), res(c[undiv[1]]));
    std::uint64_t ij = mul(res(c[div[0]] / p), res(c[div[1]] / p));
    int A = jacobi_u64(kl == 0 ? 0 : up - kl, up);
    int B = jacobi_u64(ij == 0 ? 0 : up - ij, up);
    return (3 + A + B - A * B) / 4 == 1;
}

// 2-adic indicator for coefficients with v_2 <= 1, not all even.
bool two_core(const std::array<std::int64_t, 4>& c) {
    int even[4], ne = 0, odd[4], no = 0;
    for (int i = 0; i < 4; ++i) {
        if (c[i] % 2 == 0)
            even[ne++] = i;
        else
            odd[no++] = i;
    }
    if (ne == 3) {
        // Multiply by 2 and substitute x_i -> x_i/2 for the even coefficients.
        std::array<std::int64_t, 4> d = c;
        for (auto& x : d) x = (x % 2 == 0) ? x / 2 : 2 * x;
        return two_core(d);
    }
    if (ne == 1) {
        // The discriminant has odd valuation, so it is not a square and a
        // quaternary form with non-square discriminant is isotropic.
        return true;
    }
    if (ne == 0) {
        Mod8 q{unit_mod8(c[0]), unit_mod8(c[1]), unit_mod8(c[2]), unit_mod8(c[3])};
        return mod8_set_A1().test(mod8_index(q));
    }
    Mod8 q{unit_mod8(c[even[0]] / 2), unit_mod8(c[even[1]] / 2), unit_mod8(c[odd[0]]), unit_mod8(c[odd[1]])};
    return mod8_set_A2().test(mod8_index(q));
}

bool mixed_signs(const std::array<std::int64_t, 4>& c) {
    bool pos = false, neg = false;
    for (auto x : c) (x > 0 ? pos : neg) = true;
    return pos && neg;
}

void check_nonzero(const Quadric& q) {
    for (auto x : q.a)
        if (x == 0) throw std::invalid_argument("quadric coefficients must be nonzero");
}

}  // namespace

const Mod8Set& mod8_set_A1() {
    static const Mod8Set s = build(in_A1);
    return s;
}

const Mod8Set& mod8_set_A2() {
    static const Mod8Set s = build(in_A2);
    return s;
}

const Mod8Set& mod8_set_permuted(int i, int j, int k, int l) {
    static std::once_flag once;
    static std::array<Mod8Set, 256> table;
    std::call_once(once, [] {
        const Mod8Set& a2 = mod8_set_A2();
        for (int c = 0; c < 256; ++c) {
            int p[4] = {c & 3, (c >> 2) & 3, (c >> 4) & 3, (c >> 6) & 3};
            for (const Mod8& q : mod8_units4()) {
                Mod8 r{q[p[0]], q[p[1]], q[p[2]], q[p[3]]};
                if (a2.test(mod8_index(r))) table[c].set(mod8_index(q));
            }
        }
    });
    int idx[4] = {i, j, k, l};
    int seen = 0;
    for (int x : idx) {
        if (x < 0 || x > 3 || (seen >> x & 1)) throw std::invalid_argument("permutation indices must be distinct in 0..3");
        seen |= 1 << x;
    }
    return table[i | (j << 2) | (k << 4) | (l << 6)];
}

Quadric normalize(const Quadric& q, const SpfSieve& sieve) {
    check_nonzero(q);
    Quadric out;
    for (int i = 0; i < 4; ++i) {
        checked_abs(q.a[i]);
        out.a[i] = squarefree_kernel(q.a[i], sieve);
    }
    std::uint64_t g = 0;
    for (auto x : out.a) g = gcd_u64(g, static_cast<std::uint64_t>(checked_abs(x)));
    for (auto& x : out.a) x /= static_cast<std::int64_t>(g);
    return out;
}

Verdict solvable_real(const Quadric& q) {
    check_nonzero(q);
    return mixed_signs(q.a) ? Verdict::Soluble : Verdict::Insoluble;
}

Verdict local_indicator_odd(const Quadric& q, std::uint64_t p) {
    check_nonzero(q);
    if (p % 2 == 0 || !is_prime_u64(p)) throw std::invalid_argument("local_indicator_odd: p must be an odd prime");
    auto pp = static_cast<std::int64_t>(p);
    int nd = 0;
    for (auto x : q.a) {
        if (x % pp == 0) {
            ++nd;
            if ((x / pp) % pp == 0) throw std::invalid_argument("local_indicator_odd: coefficient not squarefree at p");
        }
    }
    if (nd == 4) throw std::invalid_argument("local_indicator_odd: p divides every coefficient");
    return odd_core(q.a, pp) ? Verdict::Soluble : Verdict::Insoluble;
}

Verdict local_indicator_2(const Quadric& q) {
    check_nonzero(q);
    int ne = 0;
    for (auto x : q.a) {
        if (x % 2 == 0) {
            ++ne;
            if ((x / 2) % 2 == 0) throw std::invalid_argument("local_indicator_2: coefficient divisible by 4");
        }
    }
    if (ne == 4) throw std::invalid_argument("local_indicator_2: every coefficient is even");
    return two_core(q.a) ? Verdict::Soluble : Verdict::Insoluble;
}

bool locally_soluble_prepared(const std::array<std::int64_t, 4>& c, std::span<const std::uint32_t> odd_primes) {
    if (!mixed_signs(c)) return false;
    if (!two_core(c)) return false;
    for (std::uint32_t p : odd_primes)
        if (!odd_core(c, p)) return false;
    return true;
}

int hilbert_symbol(std::int64_t a, std::int64_t b, Place v) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: arguments must be nonzero");
    if (v.kind == Place::Real) return (a < 0 && b < 0) ? -1 : 1;
    auto p = static_cast<std::int64_t>(v.p);
    int alpha = 0, beta = 0;
    while (a % p == 0) {
        a /= p;
        ++alpha;
    }
    while (b % p == 0) {
        b /= p;
        ++beta;
    }
    if (v.kind == Place::Two) {
        int u = unit_mod8(a), w = unit_mod8(b);
        int eu = ((u - 1) / 2) & 1, ew = ((w - 1) / 2) & 1;
        int ou = ((u * u - 1) / 8) & 1, ow = ((w * w - 1) / 8) & 1;
        int e = (eu * ew + alpha * ow + beta * ou) & 1;
        return e ? -1 : 1;
    }
    int eps = static_cast<int>(((p - 1) / 2) & 1);
    int s = ((alpha * beta * eps) & 1) ? -1 : 1;
    if (beta & 1) s *= jacobi(a, p);
    if (alpha & 1) s *= jacobi(b, p);
    return s;
}

std::vector<PlaceVerdict> local_verdicts(const Quadric& q, const SpfSieve& sieve) {
    Quadric n = normalize(q, sieve);
    std::vector<PlaceVerdict> out;
    out.push_back({Place::real(), solvable_real(n)});
    out.push_back({Place::two(), local_indicator_2(n)});
    std::vector<std::uint64_t> ps;
    for (auto x : n.a)
        for (auto [p, e] : sieve.factor(static_cast<std::uint64_t>(checked_abs(x))).factors)
            if (p != 2) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (auto p : ps) out.push_back({Place::odd(p), local_indicator_odd(n, p)});
    return out;
}

bool is_everywhere_locally_soluble(const Quadric& q, const SpfSieve& sieve) {
    for (auto& pv : local_verdicts(q, sieve))
        if (pv.verdict != Verdict::Soluble) return false;
    return true;
}

bool has_rational_point(const Quadric& q, const SpfSieve& sieve) { return is_everywhere_locally_soluble(q, sieve); }

std::optional<std::array<std::int64_t, 4>> find_rational_point(const Quadric& q, std::int64_t height_bound) {
    check_nonzero(q);
    if (!mixed_signs(q.a)) return std::nullopt;
    using V = std::array<std::int64_t, 4>;
    auto support = [](const V& x) { return (x[0] != 0) + (x[1] != 0) + (x[2] != 0) + (x[3] != 0); };
    auto better = [&](const V& x, const V& y) {
        int sx = support(x), sy = support(y);
        if (sx != sy) return sx < sy;
        return x > y;
    };
    const i128 a0 = q.a[0], a1 = q.a[1], a2 = q.a[2], a3 = q.a[3];
    for (std::int64_t h = 1; h <= height_bound; ++h) {
        std::optional<V> best;
        for (std::int64_t x0 = -h; x0 <= h; ++x0)
            for (std::int64_t x1 = -h; x1 <= h; ++x1)
                for (std::int64_t x2 = -h; x2 <= h; ++x2) {
                    i128 y = -(a0 * x0 * x0 + a1 * x1 * x1 + a2 * x2 * x2);
                    if (y % a3 != 0) continue;
                    y /= a3;
                    if (y < 0 || y > static_cast<i128>(h) * h) continue;
                    std::uint64_t s = isqrt(static_cast<u128>(y));
                    if (static_cast<i128>(s) * s != y) continue;
                    std::int64_t m = std::max<std::int64_t>({std::abs(x0), std::abs(x1), std::abs(x2), static_cast<std::int64_t>(s)});
                    if (m != h) continue;
                    std::uint64_t g = gcd_u64(gcd_u64(std::abs(x0), std::abs(x1)), gcd_u64(std::abs(x2), s));
                    if (g != 1) continue;
                    for (int sign : {1, -1}) {
                        V x{x0, x1, x2, sign * static_cast<std::int64_t>(s)};
                        for (auto c : x) {
                            if (c == 0) continue;
                            if (c < 0)
                                for (auto& e : x) e = -e;
                            break;
                        }
                        if (!best || better(x, *best)) best = x;
                        if (s == 0) break;
                    }
                }
        if (best) return best;
    }
    return std::nullopt;
}

}  // namespace qf
