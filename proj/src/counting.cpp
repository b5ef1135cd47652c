#include "quadfib/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <list>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace qf {

namespace {

std::uint32_t bgcd(std::uint32_t a, std::uint32_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    int s = __builtin_ctz(a | b);
    a >>= __builtin_ctz(a);
    do {
        b >>= __builtin_ctz(b);
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b);
    return a << s;
}

std::uint64_t uabs(std::int64_t x) { return x < 0 ? 0 - static_cast<std::uint64_t>(x) : static_cast<std::uint64_t>(x); }

void check_bound(std::uint64_t B, const SpfSieve& sieve, const CountOptions& opts) {
    if (B < 1) throw std::invalid_argument("height bound must be at least 1");
    if (B > opts.ceiling) throw std::out_of_range("height bound exceeds the enumeration ceiling");
    if (B > sieve.limit()) throw std::out_of_range("height bound exceeds the sieve limit");
}

// Squarefree kernels and their odd prime divisors for 1..B.
struct KernelTable {
    std::vector<std::uint32_t> kern;
    std::vector<std::uint32_t> off;
    std::vector<std::uint32_t> primes;

    KernelTable(std::uint64_t B, const SpfSieve& sieve) : kern(B + 1, 1), off(B + 2, 0) {
        for (std::uint32_t v = 1; v <= B; ++v) {
            off[v] = static_cast<std::uint32_t>(primes.size());
            std::uint32_t r = v, k = 1;
            while (r > 1) {
                std::uint32_t p = sieve.spf(r);
                int e = 0;
                while (r % p == 0) {
                    r /= p;
                    ++e;
                }
                if (e & 1) {
                    k *= p;
                    if (p != 2) primes.push_back(p);
                }
            }
            kern[v] = k;
        }
        off[B + 1] = static_cast<std::uint32_t>(primes.size());
    }
};

struct Pair {
    std::uint32_t x, y;
};

std::vector<Pair> coprime_pairs(std::uint32_t h) {
    std::vector<Pair> out;
    if (h == 1) {
        out.push_back({1, 1});
        return out;
    }
    for (std::uint32_t j = 1; j < h; ++j)
        if (bgcd(j, h) == 1) {
            out.push_back({h, j});
            out.push_back({j, h});
        }
    return out;
}

// One way of attaching signs to a magnitude tuple.
struct Pattern {
    std::array<int, 4> coeff_sign;  // signs of the four fibre coefficients
    bool forbid_square01;           // drop the tuple when |t0 t1| is a square
    bool forbid_square23;
    std::uint64_t weight;
};

std::vector<Pattern> patterns_for(const CountProblem& prob) {
    std::vector<Pattern> out;
    auto unsigned_pattern = [](std::array<int, 4> s, std::uint64_t w) {
        return Pattern{{s[0] * s[2], s[1] * s[3], s[1] * s[2], s[0] * s[3]}, s[0] != s[1], s[2] != s[3], w};
    };
    switch (prob.kind) {
        case CountProblem::Raw:
            // t0, t2 > 0; negating (t0,t1) or (t2,t3) negates the whole form.
            for (int s1 : {1, -1})
                for (int s3 : {1, -1}) out.push_back(unsigned_pattern({1, s1, 1, s3}, 4));
            break;
        case CountProblem::N1:
            out.push_back({{-1, 1, 1, -1}, true, false, 1});
            break;
        case CountProblem::N2:
            out.push_back({{1, 1, -1, -1}, true, true, 1});
            break;
        case CountProblem::Region: {
            std::array<int, 4> s;
            for (int i = 0; i < 4; ++i) s[i] = prob.l[i] ? -1 : 1;
            out.push_back(unsigned_pattern(s, 1));
            break;
        }
    }
    return out;
}

class LruMemo {
public:
    explicit LruMemo(std::size_t cap) : cap_(cap) {}

    struct KeyHash {
        std::size_t operator()(const std::array<std::int64_t, 4>& k) const {
            std::size_t h = 0;
            for (auto x : k) h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::size_t>(x);
            return h;
        }
    };

    const bool* find(const std::array<std::int64_t, 4>& k) {
        auto it = map_.find(k);
        if (it == map_.end()) return nullptr;
        order_.splice(order_.begin(), order_, it->second);
        return &it->second->second;
    }

    void put(const std::array<std::int64_t, 4>& k, bool v) {
        if (cap_ == 0) return;
        if (map_.size() >= cap_) {
            map_.erase(order_.back().first);
            order_.pop_back();
        }
        order_.emplace_front(k, v);
        map_[k] = order_.begin();
    }

private:
    using Entry = std::pair<std::array<std::int64_t, 4>, bool>;
    std::size_t cap_;
    std::list<Entry> order_;
    std::unordered_map<std::array<std::int64_t, 4>, std::list<Entry>::iterator, KeyHash> map_;
};

class FastCounter {
public:
    FastCounter(const KernelTable& kt, const std::vector<Pattern>& pats, std::size_t memo_cap)
        : kt_(kt), pats_(pats), memo_(memo_cap), use_memo_(memo_cap > 0) {}

    std::uint64_t evaluate(Pair P, Pair Q) {
        const std::uint32_t a0 = kt_.kern[P.x], a1 = kt_.kern[P.y], a2 = kt_.kern[Q.x], a3 = kt_.kern[Q.y];
        const bool sq01 = a0 == 1 && a1 == 1;
        const bool sq23 = a2 == 1 && a3 == 1;
        const std::uint32_t g02 = bgcd(a0, a2), g03 = bgcd(a0, a3), g12 = bgcd(a1, a2), g13 = bgcd(a1, a3);
        const std::int64_t m0 = static_cast<std::int64_t>(a0 / g02) * (a2 / g02);
        const std::int64_t m1 = static_cast<std::int64_t>(a1 / g13) * (a3 / g13);
        const std::int64_t m2 = static_cast<std::int64_t>(a1 / g12) * (a2 / g12);
        const std::int64_t m3 = static_cast<std::int64_t>(a0 / g03) * (a3 / g03);
        bool primes_ready = false;
        std::uint64_t total = 0;
        for (const Pattern& pat : pats_) {
            if ((pat.forbid_square01 && sq01) || (pat.forbid_square23 && sq23)) continue;
            std::array<std::int64_t, 4> c{pat.coeff_sign[0] * m0, pat.coeff_sign[1] * m1, pat.coeff_sign[2] * m2,
                                          pat.coeff_sign[3] * m3};
            bool ok;
            const bool* hit = use_memo_ ? memo_.find(c) : nullptr;
            if (hit) {
                ok = *hit;
            } else {
                if (!primes_ready) {
                    gather(P, Q);
                    primes_ready = true;
                }
                ok = locally_soluble_prepared(c, std::span<const std::uint32_t>(buf_, nbuf_));
                if (use_memo_) memo_.put(c, ok);
            }
            if (ok) total += pat.weight;
        }
        return total;
    }

private:
    void gather(Pair P, Pair Q) {
        nbuf_ = 0;
        for (std::uint32_t v : {P.x, P.y, Q.x, Q.y})
            for (std::uint32_t i = kt_.off[v]; i < kt_.off[v + 1]; ++i) buf_[nbuf_++] = kt_.primes[i];
    }

    const KernelTable& kt_;
    const std::vector<Pattern>& pats_;
    LruMemo memo_;
    bool use_memo_;
    std::uint32_t buf_[64];
    std::size_t nbuf_ = 0;
};

std::vector<std::uint64_t> fast_histogram(const CountProblem& prob, std::uint64_t B, const SpfSieve& sieve,
                                          const CountOptions& opts) {
    const KernelTable kt(B, sieve);
    const std::vector<Pattern> pats = patterns_for(prob);
    const auto root = static_cast<std::uint32_t>(isqrt(B));
    std::vector<std::vector<Pair>> small(root + 1);
    for (std::uint32_t h = 1; h <= root; ++h) small[h] = coprime_pairs(h);

    unsigned W = std::max(1u, opts.workers);
    std::vector<std::vector<std::uint64_t>> hists(W, std::vector<std::uint64_t>(B + 1, 0));
    auto work = [&](unsigned w) {
        FastCounter fc(kt, pats, opts.memo_capacity);
        auto& hist = hists[w];
        // Every height pair (h1, h2) with h1 h2 <= B has min(h1, h2) <= sqrt(B).
        for (std::uint64_t hb = 1 + w; hb <= B; hb += W) {
            std::uint64_t smax = std::min<std::uint64_t>(hb, B / hb);
            if (smax == 0) break;
            std::vector<Pair> big = hb <= root ? small[hb] : coprime_pairs(static_cast<std::uint32_t>(hb));
            for (std::uint64_t hs = 1; hs <= smax; ++hs) {
                std::uint64_t acc = 0;
                for (const Pair& P : big)
                    for (const Pair& Q : small[hs]) {
                        acc += fc.evaluate(P, Q);
                        if (hs != hb) acc += fc.evaluate(Q, P);
                    }
                hist[hb * hs] += acc;
            }
        }
    };
    if (W == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < W; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
    }
    std::vector<std::uint64_t> out(B + 1, 0);
    for (auto& h : hists)
        for (std::uint64_t i = 0; i <= B; ++i) out[i] += h[i];
    return out;
}

std::vector<std::uint64_t> reference_histogram(const CountProblem& prob, std::uint64_t B, const SpfSieve& sieve) {
    std::vector<std::uint64_t> hist(B + 1, 0);
    auto B64 = static_cast<std::int64_t>(B);
    for (std::int64_t u0 = 1; u0 <= B64; ++u0)
        for (std::int64_t u1 = 1; u1 <= B64; ++u1) {
            std::int64_t h1 = std::max(u0, u1);
            if (h1 > B64 || std::gcd(u0, u1) != 1) continue;
            std::int64_t lim = B64 / h1;
            for (std::int64_t u2 = 1; u2 <= lim; ++u2)
                for (std::int64_t u3 = 1; u3 <= lim; ++u3) {
                    if (std::gcd(u2, u3) != 1) continue;
                    auto h = static_cast<std::uint64_t>(h1 * std::max(u2, u3));
                    if (prob.kind == CountProblem::N1 || prob.kind == CountProblem::N2) {
                        BasePoint t{{u0, u1, u2, u3}};
                        if (is_square(static_cast<i128>(u0) * u1)) continue;
                        if (prob.kind == CountProblem::N2 && is_square(static_cast<i128>(u2) * u3)) continue;
                        CountVariant v{prob.kind == CountProblem::N1 ? 1 : 2};
                        if (has_rational_point(fibre_quadric(t, v, true), sieve)) ++hist[h];
                        continue;
                    }
                    for (int mask = 0; mask < 16; ++mask) {
                        std::array<int, 4> l{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1};
                        if (prob.kind == CountProblem::Region && l != prob.l) continue;
                        BasePoint t{{l[0] ? -u0 : u0, l[1] ? -u1 : u1, l[2] ? -u2 : u2, l[3] ? -u3 : u3}};
                        if (is_square(-static_cast<i128>(t.t[0]) * t.t[1])) continue;
                        if (is_square(-static_cast<i128>(t.t[2]) * t.t[3])) continue;
                        if (has_rational_point(fibre_quadric(t, CountVariant{1}, false), sieve)) ++hist[h];
                    }
                }
        }
    return hist;
}

std::uint64_t total(const std::vector<std::uint64_t>& h) { return std::accumulate(h.begin(), h.end(), std::uint64_t{0}); }

}  // namespace

std::uint64_t height(const BasePoint& t) {
    for (auto x : t.t)
        if (x == 0) throw std::invalid_argument("height: coordinates must be nonzero");
    if (std::gcd(uabs(t.t[0]), uabs(t.t[1])) != 1 || std::gcd(uabs(t.t[2]), uabs(t.t[3])) != 1)
        throw std::invalid_argument("height: gcd(t0,t1) and gcd(t2,t3) must be 1");
    return std::max(uabs(t.t[0]), uabs(t.t[1])) * std::max(uabs(t.t[2]), uabs(t.t[3]));
}

Quadric fibre_quadric(const BasePoint& t, CountVariant v, bool signed_form) {
    if (v.r != 1 && v.r != 2) throw std::invalid_argument("fibre_quadric: r must be 1 or 2");
    auto mul = [](std::int64_t a, std::int64_t b) {
        std::int64_t out;
        if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("fibre_quadric: coefficient overflow");
        return out;
    };
    const auto& x = t.t;
    Quadric q{{mul(x[0], x[2]), mul(x[1], x[3]), mul(x[1], x[2]), mul(x[0], x[3])}};
    if (signed_form) {
        std::int64_t d = v.delta();
        q.a = {-d * q.a[0], q.a[1], d * q.a[2], -q.a[3]};
    }
    return q;
}

std::vector<std::uint64_t> height_histogram(const CountProblem& prob, std::uint64_t B, const SpfSieve& sieve,
                                            const CountOptions& opts, Route route) {
    check_bound(B, sieve, opts);
    if (prob.kind == CountProblem::Region)
        for (int x : prob.l)
            if (x != 0 && x != 1) throw std::invalid_argument("sign vector entries must be 0 or 1");
    if (route == Route::Reference) return reference_histogram(prob, B, sieve);
    return fast_histogram(prob, B, sieve, opts);
}

std::uint64_t count_raw(std::uint64_t B, const SpfSieve& sieve, const CountOptions& opts, Route route) {
    return total(height_histogram(CountProblem::raw(), B, sieve, opts, route));
}

std::uint64_t count_N(std::uint64_t B, const SpfSieve& sieve, const CountOptions& opts, Route route) {
    std::uint64_t raw = count_raw(B, sieve, opts, route);
    if (raw % 4 != 0) throw std::logic_error("raw tuple count is not divisible by 4");
    return raw / 4;
}

std::uint64_t count_N1(std::uint64_t B, const SpfSieve& sieve, const CountOptions& opts, Route route) {
    return total(height_histogram(CountProblem::n1(), B, sieve, opts, route));
}

std::uint64_t count_N2(std::uint64_t B, const SpfSieve& sieve, const CountOptions& opts, Route route) {
    return total(height_histogram(CountProblem::n2(), B, sieve, opts, route));
}

std::uint64_t region_count(std::uint64_t B, std::array<int, 4> l, const SpfSieve& sieve, const CountOptions& opts,
                           Route route) {
    return total(height_histogram(CountProblem::region(l), B, sieve, opts, route));
}

CensusRow census_row(std::uint64_t B, const SpfSieve& sieve, const CountOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    CensusRow row;
    row.B = B;
    row.raw = count_raw(B, sieve, opts);
    if (row.raw % 4 != 0) throw std::logic_error("raw tuple count is not divisible by 4");
    row.N = row.raw / 4;
    row.N1 = count_N1(B, sieve, opts);
    row.N2 = count_N2(B, sieve, opts);
    row.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

Decomposition decompose(const std::array<std::int64_t, 4>& t, const SpfSieve& sieve) {
    for (auto x : t)
        if (x <= 0) throw std::invalid_argument("decompose: entries must be positive");
    if (std::gcd(t[0], t[1]) != 1 || std::gcd(t[2], t[3]) != 1)
        throw std::invalid_argument("decompose: need gcd(t0,t1) = gcd(t2,t3) = 1");
    Decomposition d;
    std::array<std::int64_t, 4> a;
    for (int i = 0; i < 4; ++i) {
        auto sp = squarefree_split(t[i], sieve);
        a[i] = sp.a;
        d.b[i] = sp.b;
    }
    d.m = {std::gcd(a[0], a[2]), std::gcd(a[0], a[3]), std::gcd(a[1], a[2]), std::gcd(a[1], a[3])};
    std::array<std::int64_t, 4> s{a[0] / (d.m[0] * d.m[1]), a[1] / (d.m[2] * d.m[3]), a[2] / (d.m[0] * d.m[2]),
                                  a[3] / (d.m[1] * d.m[3])};
    for (int i = 0; i < 4; ++i) {
        auto op = odd_part(s[i]);
        d.sigma[i] = op.e;
        d.s[i] = static_cast<std::int64_t>(op.m);
    }
    return d;
}

std::array<std::int64_t, 4> reconstruct(const Decomposition& d) {
    const auto& m = d.m;
    std::array<std::int64_t, 4> mm{m[0] * m[1], m[2] * m[3], m[0] * m[2], m[1] * m[3]};
    std::array<std::int64_t, 4> t;
    for (int i = 0; i < 4; ++i) t[i] = (std::int64_t{1} << d.sigma[i]) * d.s[i] * mm[i] * d.b[i] * d.b[i];
    return t;
}

namespace {

// Sum of g0(n0) g1(n1) g2(n2) g3(n3) over tuples whose pair heights (h1, h2) pass keep().
template <class Keep>
i128 hyperbola_region(std::int64_t X, const std::array<std::int64_t, 4>& c, const std::array<TestFunction, 4>& g, Keep keep) {
    i128 total = 0;
    for (std::int64_t n0 = 1; n0 * c[0] <= X; ++n0)
        for (std::int64_t n1 = 1; n1 * c[1] <= X; ++n1) {
            std::int64_t h1 = std::max(n0 * c[0], n1 * c[1]);
            i128 g01 = static_cast<i128>(g[0](n0)) * g[1](n1);
            std::int64_t lim = X / h1;
            for (std::int64_t n2 = 1; n2 * c[2] <= lim; ++n2)
                for (std::int64_t n3 = 1; n3 * c[3] <= lim; ++n3) {
                    std::int64_t h2 = std::max(n2 * c[2], n3 * c[3]);
                    if (keep(h1, h2)) total += g01 * g[2](n2) * g[3](n3);
                }
        }
    return total;
}

}  // namespace

HyperbolaTerms hyperbola_terms(std::int64_t X, std::int64_t Y, const std::array<std::int64_t, 4>& c,
                               const std::array<TestFunction, 4>& g) {
    if (X < 2 || Y < 2 || Y * Y > X) throw std::invalid_argument("hyperbola: need X >= 2 and 2 <= Y <= sqrt(X)");
    for (auto x : c)
        if (x < 1) throw std::invalid_argument("hyperbola: constants must be positive");
    HyperbolaTerms t;
    t.full = hyperbola_region(X, c, g, [&](std::int64_t h1, std::int64_t h2) { return h1 * h2 <= X; });
    t.first = hyperbola_region(X, c, g, [&](std::int64_t h1, std::int64_t h2) { return h1 <= Y && h1 * h2 <= X; });
    t.second = hyperbola_region(X, c, g, [&](std::int64_t h1, std::int64_t h2) { return h2 * Y <= X && h1 * h2 <= X; });
    t.overlap = hyperbola_region(X, c, g, [&](std::int64_t h1, std::int64_t h2) { return h1 <= Y && h2 * Y <= X; });
    return t;
}

bool hyperbola_split_check(std::int64_t X, std::int64_t Y, const std::array<std::int64_t, 4>& c,
                           const std::array<TestFunction, 4>& g) {
    auto t = hyperbola_terms(X, Y, c, g);
    return t.full == t.first + t.second - t.overlap;
}

}  // namespace qf
