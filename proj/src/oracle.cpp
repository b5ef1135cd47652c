// Brute-force local solubility by searching Z/p^k for certified primitive zeros.

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "quadfib/solubility.hpp"

namespace qf {

namespace {

struct Ring {
    std::uint64_t p;
    int k;
    std::uint32_t M;
    std::vector<std::uint32_t> unit_squares;
    std::map<std::uint32_t, std::uint32_t> canon;
};

using Bits = std::vector<std::uint64_t>;

std::mutex g_mutex;
std::map<std::pair<std::uint64_t, int>, Ring> g_rings;
std::map<std::vector<std::uint64_t>, Verdict> g_memo;

Ring& ring_for(std::uint64_t p, int k) {
    auto key = std::make_pair(p, k);
    auto it = g_rings.find(key);
    if (it != g_rings.end()) return it->second;
    Ring r{p, k, 1, {}, {}};
    for (int i = 0; i < k; ++i) r.M *= static_cast<std::uint32_t>(p);
    std::vector<char> seen(r.M, 0);
    for (std::uint64_t c = 1; c < r.M; ++c) {
        if (c % p == 0) continue;
        auto s = static_cast<std::uint32_t>(c * c % r.M);
        if (!seen[s]) {
            seen[s] = 1;
            r.unit_squares.push_back(s);
        }
    }
    return g_rings.emplace(key, std::move(r)).first->second;
}

// Smallest element of r * (unit squares): the answer only depends on this class.
std::uint32_t canonical(Ring& R, std::uint32_t r) {
    auto it = R.canon.find(r);
    if (it != R.canon.end()) return it->second;
    std::uint32_t best = r;
    for (std::uint32_t s : R.unit_squares) best = std::min<std::uint32_t>(best, static_cast<std::uint32_t>(static_cast<std::uint64_t>(r) * s % R.M));
    R.canon.emplace(r, best);
    return best;
}

int vp_capped(std::uint64_t x, std::uint64_t p, int cap) {
    if (x == 0) return cap;
    int e = 0;
    while (x % p == 0 && e < cap) {
        x /= p;
        ++e;
    }
    return e;
}

// For one coordinate: bitsets over Z/M of the values r x^2, split by the flag
// pair (x is a unit, x carries a Hensel certificate).
std::array<Bits, 4> coordinate_values(std::uint32_t r, std::uint64_t p, int k, std::uint32_t M) {
    std::size_t words = (M + 63) / 64;
    std::array<Bits, 4> v;
    for (auto& b : v) b.assign(words, 0);
    int vr = vp_capped(r, p, k) + (p == 2 ? 1 : 0);
    for (std::uint64_t x = 0; x < M; ++x) {
        auto val = static_cast<std::uint32_t>(static_cast<std::uint64_t>(r) * (x * x % M) % M);
        bool unit = x % p != 0;
        bool cert = false;
        if (x != 0 && r != 0) {
            int e = vr + vp_capped(x, p, k);
            cert = 2 * e < k;
        }
        int f = (unit ? 1 : 0) | (cert ? 2 : 0);
        v[f][val / 64] |= 1ULL << (val % 64);
    }
    return v;
}

bool test_bit(const Bits& b, std::uint32_t i) { return (b[i / 64] >> (i % 64)) & 1; }

// out[f0|f1] |= A[f0] + B[f1] (sumset in Z/M).
std::array<Bits, 4> sumset(const std::array<Bits, 4>& A, const std::array<Bits, 4>& B, std::uint32_t M) {
    std::size_t words = (M + 63) / 64;
    std::array<Bits, 4> out;
    for (auto& b : out) b.assign(words, 0);
    // Doubled copies of B so a cyclic shift is a plain bit extraction.
    std::array<Bits, 4> D;
    for (int f = 0; f < 4; ++f) {
        D[f].assign(2 * words + 2, 0);
        for (std::uint32_t t = 0; t < 2 * M; ++t)
            if (test_bit(B[f], t % M)) D[f][t / 64] |= 1ULL << (t % 64);
    }
    for (int f0 = 0; f0 < 4; ++f0)
        for (std::uint32_t u = 0; u < M; ++u) {
            if (!test_bit(A[f0], u)) continue;
            std::uint64_t off = M - u;
            std::size_t w0 = off / 64;
            unsigned sh = off % 64;
            for (int f1 = 0; f1 < 4; ++f1) {
                const Bits& d = D[f1];
                Bits& o = out[f0 | f1];
                for (std::size_t w = 0; w < words; ++w) {
                    std::uint64_t lo = d[w0 + w] >> sh;
                    std::uint64_t hi = sh ? d[w0 + w + 1] << (64 - sh) : 0;
                    o[w] |= lo | hi;
                }
            }
        }
    // Bits past M in the final word are garbage from the extraction.
    if (M % 64)
        for (auto& b : out) b[words - 1] &= (1ULL << (M % 64)) - 1;
    return out;
}

Verdict search(const std::array<std::uint32_t, 4>& r, std::uint64_t p, int k, std::uint32_t M) {
    std::array<std::array<Bits, 4>, 4> v;
    for (int i = 0; i < 4; ++i) v[i] = coordinate_values(r[i], p, k, M);
    auto s01 = sumset(v[0], v[1], M);
    auto s23 = sumset(v[2], v[3], M);
    bool primitive = false;
    for (std::uint32_t s = 0; s < M; ++s) {
        std::uint32_t t = (M - s) % M;
        for (int f = 0; f < 4; ++f) {
            if (!test_bit(s01[f], s)) continue;
            for (int g = 0; g < 4; ++g) {
                if (!test_bit(s23[g], t)) continue;
                int h = f | g;
                if (h == 3) return Verdict::Soluble;
                if (h & 1) primitive = true;
            }
        }
    }
    return primitive ? Verdict::Unknown : Verdict::Insoluble;
}

}  // namespace

Verdict padic_oracle(const Quadric& q, Place v, int depth) {
    for (auto x : q.a)
        if (x == 0) throw std::invalid_argument("padic_oracle: coefficients must be nonzero");
    if (v.kind == Place::Real) {
        // With a_i > 0 > a_j the point x_i = sqrt(-a_j), x_j = sqrt(a_i) is a real zero.
        bool pos = false, neg = false;
        for (auto x : q.a) (x > 0 ? pos : neg) = true;
        return pos && neg ? Verdict::Soluble : Verdict::Insoluble;
    }
    if (depth < 1) throw std::invalid_argument("padic_oracle: depth must be positive");
    std::uint64_t M = 1;
    for (int i = 0; i < depth; ++i) {
        M *= v.p;
        if (M > kOracleMaxModulus) throw std::out_of_range("padic_oracle: p^depth exceeds the maximum modulus");
    }
    std::lock_guard<std::mutex> lock(g_mutex);
    Ring& R = ring_for(v.p, depth);
    std::array<std::uint32_t, 4> r;
    for (int i = 0; i < 4; ++i) {
        std::int64_t x = q.a[i] % static_cast<std::int64_t>(M);
        if (x < 0) x += static_cast<std::int64_t>(M);
        r[i] = canonical(R, static_cast<std::uint32_t>(x));
    }
    std::sort(r.begin(), r.end());
    std::vector<std::uint64_t> key{v.p, static_cast<std::uint64_t>(depth), r[0], r[1], r[2], r[3]};
    auto it = g_memo.find(key);
    if (it != g_memo.end()) return it->second;
    Verdict out = search(r, v.p, depth, R.M);
    g_memo.emplace(std::move(key), out);
    return out;
}

}  // namespace qf
