#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quadfib/arith.hpp"

namespace qf {

// a0 x0^2 + a1 x1^2 + a2 x2^2 + a3 x3^2 = 0, all ai nonzero.
struct Quadric {
    std::array<std::int64_t, 4> a{};
};

enum class Verdict { Insoluble = 0, Soluble = 1, Unknown = 2 };

const char* to_string(Verdict v);

struct Place {
    enum Kind { Real, Two, Odd } kind = Real;
    std::uint64_t p = 0;  // 0 for Real, 2 for Two, odd prime otherwise

    static Place real() { return {Real, 0}; }
    static Place two() { return {Two, 2}; }
    static Place odd(std::uint64_t p);
    static Place of_prime(std::uint64_t p);  // 0 means the real place
    std::string name() const;
};

// Residue vectors in ((Z/8)^*)^4 are indexed by q0 + 8 q1 + 64 q2 + 512 q3 with odd qi < 8.
using Mod8 = std::array<std::uint8_t, 4>;
using Mod8Set = std::bitset<4096>;

inline int mod8_index(const Mod8& q) { return q[0] + 8 * q[1] + 64 * q[2] + 512 * q[3]; }
std::uint8_t unit_mod8(std::int64_t a);  // odd a reduced into {1,3,5,7}
std::vector<Mod8> mod8_units4();          // all 256 vectors, lexicographic
std::vector<Mod8> elements(const Mod8Set& s);
std::size_t count_with_product_one(const Mod8Set& s);

const Mod8Set& mod8_set_A1();
const Mod8Set& mod8_set_A2();
// {q : (q_i, q_j, q_k, q_l) in A2}
const Mod8Set& mod8_set_permuted(int i, int j, int k, int l);

Quadric normalize(const Quadric& q, const SpfSieve& sieve);

Verdict solvable_real(const Quadric& q);
Verdict local_indicator_odd(const Quadric& normalized, std::uint64_t p);
Verdict local_indicator_2(const Quadric& normalized);

// Everywhere-local test on a quadric that is already normalized, given the odd
// primes dividing a0 a1 a2 a3. Skips all validation; used in tight loops.
bool locally_soluble_prepared(const std::array<std::int64_t, 4>& c, std::span<const std::uint32_t> odd_primes);

int hilbert_symbol(std::int64_t a, std::int64_t b, Place v);

inline constexpr std::uint64_t kOracleMaxModulus = 1u << 17;
inline constexpr int kOracleDepthOdd = 4;
inline constexpr int kOracleDepthTwo = 6;
Verdict padic_oracle(const Quadric& q, Place v, int depth);

struct PlaceVerdict {
    Place place;
    Verdict verdict;
};
// Verdicts at infinity, 2 and every odd prime dividing the normalized product.
std::vector<PlaceVerdict> local_verdicts(const Quadric& q, const SpfSieve& sieve);
bool is_everywhere_locally_soluble(const Quadric& q, const SpfSieve& sieve);
bool has_rational_point(const Quadric& q, const SpfSieve& sieve);

// Zero of minimal sup-norm <= height_bound. Among those: fewest nonzero
// coordinates, first nonzero coordinate positive, then lexicographically largest.
std::optional<std::array<std::int64_t, 4>> find_rational_point(const Quadric& q, std::int64_t height_bound);

}  // namespace qf
