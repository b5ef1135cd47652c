#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "quadfib/arith.hpp"
#include "quadfib/solubility.hpp"

namespace qf {

struct BasePoint {
    std::array<std::int64_t, 4> t{};
};

struct CountVariant {
    int r = 1;
    int delta() const { return 3 - 2 * r; }
};

// max(|t0|,|t1|) * max(|t2|,|t3|); rejects zero coordinates and gcd(t0,t1) or gcd(t2,t3) != 1.
std::uint64_t height(const BasePoint& t);

// signed:   (-d t0 t2, t1 t3, d t1 t2, -t0 t3) with d = delta(v)
// unsigned: (t0 t2, t1 t3, t1 t2, t0 t3)
Quadric fibre_quadric(const BasePoint& t, CountVariant v, bool signed_form);

struct CountOptions {
    unsigned workers = 1;
    std::uint64_t ceiling = 100000;
    std::size_t memo_capacity = 0;  // LRU entries per worker; 0 turns the memo off
};

struct CountProblem {
    enum Kind { Raw, N1, N2, Region } kind = Raw;
    std::array<int, 4> l{};  // sign vector for Region: t_i < 0 iff l_i = 1

    static CountProblem raw() { return {Raw, {}}; }
    static CountProblem n1() { return {N1, {}}; }
    static CountProblem n2() { return {N2, {}}; }
    static CountProblem region(std::array<int, 4> l) { return {Region, l}; }
};

enum class Route {
    Fast,       // kernel tables and prepared local tests; Raw uses the (t0,t1) -> -(t0,t1), (t2,t3) -> -(t2,t3) symmetry
    Reference,  // every sign pattern enumerated, each fibre normalized and tested from scratch
};

// hist[h] = number of counted tuples of height exactly h, for 0 <= h <= B.
// For Raw this is the sign-unrestricted tuple count before dividing by 4.
std::vector<std::uint64_t> height_histogram(const CountProblem& prob, std::uint64_t B, const SpfSieve& sieve,
                                            const CountOptions& opts = {}, Route route = Route::Fast);

std::uint64_t count_raw(std::uint64_t B, const SpfSieve& sieve, const CountOptions& opts = {}, Route route = Route::Fast);
std::uint64_t count_N(std::uint64_t B, const SpfSieve& sieve, const CountOptions& opts = {}, Route route = Route::Fast);
std::uint64_t count_N1(std::uint64_t B, const SpfSieve& sieve, const CountOptions& opts = {}, Route route = Route::Fast);
std::uint64_t count_N2(std::uint64_t B, const SpfSieve& sieve, const CountOptions& opts = {}, Route route = Route::Fast);
std::uint64_t region_count(std::uint64_t B, std::array<int, 4> l, const SpfSieve& sieve, const CountOptions& opts = {},
                           Route route = Route::Fast);

struct CensusRow {
    std::uint64_t B = 0;
    std::uint64_t N = 0, N1 = 0, N2 = 0, raw = 0;
    double elapsed_ms = 0;
};
CensusRow census_row(std::uint64_t B, const SpfSieve& sieve, const CountOptions& opts = {});

struct Decomposition {
    std::array<std::int64_t, 4> b{};      // square parts
    std::array<std::int64_t, 4> m{};      // m02, m03, m12, m13
    std::array<int, 4> sigma{};           // v_2 of the s parts
    std::array<std::int64_t, 4> s{};      // odd squarefree remainders
};

Decomposition decompose(const std::array<std::int64_t, 4>& t, const SpfSieve& sieve);
std::array<std::int64_t, 4> reconstruct(const Decomposition& d);

using TestFunction = std::function<std::int64_t(std::int64_t)>;

struct HyperbolaTerms {
    i128 full = 0, first = 0, second = 0, overlap = 0;
};
HyperbolaTerms hyperbola_terms(std::int64_t X, std::int64_t Y, const std::array<std::int64_t, 4>& c,
                               const std::array<TestFunction, 4>& g);
bool hyperbola_split_check(std::int64_t X, std::int64_t Y, const std::array<std::int64_t, 4>& c,
                           const std::array<TestFunction, 4>& g);

}  // namespace qf
