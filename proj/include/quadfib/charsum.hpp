#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "quadfib/arith.hpp"
#include "quadfib/counting.hpp"
#include "quadfib/solubility.hpp"

namespace qf {

using Vec4 = std::array<std::int64_t, 4>;
using Bits4 = std::array<int, 4>;

// m is ordered (m02, m03, m12, m13) throughout.
struct CharsumInput {
    Vec4 s{1, 1, 1, 1};
    Vec4 m{1, 1, 1, 1};
    Bits4 sigma{};
    CountVariant v{};
};

// Admissibility of (m, sigma) alone; `why` receives the first failed condition.
bool admissible_m_sigma(const Vec4& m, const Bits4& sigma, std::string* why = nullptr);
bool admissible(const CharsumInput& in, std::string* why = nullptr);

// Parity of ((2-d)KD - D + k0k1 - k2k3 - (1-d))/4 with D = prod d, K = prod k, d = delta.
// Throws std::domain_error when the numerator is not divisible by 4.
int reciprocity_exponent(const Vec4& d, const Vec4& k, CountVariant v);

int theta2(const Vec4& d, const Vec4& dtilde, const Vec4& k, const Vec4& l);
int theta1(const Vec4& d, const Vec4& K, const Bits4& sigma, const Vec4& m, CountVariant v);
// The undivided weight (-1)^f * Theta for one (d, dtilde, k, l).
int theta_full(const Vec4& d, const Vec4& dtilde, const Vec4& k, const Vec4& l, const Bits4& sigma, const Vec4& m,
               CountVariant v);

// Throws std::invalid_argument for inadmissible (m, sigma).
const Mod8Set& set_A(const Vec4& m, const Bits4& sigma);

// The fibre C_{r,s,m,sigma} and the residue vector its 2-adic test is read from.
Quadric charsum_quadric(const CharsumInput& in);
Mod8 twoadic_vector(const CharsumInput& in);

// Both return 0 or 1. The charsum route throws std::logic_error if the sum is not exactly 0 or 1.
int indicator_via_charsum(const CharsumInput& in);
int indicator_direct(const CharsumInput& in, const SpfSieve& sieve);

std::int64_t sigma_r2(const Vec4& m, const Bits4& sigma, CountVariant v);
std::int64_t sigma_r3(const Vec4& m, const Bits4& sigma, CountVariant v);
// i = 2 or 3.
std::int64_t sigma_expected(const Vec4& m, const Bits4& sigma, CountVariant v, int i);

struct SigmaRow {
    Vec4 m{};
    Bits4 sigma{};
    std::array<std::int64_t, 4> value{};     // Sigma_{1,2}, Sigma_{2,2}, Sigma_{1,3}, Sigma_{2,3}
    std::array<std::int64_t, 4> expected{};
    bool pass = false;
};
// Every admissible (m, sigma) with m_ij in `values` (default {1,2,3,5}).
std::vector<SigmaRow> sigma_table(const std::vector<std::int64_t>& values = {1, 2, 3, 5});

// Sum of (q0+q1+q2+q3)/4 integrality over the product-one parts of A1 and A2; true when all integral.
bool component_sums_integral();

struct IdentityReport {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    std::vector<CharsumInput> failures;  // first few
    double elapsed_ms = 0;
};
// Exhaustive: odd squarefree s_i <= s_max, squarefree m_ij <= m_max, all admissible sigma, r = 1, 2.
IdentityReport identity_suite(std::int64_t s_max, std::int64_t m_max, const SpfSieve& sieve, unsigned workers = 1);
// Random admissible inputs with s_i, m_ij <= bound.
IdentityReport identity_random(std::uint64_t count, std::int64_t bound, std::uint64_t seed, const SpfSieve& sieve);

enum class CoeffMode { Ones, Mobius, Random };
const char* to_string(CoeffMode m);
CoeffMode coeff_mode_from_string(const std::string& s);

struct BilinearResult {
    std::int64_t X = 0, z = 0;
    CoeffMode mode = CoeffMode::Ones;
    std::int64_t S = 0;
    double normalized = 0;
};
constexpr std::int64_t kBilinearCeiling = 100000;
// Sum over z < n, m <= X, nm <= X of a_n b_m (n/m), n and m odd squarefree.
BilinearResult bilinear_hyperbolic_sum(std::int64_t X, std::int64_t z, CoeffMode mode, std::uint64_t seed,
                                       const SpfSieve& sieve, std::int64_t ceiling = kBilinearCeiling);

}  // namespace qf
