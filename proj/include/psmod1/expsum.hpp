#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "psmod1/psset.hpp"
#include "psmod1/sieve.hpp"

namespace psmod1 {

/// Frequencies of the phase  alpha t n + h1 n^gamma1 + h2 n^gamma2.
struct HarmonicParams {
    explicit HarmonicParams(GammaPair pair_) : pair(std::move(pair_)) {}

    std::int64_t t = 1;
    std::int64_t h1 = 1;
    std::int64_t h2 = 1;
    double alpha = 0.0;
    GammaPair pair;
    double epsilon = 0.01;

    /// 1 <= |h_i| <= N^(1 - gamma_i + theta - eps/3) with theta = (12(gamma1+gamma2) - 23)/38.
    bool within_theorem_ranges(double N) const;
    /// The phase at n, reduced to [-1/2, 1/2].
    double phase(std::uint64_t n) const;
    /// R_* = |h1| N^gamma1 + |h2| N^gamma2
    double r_star(double N) const;
    /// (t, -h1, -h2, -alpha) style negation: all frequencies flipped.
    HarmonicParams negated() const;
};

/// A computed sum with the constant-free bound it is compared against.
/// Bounds hide implicit constants, so `ratio` is a diagnostic and is never
/// required to be below 1.
struct ExpSumReport {
    std::complex<double> value;
    double modulus = 0.0;
    std::uint64_t n_terms = 0;
    double max_weight = 0.0;
    std::optional<double> theoretical_bound;
    std::optional<double> ratio;
    std::optional<double> weyl_bound;  // Cauchy + shift-inequality majorant (Type II only)
    std::vector<std::pair<std::string, double>> params;
};

/// Parameters of the Type II shift step.
struct TypeIIConfig {
    std::optional<std::int64_t> Q;  // default floor(N^((7 - 2(gamma1+gamma2))/19 - 2 eps)), at least 1
    double epsilon = 0.01;

    std::int64_t resolve(double N, const GammaPair& pair) const;
};

/// sum_{n<=N} Lambda(n) e(n alpha). With a convergent denominator q the report
/// carries (N q^-1/2 + N^4/5 + N^1/2 q^1/2) log^4 N.
ExpSumReport linear_prime_sum(std::uint64_t N, double alpha, const ArithmeticTables& tables,
                              std::optional<std::int64_t> q = std::nullopt);

/// S(M) = sum_{M<m<=M1} e(alpha m + a m^gamma1 + b m^gamma2) with bound R^1/2 + M R^-1/3.
ExpSumReport double_sum_S(std::int64_t M, std::int64_t M1, double alpha, double a, double b,
                          const GammaPair& pair);

/// S_I(M, K) with m over (M, 2M] (coeff_a.size() == M) and k over (K, 2K].
/// The reference scale is N = 2MK; the bound is attached when M <= N^(1/4).
ExpSumReport type_I_sum(std::span<const std::complex<double>> coeff_a, const HarmonicParams& params,
                        std::int64_t K, double coeff_bound = 1.0);

/// S_II(M, K) with coeff_a over (M, 2M] and coeff_b over (K, 2K]; bound attached
/// when N^(1/4) <= K <= N^(1/2).
ExpSumReport type_II_sum(std::span<const std::complex<double>> coeff_a,
                         std::span<const std::complex<double>> coeff_b, const HarmonicParams& params,
                         const TypeIIConfig& config = {}, double coeff_bound = 1.0);

/// Gamma*(N) = sum_{N/2<n<=N} Lambda(n) e(alpha t n + h1 n^gamma1 + h2 n^gamma2).
ExpSumReport gamma_star(std::uint64_t N, const HarmonicParams& params, const ArithmeticTables& tables);

/// Right-hand side of the Heath-Brown identity at n by exhaustive enumeration
/// of ordered factorizations n1...n_{2j} = n with n_{j+1..2j} <= z.
double hb_terms(std::uint64_t n, double z, int k);

struct CaseSplit {
    int label = 0;  // 1..4
    std::vector<int> m_side;  // 0-based factor indices
    std::vector<int> k_side;
    int ell = 0;  // Case 4 prefix length
};

/// Groups six dyadic scales N_1..N_6 (0-based here) into an (M, K) split.
/// Requires N/128 < prod N_i <= N, N_i >= 1, and N_i <= (2N)^(1/3) for the
/// three Moebius factors (indices 3, 4, 5).
CaseSplit case_split(double N, std::span<const double, 6> factors);

struct DecomposedGammaStar {
    std::complex<double> value;
    std::array<std::uint64_t, 4> case_counts{};  // boxes routed to Cases 1..4
    std::uint64_t boxes = 0;
};

/// Gamma*(N) rebuilt from the k = 3 Heath-Brown expansion: every dyadic box of
/// (n_1, ..., n_6) is routed through case_split and evaluated as a bilinear sum.
/// Requires N <= 2 z^3 and z <= (2N)^(1/3).
DecomposedGammaStar gamma_star_decomposed(std::uint64_t N, const HarmonicParams& params,
                                          const ArithmeticTables& tables, double z);

/// Default z = (N/2)^(1/3).
DecomposedGammaStar gamma_star_decomposed(std::uint64_t N, const HarmonicParams& params,
                                          const ArithmeticTables& tables);

struct WeylCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Both sides of |sum z_l|^2 <= (2 + L/Q) sum_{|q|<=Q} (1 - |q|/Q) sum_l z_{l+q} conj(z_{l-q})
/// for z over (L, 2L] (z.size() == L). The right side is taken by its real part.
WeylCheck weyl_shift_check(std::span<const std::complex<double>> z, double Q);

}  // namespace psmod1
