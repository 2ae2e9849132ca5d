#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psmod1/realnum.hpp"
#include "psmod1/sieve.hpp"

namespace psmod1 {

enum class GammaMode { theorem, exploratory };

/// Exponents (gamma1, gamma2) of two Piatetski-Shapiro sets.
///
/// Theorem mode enforces 1/2 < gamma2 < gamma1 < 1 and 23/12 < gamma1 + gamma2 < 2.
/// Exploratory mode only requires 0 < gamma2 <= gamma1 <= 1 (so the floor
/// indicator stays 0/1) and records the violated ranges as warnings.
class GammaPair {
public:
    GammaPair(Exponent gamma1, Exponent gamma2, GammaMode mode = GammaMode::theorem);

    /// gamma1 = 1: the intersection degenerates to a single set of type gamma2.
    static GammaPair single_set_preset(Exponent gamma2);

    const Exponent& gamma1() const { return gamma1_; }
    const Exponent& gamma2() const { return gamma2_; }
    GammaMode mode() const { return mode_; }
    double sum() const { return gamma1_.value() + gamma2_.value(); }
    /// (12(gamma1 + gamma2) - 23) / 38
    double theta() const { return (12.0 * sum() - 23.0) / 38.0; }
    bool is_single_set_preset() const { return gamma1_.value() == 1.0; }
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    Exponent gamma1_;
    Exponent gamma2_;
    GammaMode mode_;
    std::vector<std::string> warnings_;
};

struct PrimeRecord {
    std::uint64_t p = 0;
    std::optional<std::uint64_t> n1;
    std::optional<std::uint64_t> n2;
    std::optional<double> frac_value;  // ||alpha p + beta|| when a target is attached

    friend bool operator==(const PrimeRecord&, const PrimeRecord&) = default;
};

/// floor(-p^gamma) - floor(-(p+1)^gamma), which is 1 iff p = floor(n^(1/gamma)) for some n.
int member_indicator(std::uint64_t p, const Exponent& gamma, const PrecisionPolicy& policy = {});
bool is_member(std::uint64_t p, const Exponent& gamma, const PrecisionPolicy& policy = {});
/// ceil(p^gamma) when p is a member.
std::optional<std::uint64_t> witness(std::uint64_t p, const Exponent& gamma,
                                     const PrecisionPolicy& policy = {});

/// Primes in (lo, hi] belonging to both sets, ascending, with witnesses.
std::vector<PrimeRecord> enumerate_intersection(std::uint64_t lo, std::uint64_t hi, const GammaPair& pair,
                                                const ArithmeticTables& tables,
                                                const PrecisionPolicy& policy = {});

/// pi(x; gamma1, gamma2)
std::uint64_t count_joint(double x, const GammaPair& pair, const ArithmeticTables& tables,
                          const PrecisionPolicy& policy = {});
/// pi_gamma(x)
std::uint64_t count_single(double x, const Exponent& gamma, const ArithmeticTables& tables,
                           const PrecisionPolicy& policy = {});

/// gamma1 gamma2 / (gamma1 + gamma2 - 1) * x^(gamma1 + gamma2 - 1) / log x
double main_term(double x, const GammaPair& pair);
/// x^gamma / log x
double single_main_term(double x, const Exponent& gamma);

}  // namespace psmod1
