#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psmod1/realnum.hpp"

namespace psmod1 {

enum class NamedConstant { sqrt2, golden, pi, e };

/// The irrational alpha, held at `precision_bits` of MPFR precision.
///
/// CLI syntax: sqrt2 | golden | pi | e | dec:<digits> | rat:<u>/<v>.
/// Rational targets exist for tests; decimal digits are taken verbatim.
class IrrationalTarget {
public:
    static IrrationalTarget named(NamedConstant c, int precision_bits = 256);
    static IrrationalTarget decimal(std::string_view digits, int precision_bits = 256);
    static IrrationalTarget rational(std::int64_t num, std::int64_t den);
    static IrrationalTarget parse(std::string_view spec, int precision_bits = 256);

    double value() const { return value_; }
    int precision_bits() const { return bits_; }
    const std::string& spec() const { return spec_; }
    const std::optional<Rational>& rational_value() const { return rational_; }
    /// |target - a/q| * q^2 evaluated at full precision.
    double quality(std::int64_t a, std::int64_t q) const;
    /// Significant decimal digits of the held value.
    std::string digits(int count) const;

    struct Impl;
    const Impl& impl() const { return *impl_; }

private:
    std::string spec_;
    int bits_ = 256;
    double value_ = 0.0;
    std::optional<Rational> rational_;
    std::shared_ptr<const Impl> impl_;
};

struct Convergent {
    std::int64_t a = 0;
    std::int64_t q = 1;
    double quality = 0.0;  // |alpha - a/q| * q^2

    friend bool operator==(const Convergent& x, const Convergent& y) { return x.a == y.a && x.q == y.q; }
};

struct ConvergentTable {
    std::vector<Convergent> items;
    bool truncated = false;   // precision horizon reached before q_max
    bool terminated = false;  // the expansion ended (rational target)
};

/// Continued-fraction convergents with q <= q_max, strictly ascending in q.
/// Stops before q^2 reaches 2^(precision_bits - 16).
ConvergentTable convergents(const IrrationalTarget& target, std::int64_t q_max);

struct DirichletApprox {
    std::int64_t b = 0;
    std::int64_t r = 1;
};

/// b/r with gcd(b, r) = 1, 1 <= r <= Q and |theta - b/r| <= 1/(r Q).
/// Works on the exact rational value of the double `theta`.
DirichletApprox dirichlet_approx(double theta, std::int64_t Q);

/// sum_{n=1}^{N} min(U, 1/||alpha n + beta||), compensated and chunk-ordered.
double min_linear_sum(std::int64_t N, double U, double alpha, double beta);

/// NU/q + U + (N + q) log max(q, 2)
double karatsuba_bound(double N, double U, std::int64_t q);

}  // namespace psmod1
