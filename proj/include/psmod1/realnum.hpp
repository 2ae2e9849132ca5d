#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace psmod1 {

/// How floors of n^gamma are computed: double precision first, then an
/// MPFR recomputation when the fractional part falls inside the guard band.
struct PrecisionPolicy {
    double guard_band = 1e-6;
    int high_precision_bits = 192;

    void validate() const;
};

/// A point on the unit circle, e(x) = exp(2 pi i x).
struct UnitComplex {
    double re = 1.0;
    double im = 0.0;

    std::complex<double> value() const { return {re, im}; }
    UnitComplex operator*(const UnitComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    UnitComplex conj() const { return {re, -im}; }
};

/// Exact rational u/v with v > 0 and gcd(u, v) = 1.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

/// An exponent gamma in (0, 1] as used by n^gamma.
///
/// Carries the double value used on the fast path and, when known, the exact
/// rational it stands for. Decimal and u/v text both parse to an exact rational;
/// a bare double becomes the dyadic rational it represents when the denominator
/// fits in 64 bits. The rational drives perfect-power exactness detection.
class Exponent {
public:
    Exponent() = default;
    /* implicit */ Exponent(double value);
    static Exponent rational(std::int64_t num, std::int64_t den);
    /// Accepts "0.75", "3/4", "rat:3/4" or "dec:0.75".
    static Exponent parse(std::string_view text);

    double value() const { return value_; }
    const std::optional<Rational>& exact() const { return exact_; }
    std::string to_string() const;

    friend bool operator==(const Exponent& a, const Exponent& b) {
        return a.value_ == b.value_;
    }

private:
    double value_ = 1.0;
    std::optional<Rational> exact_ = Rational{1, 1};
};

/// x - floor(x) in [0, 1).
double frac(double x);
/// Distance from x to the nearest integer, in [0, 1/2].
double dist_nearest(double x);
/// psi(x) = x - floor(x) - 1/2.
double sawtooth(double x);
/// x - round(x), in [-1/2, 1/2]; odd in x.
double reduce_phase(double x);

/// e(x) with x reduced mod 1 and an octant reduction before the trig calls,
/// so quarter points are exact and e(-x) is the exact conjugate of e(x).
UnitComplex e_phase(double x);

/// Fractional part of n * alpha for integer n, using an exact two-product so
/// only the representation error of alpha itself survives.
double frac_mul(std::int64_t n, double alpha);
/// n * alpha reduced to [-1/2, 1/2]; exactly odd in n.
double phase_mul(std::int64_t n, double alpha);

struct FloorFrac {
    std::int64_t floor = 0;
    double frac = 0.0;
    bool escalated = false;  // high precision was used
    bool exact = false;      // value is an exact integer by perfect-power detection
};

/// floor(n^gamma) and n^gamma - floor(n^gamma), exact in the floor.
/// Throws BoundaryError if high precision cannot separate n^gamma from an integer.
FloorFrac pow_floor_frac(std::uint64_t n, const Exponent& gamma,
                         const PrecisionPolicy& policy = {});

/// n^gamma evaluated in MPFR at the given precision and rounded to double.
/// Shared by the escalation path and by callers that need an independent value.
double pow_high_precision(std::uint64_t n, const Exponent& gamma, int bits);

}  // namespace psmod1
