#pragma once

#include <cstdint>

#include "psmod1/fourier.hpp"
#include "psmod1/sieve.hpp"

namespace psmod1 {

struct HbCheck {
    std::uint64_t checked = 0;  // n = 1 .. floor(2 z^k)
    double max_error = 0.0;     // max |hb_terms(n) - Lambda(n)|
    std::uint64_t worst_n = 0;
};

/// Compares hb_terms against Lambda for every n <= 2 z^k.
HbCheck verify_hb(double z, int k, const ArithmeticTables& tables);

struct WeylFuzz {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double max_ratio = 0.0;  // max lhs / rhs over trials with rhs > 0
};

/// Random sequences with L <= max_L and Q in [1, max_Q]; reproducible from `seed`.
WeylFuzz verify_weyl(std::uint64_t trials, std::uint64_t seed, int max_L = 64, double max_Q = 64.0);

/// max over theta = i/grid of |psi(theta) - psi_truncated(theta, H)| / g(theta, H).
double psi_envelope_constant(double H, std::int64_t grid);

/// max over theta = (i + 1/2)/grid of |F_Delta(theta) - 2 Delta - M(theta, T)| / E(theta, T).
double window_envelope_constant(const WindowParams& window, std::int64_t grid);

}  // namespace psmod1
