#include "psmod1/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "psmod1/error.hpp"
#include "psmod1/expsum.hpp"
#include "psmod1/realnum.hpp"

namespace psmod1 {

HbCheck verify_hb(double z, int k, const ArithmeticTables& tables) {
    require(z >= 1.0 && k >= 1, "verify_hb: requires z >= 1 and k >= 1");
    const auto top = static_cast<std::uint64_t>(std::floor(2.0 * std::pow(z, k)));
    require(top <= tables.limit(), "verify_hb: 2 z^k exceeds table limit");
    HbCheck out;
    for (std::uint64_t n = 1; n <= top; ++n) {
        const double err = std::fabs(hb_terms(n, z, k) - tables.lambda(n));
        if (err > out.max_error) {
            out.max_error = err;
            out.worst_n = n;
        }
        ++out.checked;
    }
    return out;
}

WeylFuzz verify_weyl(std::uint64_t trials, std::uint64_t seed, int max_L, double max_Q) {
    require(max_L >= 1 && max_Q >= 1.0, "verify_weyl: requires max_L >= 1 and max_Q >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len(1, max_L);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    WeylFuzz out;
    std::vector<std::complex<double>> z;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        const int L = len(rng);
        const double Q = 1.0 + (max_Q - 1.0) * unit(rng);
        z.assign(static_cast<std::size_t>(L), {});
        // alternate between noise and polynomial phases, which concentrate the sum
        const int shape = static_cast<int>(trial % 3);
        const double a = unit(rng), b = unit(rng) * 0.01;
        for (int l = 0; l < L; ++l) {
            const double r = shape == 2 ? 1.0 : unit(rng) * 2.0;
            const double ph = shape == 0 ? unit(rng) : a * l + b * l * l;
            z[static_cast<std::size_t>(l)] = r * e_phase(ph).value();
        }
        const auto check = weyl_shift_check(z, Q);
        ++out.trials;
        if (!check.holds) ++out.failures;
        if (check.rhs > 0.0) out.max_ratio = std::max(out.max_ratio, check.lhs / check.rhs);
    }
    return out;
}

double psi_envelope_constant(double H, std::int64_t grid) {
    require(H > 1.0 && grid >= 1, "psi_envelope_constant: requires H > 1 and grid >= 1");
    double worst = 0.0;
    for (std::int64_t i = 0; i < grid; ++i) {
        const double theta = static_cast<double>(i) / static_cast<double>(grid);
        const double diff = std::fabs(sawtooth(theta) - psi_truncated(theta, H));
        worst = std::max(worst, diff / envelope_g(theta, H));
    }
    return worst;
}

double window_envelope_constant(const WindowParams& window, std::int64_t grid) {
    window.validate();
    require(grid >= 1, "window_envelope_constant: grid must be >= 1");
    double worst = 0.0;
    for (std::int64_t i = 0; i < grid; ++i) {
        const double theta = (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
        const double diff = std::fabs(window_F(theta, window.delta) - 2.0 * window.delta -
                                      window_expansion_main(theta, window));
        worst = std::max(worst, diff / window_expansion_envelope(theta, window));
    }
    return worst;
}

}  // namespace psmod1
