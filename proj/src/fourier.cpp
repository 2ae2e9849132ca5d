#include "psmod1/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "psmod1/error.hpp"
#include "psmod1/summation.hpp"

namespace psmod1 {

namespace {

// -sum_{h=1}^{h_max} sin(2 pi h theta)/(pi h)
double psi_partial(double theta, std::int64_t h_max) {
    const double r = reduce_phase(theta);
    CompensatedSum s;
    for (std::int64_t h = 1; h <= h_max; ++h)
        s.add(e_phase(phase_mul(h, r)).im / static_cast<double>(h));
    return -s.value() / std::numbers::pi;
}

double envelope_from_dist(double dist, double H) {
    if (dist == 0.0) return 1.0;
    return std::min(1.0, 1.0 / (H * dist));
}

double frac_dist(const FloorFrac& f) { return std::min(f.frac, 1.0 - f.frac); }

}  // namespace

void WindowParams::validate() const {
    require(delta > 0.0 && delta <= 0.5, "WindowParams: Delta must lie in (0, 1/2]");
    require(T >= 1, "WindowParams: T must be >= 1");
    require(q_choice >= 1, "WindowParams: q must be >= 1");
}

WindowParams WindowParams::theorem_faithful(double N, const GammaPair& pair, double epsilon) {
    require(N > 1.0, "WindowParams: N must exceed 1");
    WindowParams w;
    w.delta = std::min(0.5, std::pow(N, -pair.theta() + epsilon));
    w.q_choice = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::floor(std::pow(N, (12.0 - 6.0 * pair.gamma2().value()) / 13.0))));
    w.T = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(w.q_choice)))));
    return w;
}

double psi_truncated(double theta, double H) {
    require(H > 1.0 && std::isfinite(H), "psi_truncated: H must exceed 1");
    return psi_partial(theta, static_cast<std::int64_t>(std::floor(H)));
}

double envelope_g(double theta, double H) {
    require(H > 1.0, "envelope_g: H must exceed 1");
    return envelope_from_dist(dist_nearest(theta), H);
}

double M_H(std::uint64_t n, const Exponent& gamma, double H, const PrecisionPolicy& policy) {
    require(n >= 1, "M_H: n must be >= 1");
    if (H < 1.0) return 0.0;
    const auto h_max = static_cast<std::int64_t>(std::floor(H));
    const auto x1 = pow_floor_frac(n + 1, gamma, policy);
    const auto x0 = pow_floor_frac(n, gamma, policy);
    return psi_partial(-x1.frac, h_max) - psi_partial(-x0.frac, h_max);
}

double E_H_envelope(std::uint64_t n, const Exponent& gamma, double H, const PrecisionPolicy& policy) {
    require(n >= 1, "E_H_envelope: n must be >= 1");
    require(H > 0.0, "E_H_envelope: H must be positive");
    const auto x1 = pow_floor_frac(n + 1, gamma, policy);
    const auto x0 = pow_floor_frac(n, gamma, policy);
    return envelope_from_dist(frac_dist(x1), H) + envelope_from_dist(frac_dist(x0), H);
}

int window_F(double theta, double delta) {
    require(delta > 0.0 && delta <= 0.5, "window_F: Delta must lie in (0, 1/2]");
    return dist_nearest(theta) < delta ? 1 : 0;
}

double window_expansion_main(double theta, const WindowParams& window) {
    window.validate();
    const double r = reduce_phase(theta);
    CompensatedSum s;
    for (std::int64_t t = 1; t <= window.T; ++t) {
        const double amplitude = e_phase(phase_mul(t, window.delta)).im / static_cast<double>(t);
        s.add(amplitude * e_phase(phase_mul(t, r)).re);
    }
    return 2.0 * s.value() / std::numbers::pi;
}

double window_expansion_envelope(double theta, const WindowParams& window) {
    window.validate();
    const auto T = static_cast<double>(window.T);
    return envelope_from_dist(dist_nearest(theta + window.delta), T) +
           envelope_from_dist(dist_nearest(theta - window.delta), T);
}

double min_product_sum(std::int64_t M, const GammaPair& pair, double H1, double H2, double u1, double u2) {
    require(M >= 2, "min_product_sum: M must be >= 2");
    require(H1 > 1.0 && H2 > 1.0, "min_product_sum: H1, H2 must exceed 1");
    require(u1 >= 0.0 && u1 <= 1.0 && u2 >= 0.0 && u2 <= 1.0, "min_product_sum: shifts must lie in [0, 1]");
    const double g1 = pair.gamma1().value();
    const double g2 = pair.gamma2().value();
    CompensatedSum s;
    for (std::int64_t m = M + 1; m <= 2 * M; ++m) {
        const auto dm = static_cast<double>(m);
        const double f1 = envelope_from_dist(dist_nearest(std::pow(dm + u1, g1)), H1);
        const double f2 = envelope_from_dist(dist_nearest(std::pow(dm + u2, g2)), H2);
        s.add(f1 * f2);
    }
    return s.value();
}

double zhai_bound(std::int64_t M, double H1, double H2) {
    require(M >= 2, "zhai_bound: M must be >= 2");
    const auto dm = static_cast<double>(M);
    const double log2m = std::log(dm) * std::log(dm);
    return dm / (H1 * H2) * log2m + std::pow(dm, 2.0 / 3.0) * log2m;
}

}  // namespace psmod1
