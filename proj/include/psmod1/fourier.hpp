#pragma once

#include <cstdint>

#include "psmod1/psset.hpp"
#include "psmod1/realnum.hpp"

namespace psmod1 {

/// Window half-width Delta, Fourier cut-off T and the approximation
/// denominator q the cut-off was derived from.
struct WindowParams {
    double delta = 0.1;
    std::int64_t T = 10;
    std::int64_t q_choice = 100;

    void validate() const;

    /// Delta = N^(-theta + eps), q = floor(N^((12 - 6 gamma2)/13)), T = floor(q^(1/2)).
    /// Delta is capped at 1/2; at reachable N the uncapped value exceeds it.
    static WindowParams theorem_faithful(double N, const GammaPair& pair, double epsilon = 0.01);
};

/// -sum_{0<|h|<=H} e(theta h)/(2 pi i h) = -sum_{h=1}^{floor H} sin(2 pi h theta)/(pi h).
double psi_truncated(double theta, double H);

/// min(1, 1/(H ||theta||)); 1 when ||theta|| = 0.
double envelope_g(double theta, double H);

/// Truncated expansion of psi(-(n+1)^gamma) - psi(-n^gamma); zero when H < 1.
double M_H(std::uint64_t n, const Exponent& gamma, double H, const PrecisionPolicy& policy = {});

/// min(1, 1/(H ||(n+1)^gamma||)) + min(1, 1/(H ||n^gamma||))
double E_H_envelope(std::uint64_t n, const Exponent& gamma, double H, const PrecisionPolicy& policy = {});

/// Period-1 indicator of (-Delta, Delta); 0 on the closed boundary.
int window_F(double theta, double delta);

/// M(theta, T) = sum_{1<=|t|<=T} sin(2 pi t Delta)/(pi t) e(t theta), evaluated as a real.
double window_expansion_main(double theta, const WindowParams& window);

/// E(theta, T) = min(1, 1/(T ||theta + Delta||)) + min(1, 1/(T ||theta - Delta||))
double window_expansion_envelope(double theta, const WindowParams& window);

/// sum_{M<m<=2M} prod_{j=1,2} min(1, 1/(H_j ||(m + u_j)^gamma_j||)) at fixed shifts.
double min_product_sum(std::int64_t M, const GammaPair& pair, double H1, double H2, double u1, double u2);

/// M (H1 H2)^-1 (log M)^2 + M^(2/3) (log M)^2
double zhai_bound(std::int64_t M, double H1, double H2);

}  // namespace psmod1
