#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "frozen.hpp"
#include "psmod1/error.hpp"
#include "psmod1/fourier.hpp"
#include "psmod1/verify.hpp"

using namespace psmod1;

namespace {

// -sum_{0<|h|<=H} e(theta h) / (2 pi i h), summed as complex numbers
double psi_complex(double theta, int H) {
    std::complex<double> s = 0.0;
    for (int h = -H; h <= H; ++h) {
        if (h == 0) continue;
        const double a = 2 * std::numbers::pi * theta * h;
        s -= std::complex<double>(std::cos(a), std::sin(a)) / std::complex<double>(0.0, 2 * std::numbers::pi * h);
    }
    return s.real();
}

}  // namespace

TEST_CASE("psi_truncated examples") {
    CHECK(std::fabs(psi_truncated(0.5, 17)) < 1e-14);
    CHECK(psi_truncated(0.0, 100) == 0.0);
    CHECK(std::fabs(sawtooth(0.3) - psi_truncated(0.3, 1000)) <= 2 * envelope_g(0.3, 1000));
    CHECK_THROWS_AS(psi_truncated(0.1, 1.0), ContractError);
}

TEST_CASE("psi_truncated matches the complex form and is odd") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double theta = u(rng);
        CHECK(psi_truncated(theta, 25.5) == doctest::Approx(psi_complex(theta, 25)).epsilon(1e-12));
        CHECK(psi_truncated(-theta, 25.5) == -psi_truncated(theta, 25.5));
    }
}

TEST_CASE("envelope_g examples") {
    CHECK(envelope_g(0.0, 10) == 1.0);
    CHECK(envelope_g(0.5, 4) == 0.5);
    CHECK(envelope_g(0.25, 100) == doctest::Approx(0.04).epsilon(1e-15));
}

TEST_CASE("psi envelope constant 2 on a dense grid") {
    // measured constant on a finer grid than the acceptance run
    for (double H : {10.0, 100.0, 1000.0}) {
        const double c = psi_envelope_constant(H, 100'000);
        MESSAGE("H=" << H << " measured constant " << c);
        CHECK(c <= 2.0);
    }
}

TEST_CASE("M_H examples") {
    const Exponent g(0.75);
    CHECK(M_H(10, g, 0.5) == 0.0);
    // H = 1: two terms, written out
    const double a = std::pow(11.0, 0.75), b = std::pow(10.0, 0.75);
    const double hand = -(std::sin(-2 * std::numbers::pi * a) - std::sin(-2 * std::numbers::pi * b)) / std::numbers::pi;
    CHECK(M_H(10, g, 1.0) == doctest::Approx(hand).epsilon(1e-10));
    std::mt19937_64 rng(32);
    std::uniform_int_distribution<std::uint64_t> n(1, 1'000'000);
    for (int i = 0; i < 200; ++i) {
        const auto m = n(rng);
        const double lhs = M_H(m, g, 37.0);
        const double rhs = psi_truncated(-std::pow(static_cast<double>(m + 1), 0.75), 37.0) -
                           psi_truncated(-std::pow(static_cast<double>(m), 0.75), 37.0);
        CHECK(std::fabs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("M_H approaches the sawtooth difference within the envelope") {
    const Exponent g(0.75);
    for (std::uint64_t m = 1; m < 2000; m += 7) {
        const double H = 200.0;
        const double target = sawtooth(-std::pow(static_cast<double>(m + 1), 0.75)) -
                              sawtooth(-std::pow(static_cast<double>(m), 0.75));
        CHECK(std::fabs(M_H(m, g, H) - target) <= 2.0 * E_H_envelope(m, g, H));
    }
}

TEST_CASE("E_H_envelope examples") {
    // 16^(3/4) = 8 exactly
    CHECK(E_H_envelope(15, Exponent::rational(3, 4), 100) >= 1.0);
    const double v = E_H_envelope(10, 0.75, 1e6);
    CHECK(v > 0.0);
    CHECK(v < 1e-3);
}

TEST_CASE("window_F examples and periodicity") {
    CHECK(window_F(0.0, 0.1) == 1);
    CHECK(window_F(0.1, 0.1) == 0);
    CHECK(window_F(0.95, 0.1) == 1);
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = std::ldexp(std::round(std::ldexp(u(rng), 30)), -30);
        CHECK(window_F(x + 1.0, 0.23) == window_F(x, 0.23));
    }
}

TEST_CASE("window_expansion_main examples") {
    WindowParams w;
    w.delta = 0.5;
    w.T = 13;
    CHECK(std::fabs(window_expansion_main(0.37, w)) < 1e-14);
    w.delta = 0.1;
    w.T = 1;
    CHECK(window_expansion_main(0.0, w) == doctest::Approx(2 * std::sin(2 * std::numbers::pi * 0.1) / std::numbers::pi));
}

TEST_CASE("window envelope constant") {
    for (double delta : {0.01, 0.1, 0.25})
        for (std::int64_t T : {10, 100}) {
            WindowParams w;
            w.delta = delta;
            w.T = T;
            const double c = window_envelope_constant(w, 20'000);
            MESSAGE("delta=" << delta << " T=" << T << " C_W=" << c);
            CHECK(c <= 10.0);
        }
}

TEST_CASE("window_expansion_envelope values") {
    WindowParams w;
    w.delta = 0.1;
    w.T = 10;
    CHECK(window_expansion_envelope(0.1, w) == doctest::Approx(1.0 + 1.0 / (10 * 0.2)));
    CHECK(window_expansion_envelope(0.5, w) == doctest::Approx(2.0 / (10 * 0.4)));
    CHECK(window_expansion_envelope(0.3, w) == doctest::Approx(1.0 / (10 * 0.4) + 1.0 / (10 * 0.2)));
}

TEST_CASE("WindowParams validation and theorem-faithful defaults") {
    WindowParams w;
    w.delta = 0.6;
    CHECK_THROWS_AS(w.validate(), ContractError);
    w.delta = 0.1;
    w.T = 0;
    CHECK_THROWS_AS(w.validate(), ContractError);
    const GammaPair p(0.99, 0.95);
    const auto f = WindowParams::theorem_faithful(1e12, p);
    CHECK_NOTHROW(f.validate());
    CHECK(f.q_choice == static_cast<std::int64_t>(std::floor(std::pow(1e12, (12 - 6 * 0.95) / 13.0))));
    CHECK(f.T == static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(f.q_choice)))));
}

TEST_CASE("min_product_sum") {
    const GammaPair p(0.99, 0.95);
    CHECK(min_product_sum(1000, p, 10, 10, 0, 0) == doctest::Approx(frozen::kMinProductSum).epsilon(1e-10));
    CHECK(min_product_sum(1000, p, 1 + 1e-9, 1 + 1e-9, 0.3, 0.7) <= 1000.0);
    CHECK(min_product_sum(1000, p, 1e12, 1e12, 0.5, 0.5) < 1e-3);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            const double v = min_product_sum(300, p, 5, 7, i / 15.0, j / 15.0);
            CHECK(std::isfinite(v));
            CHECK(v >= 0.0);
            CHECK(v <= 300.0);
        }
    CHECK(zhai_bound(1000, 10, 10) ==
          doctest::Approx(1000 / 100.0 * std::pow(std::log(1000.0), 2) + std::pow(1000.0, 2.0 / 3) * std::pow(std::log(1000.0), 2)));
}
