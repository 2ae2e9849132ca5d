#include "psmod1/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "psmod1/error.hpp"
#include "psmod1/parallel.hpp"
#include "psmod1/summation.hpp"

namespace psmod1 {

namespace {

using Complex = std::complex<double>;

struct Coeff {
    std::int64_t index;
    Complex weight;
};

// sum over a(m) b(k) e(m k) restricted to n_lo < m k <= n_hi; b sorted by index.
template <class PhaseAt>
Complex bilinear_kernel(std::span<const Coeff> a, std::span<const Coeff> b, std::int64_t n_lo,
                        std::int64_t n_hi, PhaseAt&& phase_at) {
    ComplexCompensatedSum s;
    for (const auto& [m, am] : a) {
        const std::int64_t k_min = n_lo / m + 1;
        const std::int64_t k_max = n_hi / m;
        auto it = std::lower_bound(b.begin(), b.end(), k_min,
                                   [](const Coeff& c, std::int64_t v) { return c.index < v; });
        for (; it != b.end() && it->index <= k_max; ++it) s.add(am * it->weight * phase_at(m * it->index));
    }
    return s.value();
}

double bilinear_exponent(const GammaPair& pair) { return (31.0 + 2.0 * pair.sum()) / 38.0; }

ExpSumReport finish(Complex value, std::uint64_t n_terms, double max_weight,
                    std::vector<std::pair<std::string, double>> params) {
    ExpSumReport r;
    r.value = value;
    r.modulus = std::abs(value);
    r.n_terms = n_terms;
    r.max_weight = max_weight;
    r.params = std::move(params);
    const double cap = static_cast<double>(n_terms) * max_weight;
    if (r.modulus > cap * (1.0 + 1e-9) + 1e-12)
        throw std::logic_error("ExpSumReport: modulus exceeds the triangle-inequality cap");
    return r;
}

void attach_bound(ExpSumReport& r, double bound) {
    r.theoretical_bound = bound;
    r.ratio = bound > 0.0 ? r.modulus / bound : 0.0;
}

std::vector<Coeff> checked_coeffs(std::span<const Complex> c, std::int64_t first_index, double bound,
                                  const char* op, double& max_abs) {
    require(bound > 0.0, std::string(op) + ": coefficient bound must be positive");
    std::vector<Coeff> out;
    out.reserve(c.size());
    max_abs = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double mag = std::abs(c[i]);
        require(std::isfinite(mag) && mag <= bound * (1.0 + 1e-12),
                std::string(op) + ": coefficient exceeds the declared bound");
        max_abs = std::max(max_abs, mag);
        out.push_back({first_index + static_cast<std::int64_t>(i), c[i]});
    }
    return out;
}

std::vector<std::pair<std::string, double>> harmonic_echo(const HarmonicParams& p) {
    return {{"t", static_cast<double>(p.t)},
            {"h1", static_cast<double>(p.h1)},
            {"h2", static_cast<double>(p.h2)},
            {"alpha", p.alpha},
            {"gamma1", p.pair.gamma1().value()},
            {"gamma2", p.pair.gamma2().value()},
            {"epsilon", p.epsilon}};
}

// Chunked, ordered evaluation of a type I / type II sum over dense m.
Complex dense_bilinear(const std::vector<Coeff>& a, const std::vector<Coeff>& b, const HarmonicParams& params) {
    const auto K = static_cast<std::int64_t>(b.size());
    const std::int64_t chunk = std::max<std::int64_t>(1, kChunkSize / std::max<std::int64_t>(1, K));
    const auto parts = map_chunks(
        0, static_cast<std::int64_t>(a.size()),
        [&](std::int64_t lo, std::int64_t hi) {
            const std::span<const Coeff> rows(a.data() + lo, static_cast<std::size_t>(hi - lo));
            return bilinear_kernel(rows, b, 0, std::numeric_limits<std::int64_t>::max(), [&](std::int64_t n) {
                return e_phase(params.phase(static_cast<std::uint64_t>(n))).value();
            });
        },
        chunk);
    ComplexCompensatedSum s;
    for (const auto& v : parts) s.add(v);
    return s.value();
}

}  // namespace

bool HarmonicParams::within_theorem_ranges(double N) const {
    const double theta = pair.theta();
    const double cap1 = std::pow(N, 1.0 - pair.gamma1().value() + theta - epsilon / 3.0);
    const double cap2 = std::pow(N, 1.0 - pair.gamma2().value() + theta - epsilon / 3.0);
    const auto a1 = static_cast<double>(h1 < 0 ? -h1 : h1);
    const auto a2 = static_cast<double>(h2 < 0 ? -h2 : h2);
    return a1 >= 1.0 && a2 >= 1.0 && a1 <= cap1 && a2 <= cap2;
}

double HarmonicParams::phase(std::uint64_t n) const {
    const auto dn = static_cast<double>(n);
    double ph = phase_mul(t * static_cast<std::int64_t>(n), alpha);
    if (h1 != 0) ph += reduce_phase(static_cast<double>(h1) * std::pow(dn, pair.gamma1().value()));
    if (h2 != 0) ph += reduce_phase(static_cast<double>(h2) * std::pow(dn, pair.gamma2().value()));
    return reduce_phase(ph);
}

double HarmonicParams::r_star(double N) const {
    return std::fabs(static_cast<double>(h1)) * std::pow(N, pair.gamma1().value()) +
           std::fabs(static_cast<double>(h2)) * std::pow(N, pair.gamma2().value());
}

HarmonicParams HarmonicParams::negated() const {
    HarmonicParams p = *this;
    p.t = -t;
    p.h1 = -h1;
    p.h2 = -h2;
    return p;
}

std::int64_t TypeIIConfig::resolve(double N, const GammaPair& pair) const {
    std::int64_t q = 0;
    if (Q) {
        q = *Q;
    } else {
        const double e = (7.0 - 2.0 * pair.sum()) / 19.0 - 2.0 * epsilon;
        q = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(std::pow(N, e))));
    }
    require(q >= 1 && static_cast<double>(q) < N, "TypeIIConfig: Q must satisfy 1 <= Q < N");
    return q;
}

ExpSumReport linear_prime_sum(std::uint64_t N, double alpha, const ArithmeticTables& tables,
                              std::optional<std::int64_t> q) {
    require(N >= 2, "linear_prime_sum: N must be >= 2");
    require(N <= tables.limit(), "linear_prime_sum: N exceeds table limit");
    require(std::isfinite(alpha), "linear_prime_sum: alpha must be finite");
    const auto parts = map_chunks(2, static_cast<std::int64_t>(N) + 1, [&](std::int64_t lo, std::int64_t hi) {
        ComplexCompensatedSum s;
        for (std::int64_t n = lo; n < hi; ++n) {
            const auto w = tables.lambda_witness(static_cast<std::uint64_t>(n));
            if (!w) continue;
            const double l = std::log(static_cast<double>(w->p));
            const auto e = e_phase(phase_mul(n, alpha));
            s.add(l * e.re, l * e.im);
        }
        return s;
    });
    ComplexCompensatedSum total;
    for (const auto& s : parts) total.merge(s);
    const auto dN = static_cast<double>(N);
    auto r = finish(total.value(), N, std::log(dN), {{"N", dN}, {"alpha", alpha}});
    if (q) {
        require(*q >= 1, "linear_prime_sum: q must be >= 1");
        const auto dq = static_cast<double>(*q);
        const double l4 = std::pow(std::log(dN), 4.0);
        attach_bound(r, (dN / std::sqrt(dq) + std::pow(dN, 0.8) + std::sqrt(dN * dq)) * l4);
        r.params.emplace_back("q", dq);
    }
    return r;
}

ExpSumReport double_sum_S(std::int64_t M, std::int64_t M1, double alpha, double a, double b,
                          const GammaPair& pair) {
    require(M >= 1 && M < M1 && M1 <= 2 * M, "double_sum_S: requires M < M1 <= 2M");
    require(a != 0.0 && b != 0.0, "double_sum_S: requires a b != 0");
    require(std::isfinite(alpha) && std::isfinite(a) && std::isfinite(b), "double_sum_S: non-finite input");
    const double g1 = pair.gamma1().value();
    const double g2 = pair.gamma2().value();
    const auto parts = map_chunks(M + 1, M1 + 1, [&](std::int64_t lo, std::int64_t hi) {
        ComplexCompensatedSum s;
        for (std::int64_t m = lo; m < hi; ++m) {
            const auto dm = static_cast<double>(m);
            const double ph = phase_mul(m, alpha) + reduce_phase(a * std::pow(dm, g1)) +
                              reduce_phase(b * std::pow(dm, g2));
            const auto e = e_phase(ph);
            s.add(e.re, e.im);
        }
        return s;
    });
    ComplexCompensatedSum total;
    for (const auto& s : parts) total.merge(s);
    const auto dM = static_cast<double>(M);
    const double R = std::fabs(a) * std::pow(dM, g1) + std::fabs(b) * std::pow(dM, g2);
    auto r = finish(total.value(), static_cast<std::uint64_t>(M1 - M), 1.0,
                    {{"M", dM}, {"M1", static_cast<double>(M1)}, {"alpha", alpha}, {"a", a}, {"b", b},
                     {"gamma1", g1}, {"gamma2", g2}, {"R", R}});
    attach_bound(r, std::sqrt(R) + dM * std::pow(R, -1.0 / 3.0));
    return r;
}

ExpSumReport type_I_sum(std::span<const Complex> coeff_a, const HarmonicParams& params, std::int64_t K,
                        double coeff_bound) {
    const auto M = static_cast<std::int64_t>(coeff_a.size());
    require(M >= 1 && K >= 1, "type_I_sum: requires M, K >= 1");
    double max_a = 0.0;
    const auto a = checked_coeffs(coeff_a, M + 1, coeff_bound, "type_I_sum", max_a);
    std::vector<Coeff> b;
    b.reserve(static_cast<std::size_t>(K));
    for (std::int64_t k = K + 1; k <= 2 * K; ++k) b.push_back({k, Complex(1.0, 0.0)});

    const double N = 2.0 * static_cast<double>(M) * static_cast<double>(K);
    auto echo = harmonic_echo(params);
    echo.insert(echo.end(), {{"M", static_cast<double>(M)}, {"K", static_cast<double>(K)}, {"N", N},
                             {"R_star", params.r_star(N)}});
    auto r = finish(dense_bilinear(a, b, params), static_cast<std::uint64_t>(M * K), max_a, std::move(echo));
    if (static_cast<double>(M) <= std::pow(N, 0.25))
        attach_bound(r, std::pow(N, bilinear_exponent(params.pair) + params.epsilon));
    return r;
}

ExpSumReport type_II_sum(std::span<const Complex> coeff_a, std::span<const Complex> coeff_b,
                         const HarmonicParams& params, const TypeIIConfig& config, double coeff_bound) {
    const auto M = static_cast<std::int64_t>(coeff_a.size());
    const auto K = static_cast<std::int64_t>(coeff_b.size());
    require(M >= 1 && K >= 1, "type_II_sum: requires M, K >= 1");
    double max_a = 0.0, max_b = 0.0;
    const auto a = checked_coeffs(coeff_a, M + 1, coeff_bound, "type_II_sum", max_a);
    const auto b = checked_coeffs(coeff_b, K + 1, coeff_bound, "type_II_sum", max_b);

    const double N = 2.0 * static_cast<double>(M) * static_cast<double>(K);
    const std::int64_t Q = config.resolve(N, params.pair);
    auto echo = harmonic_echo(params);
    echo.insert(echo.end(), {{"M", static_cast<double>(M)}, {"K", static_cast<double>(K)}, {"N", N},
                             {"R_star", params.r_star(N)}, {"Q", static_cast<double>(Q)}});
    auto r = finish(dense_bilinear(a, b, params), static_cast<std::uint64_t>(M * K), max_a * max_b,
                    std::move(echo));
    const double dK = static_cast<double>(K);
    if (dK >= std::pow(N, 0.25) && dK <= std::sqrt(N))
        attach_bound(r, std::pow(N, bilinear_exponent(params.pair) + config.epsilon));

    // Cauchy in m, then the shift inequality in k with parameter Q.
    CompensatedSum a_energy, shifted;
    std::vector<Complex> z(static_cast<std::size_t>(K));
    for (const auto& [m, am] : a) {
        a_energy.add(std::norm(am));
        for (std::int64_t i = 0; i < K; ++i) {
            const auto n = static_cast<std::uint64_t>(m * (K + 1 + i));
            z[static_cast<std::size_t>(i)] = coeff_b[static_cast<std::size_t>(i)] * e_phase(params.phase(n)).value();
        }
        shifted.add(weyl_shift_check(z, static_cast<double>(Q)).rhs);
    }
    r.weyl_bound = std::sqrt(std::max(0.0, a_energy.value() * shifted.value()));
    return r;
}

ExpSumReport gamma_star(std::uint64_t N, const HarmonicParams& params, const ArithmeticTables& tables) {
    require(N >= 2, "gamma_star: N must be >= 2");
    require(N <= tables.limit(), "gamma_star: N exceeds table limit");
    const auto lo = static_cast<std::int64_t>(N / 2) + 1;
    const auto parts = map_chunks(lo, static_cast<std::int64_t>(N) + 1, [&](std::int64_t a, std::int64_t b) {
        ComplexCompensatedSum s;
        for (std::int64_t n = a; n < b; ++n) {
            const auto w = tables.lambda_witness(static_cast<std::uint64_t>(n));
            if (!w) continue;
            const double l = std::log(static_cast<double>(w->p));
            const auto e = e_phase(params.phase(static_cast<std::uint64_t>(n)));
            s.add(l * e.re, l * e.im);
        }
        return s;
    });
    ComplexCompensatedSum total;
    for (const auto& s : parts) total.merge(s);
    const auto dN = static_cast<double>(N);
    auto echo = harmonic_echo(params);
    echo.insert(echo.end(), {{"N", dN}, {"R_star", params.r_star(dN)}});
    auto r = finish(total.value(), N - N / 2, std::log(dN), std::move(echo));
    attach_bound(r, std::pow(dN, bilinear_exponent(params.pair) + 7.0 * params.epsilon / 6.0));
    return r;
}

double hb_terms(std::uint64_t n, double z, int k) {
    require(n >= 1, "hb_terms: n must be >= 1");
    require(z >= 1.0 && k >= 1, "hb_terms: requires z >= 1 and k >= 1");
    require(static_cast<double>(n) <= 2.0 * std::pow(z, k) * (1.0 + 1e-12), "hb_terms: requires n <= 2 z^k");

    // divisors of n and their Moebius values
    std::vector<std::pair<std::uint64_t, int>> fac;
    {
        std::uint64_t r = n;
        for (std::uint64_t p = 2; p * p <= r; ++p) {
            int e = 0;
            while (r % p == 0) {
                r /= p;
                ++e;
            }
            if (e) fac.emplace_back(p, e);
        }
        if (r > 1) fac.emplace_back(r, 1);
    }
    std::vector<std::uint64_t> divs{1};
    std::vector<int> mus{1};
    for (const auto& [p, e] : fac) {
        const std::size_t base = divs.size();
        std::uint64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) {
                divs.push_back(divs[j] * pk);
                mus.push_back(i == 1 ? -mus[j] : 0);
            }
        }
    }
    std::vector<std::size_t> order(divs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return divs[x] < divs[y]; });
    std::vector<std::uint64_t> d(divs.size());
    std::vector<int> mu(divs.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        d[i] = divs[order[i]];
        mu[i] = mus[order[i]];
    }
    const std::size_t D = d.size();
    auto index_of = [&](std::uint64_t v) {
        return static_cast<std::size_t>(std::lower_bound(d.begin(), d.end(), v) - d.begin());
    };

    // g(r, u, v): signed count of r = (u unrestricted factors) * (v factors <= z weighted by mu)
    const auto slots = static_cast<std::size_t>(k) + 1;
    std::vector<std::int64_t> memo(D * slots * slots, 0);
    std::vector<char> known(memo.size(), 0);
    std::function<std::int64_t(std::size_t, int, int)> g = [&](std::size_t ri, int u, int v) -> std::int64_t {
        const std::size_t key = (ri * slots + static_cast<std::size_t>(u)) * slots + static_cast<std::size_t>(v);
        if (known[key]) return memo[key];
        const std::uint64_t r = d[ri];
        std::int64_t total = 0;
        if (u > 0) {
            for (std::size_t i = 0; i < D && d[i] <= r; ++i)
                if (r % d[i] == 0) total += g(index_of(r / d[i]), u - 1, v);
        } else if (v > 0) {
            for (std::size_t i = 0; i < D && d[i] <= r && static_cast<double>(d[i]) <= z; ++i)
                if (mu[i] != 0 && r % d[i] == 0) total += mu[i] * g(index_of(r / d[i]), 0, v - 1);
        } else {
            total = r == 1 ? 1 : 0;
        }
        known[key] = 1;
        memo[key] = total;
        return total;
    };

    // integer coefficient of log n1
    std::vector<std::int64_t> coeff(D, 0);
    std::int64_t binom = 1;
    for (int j = 1; j <= k; ++j) {
        binom = binom * (k - j + 1) / j;
        const std::int64_t sign = (j % 2 == 1) ? 1 : -1;
        for (std::size_t i = 0; i < D; ++i) coeff[i] += sign * binom * g(index_of(n / d[i]), j - 1, j);
    }
    CompensatedSum s;
    for (std::size_t i = 0; i < D; ++i)
        if (coeff[i] != 0 && d[i] > 1) s.add(static_cast<double>(coeff[i]) * std::log(static_cast<double>(d[i])));
    return s.value();
}

CaseSplit case_split(double N, std::span<const double, 6> factors) {
    require(N >= 2.0 && std::isfinite(N), "case_split: N must be >= 2");
    double prod = 1.0;
    for (const double f : factors) {
        require(std::isfinite(f) && f >= 1.0, "case_split: factor scales must be >= 1");
        prod *= f;
    }
    constexpr double slack = 1.0 + 1e-12;
    require(prod <= N * slack && prod > N / 128.0, "case_split: requires N/128 < N_1...N_6 <= N");
    const double mu_cap = std::cbrt(2.0 * N) * slack;
    for (int i = 3; i < 6; ++i)
        require(factors[static_cast<std::size_t>(i)] <= mu_cap, "case_split: Moebius factor scale exceeds (2N)^(1/3)");

    const double q1 = std::pow(N, 0.25);
    const double q2 = std::sqrt(N);
    const double q3 = std::pow(N, 0.75);
    auto single = [&](int label, int j, bool j_on_k_side) {
        CaseSplit cs;
        cs.label = label;
        for (int i = 0; i < 6; ++i) {
            const bool k_side = (i == j) == j_on_k_side;
            (k_side ? cs.k_side : cs.m_side).push_back(i);
        }
        return cs;
    };
    for (int j = 0; j < 6; ++j)
        if (factors[static_cast<std::size_t>(j)] >= q3) return single(1, j, true);
    for (int j = 0; j < 6; ++j) {
        const double f = factors[static_cast<std::size_t>(j)];
        if (f >= q1 && f <= q2) return single(2, j, true);
    }
    for (int j = 0; j < 6; ++j) {
        const double f = factors[static_cast<std::size_t>(j)];
        if (f >= q2 && f <= q3) return single(3, j, false);
    }

    std::array<int, 6> order{0, 1, 2, 3, 4, 5};
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return factors[static_cast<std::size_t>(x)] > factors[static_cast<std::size_t>(y)];
    });
    CaseSplit cs;
    cs.label = 4;
    double acc = 1.0;
    int ell = 0;
    while (ell < 6 && acc < q1) acc *= factors[static_cast<std::size_t>(order[static_cast<std::size_t>(ell++)])];
    cs.ell = ell;
    for (int i = 0; i < 6; ++i) {
        const bool k_side = std::find(order.begin(), order.begin() + ell, i) != order.begin() + ell;
        (k_side ? cs.k_side : cs.m_side).push_back(i);
    }
    return cs;
}

namespace {

struct Box {
    std::int64_t lo = 1;
    std::int64_t hi = 1;
};

std::vector<Box> dyadic_boxes(std::int64_t cap) {
    std::vector<Box> out;
    for (std::int64_t e = 1; e <= cap; e *= 2) out.push_back({e, std::min(2 * e - 1, cap)});
    return out;
}

// Enumerates the products of the given variables inside their boxes, each
// weighted by log n (index 0), mu(n) (indices 3..5) or 1, keeping products <= cap.
std::vector<Coeff> side_coefficients(const std::vector<int>& vars, const std::array<Box, 6>& boxes,
                                     std::int64_t cap, const ArithmeticTables& tables) {
    std::vector<Coeff> raw;
    std::function<void(std::size_t, std::int64_t, double)> walk = [&](std::size_t i, std::int64_t prod, double w) {
        if (i == vars.size()) {
            raw.push_back({prod, Complex(w, 0.0)});
            return;
        }
        const int var = vars[i];
        const Box& box = boxes[static_cast<std::size_t>(var)];
        for (std::int64_t v = box.lo; v <= box.hi && prod * v <= cap; ++v) {
            double wv = 1.0;
            if (var == 0) {
                if (v == 1) continue;
                wv = std::log(static_cast<double>(v));
            } else if (var >= 3) {
                const int m = tables.mu(static_cast<std::uint64_t>(v));
                if (m == 0) continue;
                wv = static_cast<double>(m);
            }
            walk(i + 1, prod * v, w * wv);
        }
    };
    walk(0, 1, 1.0);
    std::sort(raw.begin(), raw.end(), [](const Coeff& x, const Coeff& y) { return x.index < y.index; });
    std::vector<Coeff> merged;
    for (const auto& c : raw) {
        if (!merged.empty() && merged.back().index == c.index)
            merged.back().weight += c.weight;
        else
            merged.push_back(c);
    }
    return merged;
}

}  // namespace

DecomposedGammaStar gamma_star_decomposed(std::uint64_t N, const HarmonicParams& params,
                                          const ArithmeticTables& tables, double z) {
    require(N >= 2, "gamma_star_decomposed: N must be >= 2");
    require(N <= tables.limit(), "gamma_star_decomposed: N exceeds table limit");
    const auto dN = static_cast<double>(N);
    require(z >= 1.0 && dN <= 2.0 * z * z * z * (1.0 + 1e-12), "gamma_star_decomposed: requires N <= 2 z^3");
    require(z <= std::cbrt(2.0 * dN) * (1.0 + 1e-12), "gamma_star_decomposed: requires z <= (2N)^(1/3)");

    const auto n_hi = static_cast<std::int64_t>(N);
    const std::int64_t n_lo = n_hi / 2;
    std::vector<Complex> phase(static_cast<std::size_t>(n_hi - n_lo));
    for (std::int64_t n = n_lo + 1; n <= n_hi; ++n)
        phase[static_cast<std::size_t>(n - n_lo - 1)] = e_phase(params.phase(static_cast<std::uint64_t>(n))).value();
    auto phase_at = [&](std::int64_t n) { return phase[static_cast<std::size_t>(n - n_lo - 1)]; };

    const auto z_int = static_cast<std::int64_t>(std::floor(z));
    const auto smooth = dyadic_boxes(n_hi);
    const auto moebius = dyadic_boxes(z_int);
    const std::vector<Box> unit{{1, 1}};

    DecomposedGammaStar out;
    ComplexCompensatedSum total;
    for (int j = 1; j <= 3; ++j) {
        const double coeff = (j % 2 == 1 ? 1.0 : -1.0) * (j == 2 ? 3.0 : (j == 1 ? 3.0 : 1.0));
        std::array<const std::vector<Box>*, 6> choices{};
        for (int i = 0; i < 3; ++i) {
            choices[static_cast<std::size_t>(i)] = i < j ? &smooth : &unit;
            choices[static_cast<std::size_t>(i + 3)] = i < j ? &moebius : &unit;
        }
        std::array<Box, 6> boxes{};
        std::function<void(int, std::int64_t, std::int64_t)> pick = [&](int i, std::int64_t lo_prod,
                                                                         std::int64_t hi_prod) {
            if (i == 6) {
                if (hi_prod <= n_lo) return;
                std::array<double, 6> scales{};
                for (std::size_t v = 0; v < 6; ++v) scales[v] = static_cast<double>(boxes[v].lo);
                const auto cs = case_split(dN, scales);
                std::int64_t m_floor = 1, k_floor = 1;
                for (int v : cs.m_side) m_floor *= boxes[static_cast<std::size_t>(v)].lo;
                for (int v : cs.k_side) k_floor *= boxes[static_cast<std::size_t>(v)].lo;
                const auto a = side_coefficients(cs.m_side, boxes, n_hi / k_floor, tables);
                const auto b = side_coefficients(cs.k_side, boxes, n_hi / m_floor, tables);
                total.add(coeff * bilinear_kernel(std::span<const Coeff>(a), std::span<const Coeff>(b), n_lo,
                                                  n_hi, phase_at));
                ++out.case_counts[static_cast<std::size_t>(cs.label - 1)];
                ++out.boxes;
                return;
            }
            for (const Box& box : *choices[static_cast<std::size_t>(i)]) {
                if (lo_prod * box.lo > n_hi) break;
                boxes[static_cast<std::size_t>(i)] = box;
                pick(i + 1, lo_prod * box.lo, std::min<std::int64_t>(hi_prod * box.hi, n_hi + 1));
            }
        };
        pick(0, 1, 1);
    }
    out.value = total.value();
    return out;
}

DecomposedGammaStar gamma_star_decomposed(std::uint64_t N, const HarmonicParams& params,
                                          const ArithmeticTables& tables) {
    return gamma_star_decomposed(N, params, tables, std::cbrt(static_cast<double>(N) / 2.0));
}

WeylCheck weyl_shift_check(std::span<const Complex> z, double Q) {
    require(!z.empty(), "weyl_shift_check: sequence must be nonempty");
    require(Q >= 1.0 && std::isfinite(Q), "weyl_shift_check: Q must be >= 1");
    const auto L = static_cast<std::int64_t>(z.size());
    ComplexCompensatedSum sum;
    for (const auto& v : z) sum.add(v);
    WeylCheck out;
    out.lhs = std::norm(sum.value());

    const auto q_max = static_cast<std::int64_t>(std::floor(Q));
    CompensatedSum rhs;
    for (std::int64_t q = -q_max; q <= q_max; ++q) {
        const double w = 1.0 - static_cast<double>(q < 0 ? -q : q) / Q;
        if (w == 0.0) continue;
        // pairs (i, j) = (l + q, l - q) inside the window, i - j = 2q
        CompensatedSum inner;
        for (std::int64_t i = std::max<std::int64_t>(0, 2 * q); i < std::min(L, L + 2 * q); ++i) {
            const auto& a = z[static_cast<std::size_t>(i)];
            const auto& b = z[static_cast<std::size_t>(i - 2 * q)];
            inner.add(a.real() * b.real() + a.imag() * b.imag());
        }
        rhs.add(w * inner.value());
    }
    out.rhs = (2.0 + static_cast<double>(L) / Q) * rhs.value();
    out.holds = out.lhs <= out.rhs * (1.0 + 1e-9);
    return out;
}

}  // namespace psmod1
