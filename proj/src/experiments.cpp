#include "psmod1/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "psmod1/error.hpp"
#include "psmod1/parallel.hpp"
#include "psmod1/summation.hpp"

namespace psmod1 {

namespace {

double window_weight(std::uint64_t p, double alpha, double beta, double delta) {
    const double theta = phase_mul(static_cast<std::int64_t>(p), alpha) + beta;
    return static_cast<double>(window_F(theta, delta)) - 2.0 * delta;
}

// frac(-x) given floor and frac of x
double frac_neg(const FloorFrac& f) { return f.frac > 0.0 ? 1.0 - f.frac : 0.0; }

struct Split {
    double d;  // (p+1)^gamma - p^gamma
    double s;  // psi(-(p+1)^gamma) - psi(-p^gamma)
};

Split split_factor(std::uint64_t p, const Exponent& gamma, const PrecisionPolicy& policy) {
    const auto dp = static_cast<double>(p);
    const double g = gamma.value();
    const double d = std::pow(dp, g) * std::expm1(g * std::log1p(1.0 / dp));
    const auto x0 = pow_floor_frac(p, gamma, policy);
    const auto x1 = pow_floor_frac(p + 1, gamma, policy);
    return {d, frac_neg(x1) - frac_neg(x0)};
}

double nearest(std::uint64_t p, double alpha, double beta) {
    return dist_nearest(phase_mul(static_cast<std::int64_t>(p), alpha) + beta);
}

}  // namespace

double UpsilonReport::parts_sum() const {
    CompensatedSum s;
    for (const double v : parts) s.add(v);
    return s.value();
}

double UpsilonReport::identity_error() const {
    return std::fabs(total - parts_sum()) / std::max(1.0, std::fabs(total));
}

UpsilonReport upsilon_eval(std::uint64_t N, const WindowParams& window, double alpha, double beta,
                           const GammaPair& pair, const ArithmeticTables& tables, const PrecisionPolicy& policy) {
    window.validate();
    require(N <= tables.limit(), "upsilon_eval: N exceeds table limit");
    require(std::isfinite(alpha) && std::isfinite(beta), "upsilon_eval: alpha and beta must be finite");

    struct Partial {
        CompensatedSum direct;
        std::array<CompensatedSum, 4> parts;
    };
    const auto chunks = map_chunks(0, static_cast<std::int64_t>(N), [&](std::int64_t lo, std::int64_t hi) {
        Partial acc;
        tables.for_each_prime(static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi), [&](std::uint64_t p) {
            const double w = window_weight(p, alpha, beta, window.delta) * std::log(static_cast<double>(p));
            if (member_indicator(p, pair.gamma1(), policy) == 1 && member_indicator(p, pair.gamma2(), policy) == 1)
                acc.direct.add(w);
            const auto f1 = split_factor(p, pair.gamma1(), policy);
            const auto f2 = split_factor(p, pair.gamma2(), policy);
            acc.parts[0].add(f1.d * f2.d * w);
            acc.parts[1].add(f1.d * f2.s * w);
            acc.parts[2].add(f2.d * f1.s * w);
            acc.parts[3].add(f1.s * f2.s * w);
        });
        return acc;
    });
    Partial total;
    for (const auto& c : chunks) {
        total.direct.merge(c.direct);
        for (std::size_t i = 0; i < 4; ++i) total.parts[i].merge(c.parts[i]);
    }
    UpsilonReport r;
    r.total = total.direct.value();
    for (std::size_t i = 0; i < 4; ++i) r.parts[i] = total.parts[i].value();
    r.delta = window.delta;
    r.T = window.T;
    r.N = N;
    return r;
}

std::vector<MinimaRecord> record_minima_scan(double alpha, double beta, const GammaPair& pair, std::uint64_t limit,
                                             const ArithmeticTables& tables, const PrecisionPolicy& policy) {
    require(limit <= tables.limit(), "record_minima_scan: limit exceeds table limit");
    require(std::isfinite(alpha) && std::isfinite(beta), "record_minima_scan: alpha and beta must be finite");
    const auto primes = enumerate_intersection(0, limit, pair, tables, policy);
    std::vector<MinimaRecord> out;
    double best = 1.0;
    for (const auto& rec : primes) {
        const double v = nearest(rec.p, alpha, beta);
        if (v < best) {
            best = v;
            out.push_back({rec.p, v, static_cast<std::uint64_t>(out.size()) + 1});
        }
    }
    return out;
}

TheoremReport theorem_witness_count(double alpha, double beta, const GammaPair& pair, double epsilon,
                                    std::uint64_t limit, const ArithmeticTables& tables,
                                    const PrecisionPolicy& policy) {
    require(pair.mode() == GammaMode::theorem || pair.is_single_set_preset(),
            "theorem_witness_count: requires a theorem-mode pair or the gamma1 = 1 preset");
    require(epsilon >= 0.0 && std::isfinite(epsilon), "theorem_witness_count: epsilon must be >= 0");
    require(limit <= tables.limit(), "theorem_witness_count: limit exceeds table limit");
    TheoremReport r;
    r.theta = pair.theta();
    r.epsilon = epsilon;
    r.limit = limit;
    const double expo = -r.theta + epsilon;
    for (auto& rec : enumerate_intersection(0, limit, pair, tables, policy)) {
        ++r.total_intersection_primes;
        const double v = nearest(rec.p, alpha, beta);
        if (v < std::pow(static_cast<double>(rec.p), expo)) {
            ++r.witness_count;
            if (r.sample_witnesses.size() < kSampleWitnesses) {
                rec.frac_value = v;
                r.sample_witnesses.push_back(rec);
            }
        }
    }
    return r;
}

std::vector<CountingRow> counting_report(std::span<const double> xs, const GammaPair& pair,
                                         const ArithmeticTables& tables, const PrecisionPolicy& policy) {
    std::vector<CountingRow> rows;
    for (const double x : xs) {
        require(std::isfinite(x) && x > 1.0, "counting_report: x must exceed 1");
        CountingRow row;
        row.x = x;
        row.count = count_joint(x, pair, tables, policy);
        row.main_term = main_term(x, pair);
        row.ratio = row.count == 0 ? 0.0 : static_cast<double>(row.count) / row.main_term;
        rows.push_back(row);
    }
    return rows;
}

double discrepancy_estimate(std::vector<double> values) {
    require(!values.empty(), "discrepancy_estimate: empty sample");
    for (const double v : values) require(v >= 0.0 && v < 1.0, "discrepancy_estimate: values must lie in [0, 1)");
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        d = std::max({d, std::fabs(static_cast<double>(i + 1) / n - v), std::fabs(v - static_cast<double>(i) / n)});
    }
    return d;
}

}  // namespace psmod1
