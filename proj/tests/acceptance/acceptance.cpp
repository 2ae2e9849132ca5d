// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "oracle.hpp"
#include "psmod1/diophantine.hpp"
#include "psmod1/experiments.hpp"
#include "psmod1/expsum.hpp"
#include "psmod1/parallel.hpp"
#include "psmod1/psset.hpp"
#include "psmod1/sieve.hpp"
#include "psmod1/verify.hpp"

using namespace psmod1;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const ArithmeticTables& tables() {
    static const ArithmeticTables t = sieve_range(10'000'000);
    return t;
}

Outcome hb_identity() {
    double worst = 0.0;
    std::uint64_t checked = 0;
    for (double z : {5.0, 10.0, 20.0})
        for (int k : {1, 2, 3}) {
            const auto r = verify_hb(z, k, tables());
            worst = std::max(worst, r.max_error);
            checked += r.checked;
        }
    return {worst < 1e-9, fmt("n checked=%llu max|err|=%.3g", static_cast<unsigned long long>(checked), worst)};
}

HarmonicParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> h(-6, 6);
    const double g1 = 0.96 + 0.039 * u(rng);
    const double lo = 23.0 / 12.0 - g1 + 1e-3;
    const double g2 = lo + (g1 - lo - 1e-3) * u(rng);
    HarmonicParams p(GammaPair(g1, g2));
    p.alpha = 10.0 * u(rng);
    p.t = h(rng);
    p.h1 = h(rng);
    p.h2 = h(rng);
    return p;
}

Outcome decomposition() {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (std::uint64_t N : {1000u, 10'000u})
        for (int i = 0; i < 10; ++i) {
            const auto p = random_params(rng);
            const auto d = gamma_star_decomposed(N, p, tables());
            const auto g = gamma_star(N, p, tables());
            worst = std::max(worst, std::abs(d.value - g.value) / std::max(1.0, g.modulus));
        }
    return {worst < 1e-6, fmt("20 draws, max relative error=%.3g", worst)};
}

Outcome weyl() {
    const auto r = verify_weyl(1000, 99);
    return {r.failures == 0 && r.trials == 1000,
            fmt("trials=%llu failures=%llu max lhs/rhs=%.4f", static_cast<unsigned long long>(r.trials),
                static_cast<unsigned long long>(r.failures), r.max_ratio)};
}

Outcome psi_envelope() {
    double worst = 0.0;
    for (double H : {10.0, 100.0, 1000.0}) worst = std::max(worst, psi_envelope_constant(H, 10'000));
    return {worst <= 2.0, fmt("measured constant=%.4f (limit 2)", worst)};
}

Outcome window_envelope() {
    double worst = 0.0;
    for (double delta : {0.01, 0.1, 0.25})
        for (std::int64_t T : {10, 100}) {
            WindowParams w;
            w.delta = delta;
            w.T = T;
            worst = std::max(worst, window_envelope_constant(w, 10'000));
        }
    return {worst <= 10.0, fmt("measured C_W=%.4f (limit 10)", worst)};
}

Outcome membership() {
    std::uint64_t disagreements = 0;
    const std::pair<std::int64_t, std::int64_t> gammas[] = {{3, 5}, {3, 4}, {9, 10}, {19, 20}, {99, 100}};
    for (const auto& [u, v] : gammas) {
        const auto ref = oracle::ps_members(100'000, u, v);
        const auto g = Exponent::rational(u, v);
        for (std::uint64_t p = 1; p <= 100'000; ++p)
            if (is_member(p, g) != ref[p]) ++disagreements;
    }
    return {disagreements == 0, fmt("5 x 1e5 checks, disagreements=%llu", static_cast<unsigned long long>(disagreements))};
}

Outcome counting() {
    const double xs[] = {1e5, 1e6, 1e7};
    const auto rows = counting_report(xs, GammaPair(0.99, 0.95), tables());
    const double r7 = rows[2].ratio;
    return {r7 >= 0.5 && r7 <= 1.5, fmt("ratios 1e5=%.4f 1e6=%.4f 1e7=%.4f", rows[0].ratio, rows[1].ratio, r7)};
}

Outcome witnesses() {
    const auto r = theorem_witness_count(std::sqrt(2.0), 0.0, GammaPair(0.99, 0.97), 0.01, 1'000'000, tables());
    const double frac = r.total_intersection_primes ? static_cast<double>(r.witness_count) /
                                                          static_cast<double>(r.total_intersection_primes)
                                                    : 0.0;
    return {r.witness_count > 0 && frac > 0.5,
            fmt("witnesses=%llu of %llu (%.4f)", static_cast<unsigned long long>(r.witness_count),
                static_cast<unsigned long long>(r.total_intersection_primes), frac)};
}

Outcome minima() {
    const auto r = record_minima_scan(std::sqrt(2.0), 0.0, GammaPair(0.99, 0.97), 10'000'000, tables());
    const double last = r.empty() ? 1.0 : r.back().value;
    return {last < 1e-4, fmt("records=%zu final minimum=%.3g at p=%llu", r.size(), last,
                             static_cast<unsigned long long>(r.empty() ? 0 : r.back().p))};
}

Outcome karatsuba() {
    const auto conv = convergents(IrrationalTarget::parse("sqrt2"), 100);
    double worst = 0.0;
    bool certified = true;
    for (std::int64_t q : {2, 5, 12, 29, 70}) {
        bool found = false;
        for (const auto& c : conv.items) found = found || c.q == q;
        certified = certified && found;
        for (double U : {10.0, 1000.0}) {
            const double s = min_linear_sum(10 * q, U, std::sqrt(2.0), 0.0);
            worst = std::max(worst, s / karatsuba_bound(10.0 * static_cast<double>(q), U, q));
        }
    }
    return {certified && worst <= 100.0, fmt("best constant C=%.4f (limit 100)", worst)};
}

Outcome upsilon() {
    double worst = 0.0;
    for (const auto& [delta, alpha, beta] : {std::tuple{0.1, std::sqrt(2.0), 0.0},
                                             std::tuple{0.25, (1 + std::sqrt(5.0)) / 2, 0.3},
                                             std::tuple{0.01, std::numbers::pi, -0.2}}) {
        WindowParams w;
        w.delta = delta;
        w.T = 10;
        worst = std::max(worst, upsilon_eval(10'000, w, alpha, beta, GammaPair(0.99, 0.95), tables()).identity_error());
    }
    return {worst <= 1e-8, fmt("3 settings, max relative mismatch=%.3g", worst)};
}

Outcome determinism() {
    const auto cache = std::filesystem::temp_directory_path() / "psmod1_acceptance_cache.bin";
    save_cache(tables(), cache);
    const std::vector<std::vector<std::string>> runs = {
        {"expsum", "gamma-star-decomposed", "--N", "1e4", "--alpha", "sqrt2", "--t", "1", "--h1", "2", "--h2", "-3"},
        {"expsum", "gamma-star-decomposed", "--N", "1e3", "--alpha", "pi", "--t", "2", "--h1", "-1", "--h2", "4"},
        {"count", "--gamma1", "0.99", "--gamma2", "0.95", "--x-list", "1e5,1e6,1e7"},
        {"minima", "--alpha", "sqrt2", "--beta", "0", "--gamma1", "0.99", "--gamma2", "0.97", "--limit", "1e7"},
    };
    int identical = 0;
    for (auto args : runs) {
        args.insert(args.end(), {"--cache", cache.string()});
        std::string outputs[2];
        int codes[2];
        for (int i = 0; i < 2; ++i) {
            auto a = args;
            a.insert(a.end(), {"--threads", i == 0 ? "1" : "4"});
            std::ostringstream out, err;
            codes[i] = cli::run(a, out, err);
            outputs[i] = out.str();
        }
        if (codes[0] == 0 && codes[1] == 0 && !outputs[0].empty() && outputs[0] == outputs[1]) ++identical;
    }
    std::filesystem::remove(cache);
    set_worker_count(0);
    return {identical == static_cast<int>(runs.size()),
            fmt("%d of %zu reports byte-identical across workers {1, 4}", identical, runs.size())};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"Heath-Brown identity exactness", hb_identity},
        {"decomposition consistency", decomposition},
        {"Weyl shift inequality", weyl},
        {"psi truncation envelope", psi_envelope},
        {"window expansion envelope", window_envelope},
        {"membership oracle equivalence", membership},
        {"counting trend", counting},
        {"theorem witnesses", witnesses},
        {"record minima", minima},
        {"Karatsuba min-sum", karatsuba},
        {"Upsilon split identity", upsilon},
        {"determinism", determinism},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, fn] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %2d %s: %s  [%s; %.1fs]\n", index, o.pass ? "PASS" : "FAIL", name, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
