#include "psmod1/psset.hpp"

#include <cmath>

#include "psmod1/error.hpp"
#include "psmod1/parallel.hpp"

namespace psmod1 {

namespace {

// floor(-x) from floor(x) and frac(x)
std::int64_t floor_neg(const FloorFrac& f) { return -f.floor - (f.frac > 0.0 ? 1 : 0); }

std::uint64_t upper_index(double x, const ArithmeticTables& tables) {
    require(std::isfinite(x), "x must be finite");
    if (x < 1.0) return 0;
    const auto hi = static_cast<std::uint64_t>(std::floor(x));
    require(hi <= tables.limit(), "range exceeds table limit " + std::to_string(tables.limit()));
    return hi;
}

}  // namespace

GammaPair::GammaPair(Exponent gamma1, Exponent gamma2, GammaMode mode)
    : gamma1_(gamma1), gamma2_(gamma2), mode_(mode) {
    const double g1 = gamma1_.value();
    const double g2 = gamma2_.value();
    const bool ordered = 0.5 < g2 && g2 < g1 && g1 < 1.0;
    const bool summed = 23.0 / 12.0 < g1 + g2 && g1 + g2 < 2.0;
    if (mode_ == GammaMode::theorem) {
        require(ordered, "GammaPair: theorem mode requires 1/2 < gamma2 < gamma1 < 1");
        require(summed, "GammaPair: theorem mode requires 23/12 < gamma1 + gamma2 < 2");
        return;
    }
    require(g2 > 0.0 && g2 <= g1 && g1 <= 1.0, "GammaPair: requires 0 < gamma2 <= gamma1 <= 1");
    if (!ordered) warnings_.emplace_back("gamma outside 1/2 < gamma2 < gamma1 < 1");
    if (!summed) warnings_.emplace_back("gamma1 + gamma2 outside (23/12, 2)");
}

GammaPair GammaPair::single_set_preset(Exponent gamma2) {
    return GammaPair(Exponent::rational(1, 1), gamma2, GammaMode::exploratory);
}

int member_indicator(std::uint64_t p, const Exponent& gamma, const PrecisionPolicy& policy) {
    require(p >= 1, "is_member: p must be >= 1");
    const auto a = pow_floor_frac(p, gamma, policy);
    const auto b = pow_floor_frac(p + 1, gamma, policy);
    return static_cast<int>(floor_neg(a) - floor_neg(b));
}

bool is_member(std::uint64_t p, const Exponent& gamma, const PrecisionPolicy& policy) {
    return member_indicator(p, gamma, policy) == 1;
}

std::optional<std::uint64_t> witness(std::uint64_t p, const Exponent& gamma, const PrecisionPolicy& policy) {
    if (!is_member(p, gamma, policy)) return std::nullopt;
    const auto f = pow_floor_frac(p, gamma, policy);
    return static_cast<std::uint64_t>(f.floor + (f.frac > 0.0 ? 1 : 0));
}

std::vector<PrimeRecord> enumerate_intersection(std::uint64_t lo, std::uint64_t hi, const GammaPair& pair,
                                                const ArithmeticTables& tables,
                                                const PrecisionPolicy& policy) {
    require(hi <= tables.limit(), "enumerate_intersection: hi exceeds table limit");
    if (hi <= lo) return {};
    auto chunks = map_chunks(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi),
                             [&](std::int64_t a, std::int64_t b) {
                                 std::vector<PrimeRecord> out;
                                 tables.for_each_prime(static_cast<std::uint64_t>(a),
                                                       static_cast<std::uint64_t>(b), [&](std::uint64_t p) {
                                                           auto n2 = witness(p, pair.gamma2(), policy);
                                                           if (!n2) return;
                                                           auto n1 = witness(p, pair.gamma1(), policy);
                                                           if (!n1) return;
                                                           out.push_back({p, n1, n2, std::nullopt});
                                                       });
                                 return out;
                             });
    std::vector<PrimeRecord> all;
    for (auto& c : chunks) all.insert(all.end(), c.begin(), c.end());
    return all;
}

std::uint64_t count_joint(double x, const GammaPair& pair, const ArithmeticTables& tables,
                          const PrecisionPolicy& policy) {
    const auto hi = upper_index(x, tables);
    if (hi < 2) return 0;
    const auto counts = map_chunks(1, static_cast<std::int64_t>(hi), [&](std::int64_t a, std::int64_t b) {
        std::uint64_t c = 0;
        tables.for_each_prime(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b),
                              [&](std::uint64_t p) {
                                  if (is_member(p, pair.gamma2(), policy) && is_member(p, pair.gamma1(), policy))
                                      ++c;
                              });
        return c;
    });
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

std::uint64_t count_single(double x, const Exponent& gamma, const ArithmeticTables& tables,
                           const PrecisionPolicy& policy) {
    const auto hi = upper_index(x, tables);
    if (hi < 2) return 0;
    const auto counts = map_chunks(1, static_cast<std::int64_t>(hi), [&](std::int64_t a, std::int64_t b) {
        std::uint64_t c = 0;
        tables.for_each_prime(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b),
                              [&](std::uint64_t p) { c += is_member(p, gamma, policy) ? 1 : 0; });
        return c;
    });
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

double main_term(double x, const GammaPair& pair) {
    require(x > 1.0, "main_term: x must exceed 1");
    const double s = pair.sum() - 1.0;
    require(s > 0.0, "main_term: gamma1 + gamma2 must exceed 1");
    return pair.gamma1().value() * pair.gamma2().value() / s * std::pow(x, s) / std::log(x);
}

double single_main_term(double x, const Exponent& gamma) {
    require(x > 1.0, "single_main_term: x must exceed 1");
    return std::pow(x, gamma.value()) / std::log(x);
}

}  // namespace psmod1
