#include <doctest.h>

#include <cmath>
#include <numbers>

#include "frozen.hpp"
#include "oracle.hpp"
#include "psmod1/error.hpp"
#include "psmod1/parallel.hpp"
#include "psmod1/psset.hpp"

using namespace psmod1;

namespace {

const ArithmeticTables& tables_1e6() {
    static const ArithmeticTables t = sieve_range(1'000'000);
    return t;
}

}  // namespace

TEST_CASE("GammaPair modes") {
    CHECK_NOTHROW(GammaPair(0.99, 0.95));
    CHECK_THROWS_AS(GammaPair(0.95, 0.99), ContractError);
    CHECK_THROWS_AS(GammaPair(0.9, 0.75), ContractError);  // sum below 23/12
    CHECK_THROWS_AS(GammaPair(1.0, 0.95), ContractError);
    const GammaPair loose(0.9, 0.75, GammaMode::exploratory);
    CHECK(!loose.warnings().empty());
    CHECK_THROWS_AS(GammaPair(1.2, 0.75, GammaMode::exploratory), ContractError);
    const auto preset = GammaPair::single_set_preset(0.95);
    CHECK(preset.is_single_set_preset());
    // the degenerate exponent (12 gamma2 - 11)/38
    CHECK(preset.theta() == doctest::Approx((12 * 0.95 - 11) / 38.0).epsilon(1e-14));
    const GammaPair p(0.99, 0.97);
    CHECK(p.theta() > 0.0);
    CHECK(p.theta() < 1.0 / 38.0);
}

TEST_CASE("is_member examples") {
    CHECK(is_member(2, 0.75));
    CHECK(!is_member(7, 0.75));
    CHECK(is_member(5, 1.0));
    CHECK_THROWS_AS(is_member(0, 0.75), ContractError);
}

TEST_CASE("witness examples") {
    CHECK(witness(2, 0.75) == 2u);
    CHECK(witness(13, 0.75) == 7u);
    CHECK(!witness(7, 0.75).has_value());
}

TEST_CASE("witness reproduces p under extended precision") {
    const Exponent g = Exponent::parse("0.9");
    for (std::uint64_t p = 2; p < 5000; ++p) {
        const auto n = witness(p, g);
        if (!n) continue;
        const auto back = oracle::pow_floor_frac(*n, 10, 9);
        REQUIRE(static_cast<std::uint64_t>(back.floor) == p);
    }
}

TEST_CASE("membership matches enumeration for p <= 1e5") {
    const std::pair<std::int64_t, std::int64_t> gammas[] = {{3, 5}, {3, 4}, {9, 10}, {19, 20}, {99, 100}};
    for (const auto& [u, v] : gammas) {
        const auto ref = oracle::ps_members(100'000, u, v);
        const auto g = Exponent::rational(u, v);
        for (std::uint64_t p = 1; p <= 100'000; ++p) REQUIRE(is_member(p, g) == ref[p]);
    }
}

TEST_CASE("enumerate_intersection examples") {
    const auto& t = tables_1e6();
    const GammaPair a(0.9, 0.75, GammaMode::exploratory);
    const auto r = enumerate_intersection(1, 20, a, t);
    for (const auto& rec : r) CHECK((rec.p == 2 || rec.p == 13));
    CHECK(enumerate_intersection(5, 5, a, t).empty());
    const auto preset = GammaPair::single_set_preset(0.75);
    const auto s = enumerate_intersection(1, 20, preset, t);
    REQUIRE(s.size() == 2);
    CHECK(s[0].p == 2);
    CHECK(s[1].p == 13);
    CHECK(s[1].n2 == 7u);
    CHECK(s[1].n1 == 13u);
    CHECK_THROWS_AS(enumerate_intersection(1, 2'000'000, a, t), ContractError);
}

TEST_CASE("count_joint examples") {
    const auto& t = tables_1e6();
    CHECK(count_joint(20, GammaPair::single_set_preset(0.75), t) == 2);
    CHECK(count_joint(1, GammaPair(0.99, 0.95), t) == 0);
    CHECK(count_joint(1e6, GammaPair(0.99, 0.95), t) == frozen::kJoint1e6);
    CHECK(count_single(1e6, 0.95, t) == frozen::kSingle95At1e6);
}

TEST_CASE("count_joint bounded by single counts and pi(x)") {
    const auto& t = tables_1e6();
    const GammaPair p(0.99, 0.95);
    for (double x : {10.0, 100.0, 1000.0, 12345.0, 1e5}) {
        const auto j = count_joint(x, p, t);
        const auto a = count_single(x, p.gamma1(), t);
        const auto b = count_single(x, p.gamma2(), t);
        CHECK(j <= std::min(a, b));
        CHECK(std::min(a, b) <= t.prime_count(static_cast<std::uint64_t>(x)));
    }
}

TEST_CASE("enumeration is independent of worker count") {
    const auto& t = tables_1e6();
    const GammaPair p(0.99, 0.95);
    set_worker_count(1);
    const auto a = enumerate_intersection(0, 1'000'000, p, t);
    set_worker_count(4);
    const auto b = enumerate_intersection(0, 1'000'000, p, t);
    set_worker_count(0);
    CHECK(a == b);
    CHECK(a.size() == frozen::kJoint1e6);
}

TEST_CASE("main_term examples") {
    const double e = std::numbers::e;
    CHECK(main_term(e, GammaPair(0.6, 0.5, GammaMode::exploratory)) ==
          doctest::Approx(3.0 * std::exp(0.1)).epsilon(1e-12));
    CHECK(main_term(e, GammaPair(1.0, 1.0, GammaMode::exploratory)) == doctest::Approx(e).epsilon(1e-14));
    CHECK(main_term(1e6, GammaPair(0.99, 0.95)) == doctest::Approx(frozen::kMainTerm1e6).epsilon(1e-12));
    CHECK_THROWS_AS(main_term(1.0, GammaPair(0.99, 0.95)), ContractError);
}

TEST_CASE("single_main_term examples") {
    CHECK(single_main_term(std::numbers::e, 0.9) == doctest::Approx(std::exp(0.9)).epsilon(1e-14));
    CHECK(single_main_term(100, 1.0) == doctest::Approx(100 / std::log(100.0)).epsilon(1e-14));
    CHECK(single_main_term(1e6, 0.95) == doctest::Approx(frozen::kSingleMainTerm1e6).epsilon(1e-12));
}
