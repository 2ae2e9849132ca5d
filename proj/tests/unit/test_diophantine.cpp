#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "frozen.hpp"
#include "oracle.hpp"
#include "psmod1/diophantine.hpp"
#include "psmod1/error.hpp"
#include "psmod1/parallel.hpp"

using namespace psmod1;

namespace {

bool has(const ConvergentTable& t, std::int64_t a, std::int64_t q) {
    for (const auto& c : t.items)
        if (c.a == a && c.q == q) return true;
    return false;
}

// |theta - b/r| computed exactly enough for the contract check
double gap(double theta, std::int64_t b, std::int64_t r) {
    oracle::Real x(256), y(256);
    mpfr_set_d(x.get(), theta, MPFR_RNDN);
    mpfr_set_si(y.get(), b, MPFR_RNDN);
    mpfr_div_si(y.get(), y.get(), r, MPFR_RNDN);
    mpfr_sub(x.get(), x.get(), y.get(), MPFR_RNDN);
    return std::fabs(x.to_double());
}

}  // namespace

TEST_CASE("convergents examples") {
    const auto s = convergents(IrrationalTarget::parse("sqrt2"), 30);
    REQUIRE(s.items.size() == 5);
    const std::int64_t a[] = {1, 3, 7, 17, 41}, q[] = {1, 2, 5, 12, 29};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(s.items[i].a == a[i]);
        CHECK(s.items[i].q == q[i]);
    }
    const auto p = convergents(IrrationalTarget::parse("pi"), 120);
    CHECK(has(p, 22, 7));
    CHECK(has(p, 355, 113));
    const auto h = convergents(IrrationalTarget::parse("rat:1/2"), 100);
    REQUIRE(h.items.size() == 1);
    CHECK(h.items[0].a == 1);
    CHECK(h.items[0].q == 2);
    CHECK(h.terminated);
}

TEST_CASE("convergent invariants") {
    for (const char* name : {"sqrt2", "golden", "pi", "e"}) {
        const auto t = convergents(IrrationalTarget::parse(name), 1'000'000'000);
        CHECK(!t.truncated);
        const oracle::Real alpha = oracle::named(name, 512);
        for (std::size_t i = 0; i < t.items.size(); ++i) {
            const auto& c = t.items[i];
            CHECK(std::gcd(c.a, c.q) == 1);
            CHECK(c.quality <= 1.0);
            if (i > 0) CHECK(c.q > t.items[i - 1].q);
            oracle::Real d(512);
            mpfr_mul_si(d.get(), alpha.get(), c.q, MPFR_RNDN);
            mpfr_sub_si(d.get(), d.get(), c.a, MPFR_RNDN);
            const double err = std::fabs(d.to_double()) / static_cast<double>(c.q);
            if (i + 1 < t.items.size())
                CHECK(err <= 1.0 / (static_cast<double>(c.q) * static_cast<double>(t.items[i + 1].q)) * (1 + 1e-12));
        }
    }
}

TEST_CASE("convergents stop at the precision horizon") {
    const auto t = convergents(IrrationalTarget::parse("pi", 64), 1'000'000'000'000LL);
    CHECK(t.truncated);
    for (const auto& c : t.items) CHECK(std::ldexp(static_cast<double>(c.q) * static_cast<double>(c.q), -48) < 1.0);
}

TEST_CASE("decimal targets") {
    const auto t = IrrationalTarget::parse("dec:1.41421356237309504880168872420969807856967187537694");
    CHECK(t.value() == std::sqrt(2.0));
    const auto c = convergents(t, 1000);
    CHECK(has(c, 1393, 985));
    CHECK_THROWS_AS(IrrationalTarget::parse("nope"), ContractError);
}

TEST_CASE("dirichlet_approx examples") {
    auto r = dirichlet_approx(0.5, 10);
    CHECK(r.b == 1);
    CHECK(r.r == 2);
    r = dirichlet_approx(std::numbers::pi, 7);
    CHECK(r.b == 22);
    CHECK(r.r == 7);
    r = dirichlet_approx(std::sqrt(2.0), 12);
    CHECK(r.r <= 12);
    CHECK(gap(std::sqrt(2.0), r.b, r.r) <= 1.0 / (12.0 * static_cast<double>(r.r)));
}

TEST_CASE("dirichlet_approx meets the contract against exhaustive search") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_int_distribution<std::int64_t> qd(1, 500);
    for (int i = 0; i < 100; ++i) {
        const double theta = u(rng);
        const std::int64_t Q = qd(rng);
        const auto r = dirichlet_approx(theta, Q);
        CHECK(r.r >= 1);
        CHECK(r.r <= Q);
        CHECK(std::gcd(r.b, r.r) == 1);
        CHECK(gap(theta, r.b, r.r) <= 1.0 / (static_cast<double>(r.r) * static_cast<double>(Q)));
        // an admissible pair always exists
        bool any = false;
        for (std::int64_t s = 1; s <= Q && !any; ++s) {
            const auto b = static_cast<std::int64_t>(std::llround(theta * static_cast<double>(s)));
            any = gap(theta, b, s) <= 1.0 / (static_cast<double>(s) * static_cast<double>(Q));
        }
        CHECK(any);
    }
}

TEST_CASE("min_linear_sum examples") {
    CHECK(min_linear_sum(1, 10, 0.5, 0) == 2.0);
    CHECK(min_linear_sum(2, 1, std::sqrt(2.0), 0.3) <= 2.0);
    CHECK(min_linear_sum(1000, 1000, std::sqrt(2.0), 0) == doctest::Approx(frozen::kMinLinearSum).epsilon(1e-9));
    CHECK(min_linear_sum(3, 7, 1.0, 0.0) == 21.0);  // every term saturates
}

TEST_CASE("min_linear_sum is independent of worker count") {
    set_worker_count(1);
    const double a = min_linear_sum(300'000, 1e4, std::sqrt(3.0), 0.1);
    set_worker_count(4);
    const double b = min_linear_sum(300'000, 1e4, std::sqrt(3.0), 0.1);
    set_worker_count(0);
    CHECK(a == b);
}

TEST_CASE("karatsuba_bound examples") {
    CHECK(karatsuba_bound(7, 0, 7) == doctest::Approx(14 * std::log(7.0)).epsilon(1e-15));
    CHECK(karatsuba_bound(10, 5, 2) == doctest::Approx(25 + 5 + 12 * std::log(2.0)).epsilon(1e-15));
    CHECK(karatsuba_bound(10, 5, 1) == doctest::Approx(50 + 5 + 11 * std::log(2.0)).epsilon(1e-15));
}
