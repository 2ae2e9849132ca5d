#include "psmod1/diophantine.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mpfr_value.hpp"
#include "psmod1/error.hpp"
#include "psmod1/parallel.hpp"
#include "psmod1/summation.hpp"

namespace psmod1 {

struct IrrationalTarget::Impl {
    explicit Impl(int bits) : value(bits) {}
    detail::MpfrValue value;
};

namespace {

class Mpz {
public:
    Mpz() { mpz_init(v_); }
    ~Mpz() { mpz_clear(v_); }
    Mpz(const Mpz&) = delete;
    Mpz& operator=(const Mpz&) = delete;
    mpz_ptr get() { return v_; }

private:
    mpz_t v_;
};

}  // namespace

IrrationalTarget IrrationalTarget::named(NamedConstant c, int precision_bits) {
    require(precision_bits >= 64, "IrrationalTarget: precision_bits must be >= 64");
    auto impl = std::make_shared<Impl>(precision_bits);
    mpfr_ptr x = impl->value.get();
    IrrationalTarget t;
    switch (c) {
        case NamedConstant::sqrt2:
            mpfr_sqrt_ui(x, 2, MPFR_RNDN);
            t.spec_ = "sqrt2";
            break;
        case NamedConstant::golden:
            mpfr_sqrt_ui(x, 5, MPFR_RNDN);
            mpfr_add_ui(x, x, 1, MPFR_RNDN);
            mpfr_div_2ui(x, x, 1, MPFR_RNDN);
            t.spec_ = "golden";
            break;
        case NamedConstant::pi:
            mpfr_const_pi(x, MPFR_RNDN);
            t.spec_ = "pi";
            break;
        case NamedConstant::e:
            mpfr_set_ui(x, 1, MPFR_RNDN);
            mpfr_exp(x, x, MPFR_RNDN);
            t.spec_ = "e";
            break;
    }
    t.bits_ = precision_bits;
    t.value_ = impl->value.to_double();
    t.impl_ = std::move(impl);
    return t;
}

IrrationalTarget IrrationalTarget::decimal(std::string_view digits, int precision_bits) {
    require(precision_bits >= 64, "IrrationalTarget: precision_bits must be >= 64");
    auto impl = std::make_shared<Impl>(precision_bits);
    const std::string text(digits);
    require(!text.empty() && mpfr_set_str(impl->value.get(), text.c_str(), 10, MPFR_RNDN) == 0,
            "IrrationalTarget: malformed decimal '" + text + "'");
    IrrationalTarget t;
    t.spec_ = "dec:" + text;
    t.bits_ = precision_bits;
    t.value_ = impl->value.to_double();
    t.impl_ = std::move(impl);
    return t;
}

IrrationalTarget IrrationalTarget::rational(std::int64_t num, std::int64_t den) {
    require(den != 0, "IrrationalTarget: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const auto g = std::gcd(num, den);
    num /= g;
    den /= g;
    auto impl = std::make_shared<Impl>(256);
    detail::set_int64(impl->value.get(), num);
    mpfr_div_si(impl->value.get(), impl->value.get(), static_cast<long>(den), MPFR_RNDN);
    IrrationalTarget t;
    t.spec_ = "rat:" + std::to_string(num) + "/" + std::to_string(den);
    t.bits_ = 256;
    t.value_ = impl->value.to_double();
    t.rational_ = Rational{num, den};
    t.impl_ = std::move(impl);
    return t;
}

IrrationalTarget IrrationalTarget::parse(std::string_view spec, int precision_bits) {
    if (spec == "sqrt2") return named(NamedConstant::sqrt2, precision_bits);
    if (spec == "golden") return named(NamedConstant::golden, precision_bits);
    if (spec == "pi") return named(NamedConstant::pi, precision_bits);
    if (spec == "e") return named(NamedConstant::e, precision_bits);
    if (spec.substr(0, 4) == "dec:") return decimal(spec.substr(4), precision_bits);
    if (spec.substr(0, 4) == "rat:") {
        const auto body = spec.substr(4);
        const auto slash = body.find('/');
        require(slash != std::string_view::npos, "IrrationalTarget: rat:<u>/<v> expected");
        try {
            return rational(std::stoll(std::string(body.substr(0, slash))),
                            std::stoll(std::string(body.substr(slash + 1))));
        } catch (const std::logic_error&) {
            throw ContractError("IrrationalTarget: malformed rational '" + std::string(spec) + "'");
        }
    }
    throw ContractError("IrrationalTarget: unknown target '" + std::string(spec) +
                        "' (expected sqrt2|golden|pi|e|dec:<digits>|rat:<u>/<v>)");
}

double IrrationalTarget::quality(std::int64_t a, std::int64_t q) const {
    detail::MpfrValue d(bits_ + 64);
    detail::set_int64(d.get(), a);
    mpfr_div_si(d.get(), d.get(), static_cast<long>(q), MPFR_RNDN);
    mpfr_sub(d.get(), impl_->value.get(), d.get(), MPFR_RNDN);
    mpfr_abs(d.get(), d.get(), MPFR_RNDN);
    mpfr_mul_si(d.get(), d.get(), static_cast<long>(q), MPFR_RNDN);
    mpfr_mul_si(d.get(), d.get(), static_cast<long>(q), MPFR_RNDN);
    return d.to_double();
}

std::string IrrationalTarget::digits(int count) const {
    std::vector<char> buf(static_cast<std::size_t>(count) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", count, impl_->value.get());
    return buf.data();
}

ConvergentTable convergents(const IrrationalTarget& target, std::int64_t q_max) {
    require(q_max >= 1, "convergents: q_max must be >= 1");
    ConvergentTable table;

    if (const auto& r = target.rational_value()) {
        table.terminated = true;
        if (r->den <= q_max) table.items.push_back({r->num, r->den, 0.0});
        return table;
    }

    const int bits = target.precision_bits();
    // q^2 < 2^(bits - 16)
    const double horizon = std::ldexp(1.0, (bits - 16) / 2);
    detail::MpfrValue x(bits), fl(bits);
    mpfr_set(x.get(), target.impl().value.get(), MPFR_RNDN);

    __int128 p2 = 0, q2 = 1, p1 = 1, q1 = 0;
    for (;;) {
        mpfr_floor(fl.get(), x.get());
        const auto a = static_cast<__int128>(mpfr_get_sj(fl.get(), MPFR_RNDN));
        const __int128 p = a * p1 + p2;
        const __int128 q = a * q1 + q2;
        p2 = p1;
        q2 = q1;
        p1 = p;
        q1 = q;

        if (q > q_max) break;
        if (static_cast<double>(q) >= horizon) {
            table.truncated = true;
            break;
        }
        const auto ai = static_cast<std::int64_t>(p);
        const auto qi = static_cast<std::int64_t>(q);
        Convergent c{ai, qi, target.quality(ai, qi)};
        if (!table.items.empty() && table.items.back().q == qi)
            table.items.back() = c;
        else
            table.items.push_back(c);

        mpfr_sub(x.get(), x.get(), fl.get(), MPFR_RNDN);
        if (mpfr_zero_p(x.get())) {
            table.terminated = true;
            break;
        }
        mpfr_ui_div(x.get(), 1, x.get(), MPFR_RNDN);
    }
    return table;
}

DirichletApprox dirichlet_approx(double theta, std::int64_t Q) {
    require(std::isfinite(theta), "dirichlet_approx: theta must be finite");
    require(Q >= 1, "dirichlet_approx: Q must be >= 1");

    // theta = num / den exactly, den a power of two
    int e = 0;
    const double m = std::frexp(theta, &e);
    Mpz num, den, rem, a;
    mpz_set_d(num.get(), std::ldexp(m, 53));
    mpz_set_ui(den.get(), 1);
    if (e - 53 >= 0)
        mpz_mul_2exp(num.get(), num.get(), static_cast<mp_bitcnt_t>(e - 53));
    else
        mpz_mul_2exp(den.get(), den.get(), static_cast<mp_bitcnt_t>(53 - e));

    __int128 p2 = 0, q2 = 1, p1 = 1, q1 = 0;
    DirichletApprox best{0, 1};
    for (;;) {
        mpz_fdiv_qr(a.get(), rem.get(), num.get(), den.get());
        require(mpz_fits_slong_p(a.get()), "dirichlet_approx: theta too large");
        const __int128 ai = mpz_get_si(a.get());
        const __int128 p = ai * p1 + p2;
        const __int128 q = ai * q1 + q2;
        if (q > Q) break;
        p2 = p1;
        q2 = q1;
        p1 = p;
        q1 = q;
        best = {static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)};
        if (mpz_sgn(rem.get()) == 0) break;
        mpz_set(num.get(), den.get());
        mpz_set(den.get(), rem.get());
    }
    return best;
}

double min_linear_sum(std::int64_t N, double U, double alpha, double beta) {
    require(N >= 1, "min_linear_sum: N must be >= 1");
    require(U > 0.0 && std::isfinite(U), "min_linear_sum: U must be positive");
    require(std::isfinite(alpha) && std::isfinite(beta), "min_linear_sum: alpha, beta must be finite");
    const double beta_frac = frac(beta);
    const auto parts = map_chunks(1, N + 1, [&](std::int64_t lo, std::int64_t hi) {
        CompensatedSum s;
        for (std::int64_t n = lo; n < hi; ++n) {
            const double d = dist_nearest(frac_mul(n, alpha) + beta_frac);
            s.add(d == 0.0 || 1.0 / d > U ? U : 1.0 / d);
        }
        return s;
    });
    CompensatedSum total;
    for (const auto& s : parts) total.merge(s);
    return total.value();
}

double karatsuba_bound(double N, double U, std::int64_t q) {
    require(q >= 1, "karatsuba_bound: q must be >= 1");
    const auto dq = static_cast<double>(q);
    return N * U / dq + U + (N + dq) * std::log(std::max(dq, 2.0));
}

}  // namespace psmod1
