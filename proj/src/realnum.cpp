#include "psmod1/realnum.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>

#include "mpfr_value.hpp"
#include "psmod1/error.hpp"

namespace psmod1 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(double x, const char* op) {
    if (!std::isfinite(x)) throw ContractError(std::string(op) + ": non-finite input");
}

std::optional<Rational> dyadic_of(double x) {
    if (!std::isfinite(x) || x == 0.0) return std::nullopt;
    int e = 0;
    const double m = std::frexp(x, &e);
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    int shift = e - 53;
    while (shift < 0 && (mant & 1) == 0) {
        mant >>= 1;
        ++shift;
    }
    if (shift >= 0) {
        if (shift > 10) return std::nullopt;
        return Rational{mant << shift, 1};
    }
    if (-shift > 62) return std::nullopt;
    return Rational{mant, std::int64_t{1} << -shift};
}

// Integer power with saturation; returns false on overflow past `cap`.
bool checked_pow(std::uint64_t base, std::int64_t exp, unsigned __int128 cap,
                 unsigned __int128& out) {
    unsigned __int128 acc = 1;
    for (std::int64_t i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > cap) return false;
    }
    out = acc;
    return true;
}

// m with m^v == n, if any.
std::optional<std::uint64_t> exact_root(std::uint64_t n, std::int64_t v) {
    if (n == 1) return 1;
    if (v == 1) return n;
    if (v > 63) return std::nullopt;
    const auto guess = static_cast<std::uint64_t>(
        std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(v))));
    for (std::uint64_t m = guess > 1 ? guess - 1 : 1; m <= guess + 1; ++m) {
        unsigned __int128 p = 0;
        if (checked_pow(m, v, n, p) && p == n) return m;
    }
    return std::nullopt;
}

}  // namespace

void PrecisionPolicy::validate() const {
    require(guard_band > 0.0 && guard_band < 0.25, "PrecisionPolicy: guard_band must lie in (0, 1/4)");
    require(high_precision_bits >= 96, "PrecisionPolicy: high_precision_bits must be >= 96");
}

Exponent::Exponent(double value) : value_(value), exact_(dyadic_of(value)) {}

Exponent Exponent::rational(std::int64_t num, std::int64_t den) {
    require(den != 0, "Exponent: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    Exponent out;
    out.exact_ = Rational{num / g, den / g};
    out.value_ = static_cast<double>(num / g) / static_cast<double>(den / g);
    return out;
}

Exponent Exponent::parse(std::string_view text) {
    auto strip = [&](std::string_view prefix) {
        if (text.substr(0, prefix.size()) == prefix) text.remove_prefix(prefix.size());
    };
    strip("rat:");
    strip("dec:");
    require(!text.empty(), "Exponent: empty text");

    auto parse_int = [](std::string_view s, std::int64_t& out) {
        const auto* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(s.data(), end, out);
        return ec == std::errc{} && ptr == end;
    };

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        std::int64_t u = 0, v = 0;
        require(parse_int(text.substr(0, slash), u) && parse_int(text.substr(slash + 1), v),
                "Exponent: malformed rational '" + std::string(text) + "'");
        return rational(u, v);
    }

    // Plain decimal: digits[.digits] parses to an exact decimal rational.
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto dot = body.find('.');
    std::string digits(body.substr(0, dot));
    std::size_t scale = 0;
    if (dot != std::string_view::npos) {
        const auto tail = body.substr(dot + 1);
        digits += tail;
        scale = tail.size();
    }
    const bool plain = !digits.empty() && digits.size() <= 18 && scale <= 18 &&
                       std::all_of(digits.begin(), digits.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (plain) {
        std::int64_t num = 0;
        parse_int(digits, num);
        std::int64_t den = 1;
        for (std::size_t i = 0; i < scale; ++i) den *= 10;
        return rational(negative ? -num : num, den);
    }

    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    require(ec == std::errc{} && ptr == end, "Exponent: cannot parse '" + std::string(text) + "'");
    return Exponent(v);
}

std::string Exponent::to_string() const {
    char buf[64];
    if (exact_ && (exact_->den & (exact_->den - 1)) != 0) {
        std::snprintf(buf, sizeof buf, "%lld/%lld", static_cast<long long>(exact_->num),
                      static_cast<long long>(exact_->den));
    } else {
        std::snprintf(buf, sizeof buf, "%.17g", value_);
    }
    return buf;
}

double frac(double x) {
    require_finite(x, "frac");
    double r = x - std::floor(x);
    if (r >= 1.0) r = std::nextafter(1.0, 0.0);
    return r;
}

double dist_nearest(double x) {
    const double f = frac(x);
    return std::min(f, 1.0 - f);
}

double sawtooth(double x) { return frac(x) - 0.5; }

double reduce_phase(double x) {
    require_finite(x, "reduce_phase");
    return x - std::round(x);
}

UnitComplex e_phase(double x) {
    const double r = reduce_phase(x);
    const double a = std::fabs(r);
    double c = 0.0, s = 0.0;
    if (a <= 0.125) {
        c = std::cos(kTwoPi * a);
        s = std::sin(kTwoPi * a);
    } else if (a <= 0.25) {
        const double b = 0.25 - a;
        c = std::sin(kTwoPi * b);
        s = std::cos(kTwoPi * b);
    } else if (a <= 0.375) {
        const double b = a - 0.25;
        c = -std::sin(kTwoPi * b);
        s = std::cos(kTwoPi * b);
    } else {
        const double b = 0.5 - a;
        c = -std::cos(kTwoPi * b);
        s = std::sin(kTwoPi * b);
    }
    return {c, std::signbit(r) ? -s : s};
}

double phase_mul(std::int64_t n, double alpha) {
    require_finite(alpha, "phase_mul");
    const auto dn = static_cast<double>(n);
    const double hi = dn * alpha;
    const double lo = std::fma(dn, alpha, -hi);
    // both reductions are exactly odd, so phase_mul(-n, a) == -phase_mul(n, a)
    return reduce_phase(reduce_phase(hi) + lo);
}

double frac_mul(std::int64_t n, double alpha) {
    const double r = phase_mul(n, alpha);
    if (r >= 0.0) return r;
    const double f = r + 1.0;
    return f >= 1.0 ? std::nextafter(1.0, 0.0) : f;
}

namespace {

void mpfr_pow_exponent(detail::MpfrValue& out, std::uint64_t n, const Exponent& gamma) {
    detail::MpfrValue g(out.bits());
    detail::set_uint64(out.get(), n);
    if (const auto& q = gamma.exact()) {
        detail::set_int64(g.get(), q->num);
        mpfr_div_si(g.get(), g.get(), static_cast<long>(q->den), MPFR_RNDN);
    } else {
        mpfr_set_d(g.get(), gamma.value(), MPFR_RNDN);
    }
    mpfr_pow(out.get(), out.get(), g.get(), MPFR_RNDN);
}

}  // namespace

double pow_high_precision(std::uint64_t n, const Exponent& gamma, int bits) {
    detail::MpfrValue x(bits);
    mpfr_pow_exponent(x, n, gamma);
    return x.to_double();
}

FloorFrac pow_floor_frac(std::uint64_t n, const Exponent& gamma, const PrecisionPolicy& policy) {
    require(n >= 1, "pow_floor_frac: n must be >= 1");
    require(gamma.value() > 0.0 && gamma.value() <= 1.0, "pow_floor_frac: gamma must lie in (0, 1]");
    if (n == 1) return {1, 0.0, false, true};
    if (gamma.value() == 1.0) return {static_cast<std::int64_t>(n), 0.0, false, true};

    const double x = std::pow(static_cast<double>(n), gamma.value());
    const double fl = std::floor(x);
    const double fr = x - fl;
    if (fr > policy.guard_band && fr < 1.0 - policy.guard_band)
        return {static_cast<std::int64_t>(fl), fr, false, false};

    if (const auto& q = gamma.exact(); q && q->num > 0) {
        if (const auto m = exact_root(n, q->den)) {
            unsigned __int128 p = 0;
            if (checked_pow(*m, q->num, std::numeric_limits<std::int64_t>::max(), p))
                return {static_cast<std::int64_t>(p), 0.0, true, true};
        }
    }

    const int bits = policy.high_precision_bits;
    detail::MpfrValue y(bits), fl_hp(bits), fr_hp(bits);
    mpfr_pow_exponent(y, n, gamma);
    mpfr_floor(fl_hp.get(), y.get());
    mpfr_sub(fr_hp.get(), y.get(), fl_hp.get(), MPFR_RNDN);

    // distance to the nearest integer must exceed 2^(-bits/2)
    detail::MpfrValue dist(bits), one_minus(bits);
    mpfr_ui_sub(one_minus.get(), 1, fr_hp.get(), MPFR_RNDN);
    mpfr_min(dist.get(), fr_hp.get(), one_minus.get(), MPFR_RNDN);
    if (mpfr_cmp_si_2exp(dist.get(), 1, -bits / 2) < 0) {
        throw BoundaryError("pow_floor_frac: n^gamma within 2^-" + std::to_string(bits / 2) +
                            " of an integer (n=" + std::to_string(n) + ", gamma=" +
                            gamma.to_string() + ")");
    }
    return {static_cast<std::int64_t>(mpfr_get_sj(fl_hp.get(), MPFR_RNDN)), fr_hp.to_double(), true,
            false};
}

}  // namespace psmod1
