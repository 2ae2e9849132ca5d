#pragma once

#include <cstdint>
#include <utility>

#include <mpfr.h>

namespace psmod1::detail {

/// Owning MPFR value.
class MpfrValue {
public:
    explicit MpfrValue(int bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
    MpfrValue(const MpfrValue& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    MpfrValue& operator=(const MpfrValue& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    ~MpfrValue() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    int bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

inline void set_int64(mpfr_ptr x, std::int64_t v) { mpfr_set_sj(x, v, MPFR_RNDN); }
inline void set_uint64(mpfr_ptr x, std::uint64_t v) { mpfr_set_uj(x, v, MPFR_RNDN); }

}  // namespace psmod1::detail
