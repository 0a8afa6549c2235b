#include "qptau/real.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <vector>

namespace qptau {

namespace {
thread_local mpfr_prec_t g_default_prec = 128;

mpfr_prec_t join(const Real& a, const Real& b) {
    return std::max(a.prec(), b.prec());
}
} // namespace

mpfr_prec_t Real::default_prec() { return g_default_prec; }
void Real::set_default_prec(mpfr_prec_t p) { g_default_prec = p; }

Real Real::from_double(double d, mpfr_prec_t prec) {
    Real r = Real::zero(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
}

Real Real::from_string(const std::string& s, mpfr_prec_t prec) {
    Real r = Real::zero(prec);
    mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN);
    return r;
}

Real Real::pi(mpfr_prec_t prec) {
    Real r = Real::zero(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

std::string Real::str(int digits) const {
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    char fmt[32];
    std::snprintf(fmt, sizeof(fmt), "%%.%dRe", digits - 1);
    std::vector<char> buf(static_cast<size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), fmt, v_);
    return std::string(buf.data());
}

#define QPTAU_BINOP(op, fn)                                   \
    Real operator op(const Real& a, const Real& b) {          \
        Real r = Real::zero(join(a, b));                                   \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                      \
        return r;                                             \
    }
QPTAU_BINOP(+, mpfr_add)
QPTAU_BINOP(-, mpfr_sub)
QPTAU_BINOP(*, mpfr_mul)
QPTAU_BINOP(/, mpfr_div)
#undef QPTAU_BINOP

Real operator-(const Real& a) {
    Real r = Real::zero(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
}
Real operator+(const Real& a, long b) { Real r = Real::zero(a.prec()); mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
Real operator-(const Real& a, long b) { Real r = Real::zero(a.prec()); mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
Real operator*(const Real& a, long b) { Real r = Real::zero(a.prec()); mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
Real operator/(const Real& a, long b) { Real r = Real::zero(a.prec()); mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
Real operator-(long a, const Real& b) { Real r = Real::zero(b.prec()); mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN); return r; }
Real operator/(long a, const Real& b) { Real r = Real::zero(b.prec()); mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN); return r; }

Real& Real::operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

#define QPTAU_UNFN(name, fn)                                  \
    Real name(const Real& a) {                                \
        Real r = Real::zero(a.prec());                                     \
        fn(r.raw(), a.raw(), MPFR_RNDN);                      \
        return r;                                             \
    }
QPTAU_UNFN(abs, mpfr_abs)
QPTAU_UNFN(sqrt, mpfr_sqrt)
QPTAU_UNFN(exp, mpfr_exp)
QPTAU_UNFN(log, mpfr_log)
QPTAU_UNFN(sin, mpfr_sin)
QPTAU_UNFN(cos, mpfr_cos)
#undef QPTAU_UNFN

Real atan2(const Real& y, const Real& x) {
    Real r = Real::zero(join(y, x));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
Real hypot(const Real& x, const Real& y) {
    Real r = Real::zero(join(x, y));
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
Real pow(const Real& base, long e) {
    Real r = Real::zero(base.prec());
    mpfr_pow_si(r.raw(), base.raw(), e, MPFR_RNDN);
    return r;
}
Real pow(const Real& base, const Real& e) {
    Real r = Real::zero(join(base, e));
    mpfr_pow(r.raw(), base.raw(), e.raw(), MPFR_RNDN);
    return r;
}
Real floor(const Real& a) {
    Real r = Real::zero(a.prec());
    mpfr_floor(r.raw(), a.raw());
    return r;
}
Real round(const Real& a) {
    Real r = Real::zero(a.prec());
    mpfr_round(r.raw(), a.raw());
    return r;
}
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
Real min(const Real& a, const Real& b) { return a <= b ? a : b; }

Real int_dist(const Real& a) { return abs(a - round(a)); }

} // namespace qptau
