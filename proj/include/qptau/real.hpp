#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

namespace qptau {

// Thin RAII wrapper around mpfr_t. Every value carries its own precision;
// binary operations compute at the larger of the two operand precisions, so
// precision seeded into a computation propagates through it. Rounding is
// always to nearest.
class Real {
public:
    static mpfr_prec_t default_prec();
    static void set_default_prec(mpfr_prec_t p);

    // Scoped override of the thread-local default precision.
    struct PrecGuard {
        explicit PrecGuard(mpfr_prec_t p) : saved_(default_prec()) { set_default_prec(p); }
        ~PrecGuard() { set_default_prec(saved_); }
        PrecGuard(const PrecGuard&) = delete;
        PrecGuard& operator=(const PrecGuard&) = delete;
    private:
        mpfr_prec_t saved_;
    };

    Real() : Real(0L, default_prec()) {}
    Real(long n, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, n, MPFR_RNDN); }
    Real(int n) : Real(static_cast<long>(n), default_prec()) {}
    Real(long n) : Real(n, default_prec()) {}
    static Real zero(mpfr_prec_t prec) { return Real(0L, prec); }

    static Real from_double(double d, mpfr_prec_t prec = default_prec());
    // Accepts decimal ("0.25", "1e-3") strings.
    static Real from_string(const std::string& s, mpfr_prec_t prec = default_prec());
    static Real pi(mpfr_prec_t prec = default_prec());

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        v_[0] = o.v_[0];
        mpfr_init2(o.v_, MPFR_PREC_MIN);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // Deterministic scientific form with the given number of significant digits.
    std::string str(int digits = 40) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    friend Real operator-(const Real& a);
    friend Real operator+(const Real& a, long b);
    friend Real operator-(const Real& a, long b);
    friend Real operator*(const Real& a, long b);
    friend Real operator/(const Real& a, long b);
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator-(long a, const Real& b);
    friend Real operator/(long a, const Real& b);
    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

private:
    mpfr_t v_;
};

Real abs(const Real& a);
Real sqrt(const Real& a);
Real exp(const Real& a);
Real log(const Real& a);
Real sin(const Real& a);
Real cos(const Real& a);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& base, long e);
Real pow(const Real& base, const Real& e); // base > 0
Real floor(const Real& a);
Real round(const Real& a);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

// Distance from a to the nearest integer.
Real int_dist(const Real& a);

} // namespace qptau
