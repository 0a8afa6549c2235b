#pragma once

#include "qptau/real.hpp"

#include <string>

namespace qptau {

// Rectangular complex number over Real. Principal branches throughout:
// log z = (log|z|, atan2(Im z, Re z)), pow(a,b) = exp(b log a).
struct Complex {
    Real re, im;

    Complex() : re(), im() {}
    Complex(Real r) : re(std::move(r)), im(0L, re.prec()) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long n) : re(n), im(0L) {}
    Complex(int n) : re(static_cast<long>(n)), im(0L) {}
    static Complex from_string(const std::string& r, const std::string& i,
                               mpfr_prec_t prec = Real::default_prec()) {
        return Complex(Real::from_string(r, prec), Real::from_string(i, prec));
    }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }
    bool is_real() const { return im.is_zero(); }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
    friend Complex operator*(const Real& a, const Complex& b) { return b * a; }
    friend Complex operator*(const Complex& a, long b) { return {a.re * b, a.im * b}; }
    friend Complex operator/(const Complex& a, const Complex& b);
    friend Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
    friend Complex operator/(const Complex& a, long b) { return {a.re / b, a.im / b}; }
    friend Complex operator+(const Complex& a, long b) { return {a.re + b, a.im}; }
    friend Complex operator-(const Complex& a, long b) { return {a.re - b, a.im}; }
    friend Complex operator-(long a, const Complex& b) { return {a - b.re, -b.im}; }
    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

    std::string str(int digits = 40) const;
};

Real abs(const Complex& a);
Real norm(const Complex& a); // |a|^2
Complex conj(const Complex& a);
Complex exp(const Complex& a);
Complex log(const Complex& a); // principal
Complex sqrt(const Complex& a);
Complex pow(const Complex& base, const Complex& e); // principal
Complex pow(const Complex& base, const Real& e);
Complex pow_int(const Complex& base, long e);
Complex inverse(const Complex& a);

// Relative distance |a-b| / max(|a|,|b|,floor).
Real rel_diff(const Complex& a, const Complex& b);

} // namespace qptau
