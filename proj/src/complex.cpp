#include "qptau/complex.hpp"

namespace qptau {

Complex operator/(const Complex& a, const Complex& b) {
    Real d = norm(b);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

std::string Complex::str(int digits) const {
    if (im.is_zero()) return re.str(digits);
    return re.str(digits) + (im.sign() < 0 ? " - " : " + ") + abs(im).str(digits) + "i";
}

Real abs(const Complex& a) { return hypot(a.re, a.im); }
Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }
Complex conj(const Complex& a) { return {a.re, -a.im}; }

Complex exp(const Complex& a) {
    Real m = exp(a.re);
    if (a.im.is_zero()) return {m, Real(0L, m.prec())};
    return {m * cos(a.im), m * sin(a.im)};
}

Complex log(const Complex& a) {
    if (a.im.is_zero() && a.re > 0L) return {log(a.re), Real(0L, a.re.prec())};
    return {log(abs(a)), atan2(a.im, a.re)};
}

Complex sqrt(const Complex& a) {
    if (a.im.is_zero() && a.re >= 0L) return {sqrt(a.re), Real(0L, a.re.prec())};
    return exp(log(a) / 2L);
}

Complex pow(const Complex& base, const Complex& e) {
    if (e.is_zero()) return Complex(1L);
    if (base.is_real() && base.re > 0L && e.is_real()) return {pow(base.re, e.re), Real(0L, base.re.prec())};
    return exp(e * log(base));
}

Complex pow(const Complex& base, const Real& e) { return pow(base, Complex(e)); }

Complex pow_int(const Complex& base, long e) {
    if (e == 0) return Complex(1L);
    bool neg = e < 0;
    unsigned long n = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Complex acc(1L), b = base;
    while (n) {
        if (n & 1UL) acc *= b;
        b *= b;
        n >>= 1UL;
    }
    return neg ? inverse(acc) : acc;
}

Complex inverse(const Complex& a) {
    Real d = norm(a);
    return {a.re / d, -a.im / d};
}

Real rel_diff(const Complex& a, const Complex& b) {
    Real scale = max(abs(a), abs(b));
    if (scale.is_zero()) return Real(0L);
    return abs(a - b) / scale;
}

} // namespace qptau
