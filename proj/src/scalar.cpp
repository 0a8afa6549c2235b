#include "qptau/scalar.hpp"

namespace qptau {

Rat parse_rat(const std::string& s) {
    try {
        return Rat(s);
    } catch (const std::exception&) {
        throw domain_error("not a rational literal: '" + s + "'");
    }
}

std::string rat_str(const Rat& r) { return r.str(); }

Complex Scalar::to_complex(mpfr_prec_t prec) const {
    if (is_exact()) {
        const Rat& r = rational();
        Real num = Real::from_string(boost::multiprecision::numerator(r).str(), prec);
        Real den = Real::from_string(boost::multiprecision::denominator(r).str(), prec);
        return Complex(num / den);
    }
    return complex_value();
}

Scalar Scalar::apply(const Scalar& a, const Scalar& b, char op) {
    if (a.mode() != b.mode())
        throw mode_error("Scalar: cannot mix exact and float operands in one expression");
    if (a.is_exact()) {
        const Rat &x = a.rational(), &y = b.rational();
        switch (op) {
            case '+': return Scalar(Rat(x + y));
            case '-': return Scalar(Rat(x - y));
            case '*': return Scalar(Rat(x * y));
            default:
                if (y == 0) throw domain_error("Scalar: exact division by zero");
                return Scalar(Rat(x / y));
        }
    }
    const Complex &x = a.complex_value(), &y = b.complex_value();
    switch (op) {
        case '+': return Scalar(x + y);
        case '-': return Scalar(x - y);
        case '*': return Scalar(x * y);
        default: return Scalar(x / y);
    }
}

std::string Scalar::str() const {
    return is_exact() ? rat_str(rational()) : complex_value().str();
}

Scalar pow_int(const Scalar& base, long e) {
    if (base.is_exact()) return Scalar(pow_int(base.rational(), e));
    return Scalar(pow_int(base.complex_value(), e));
}

} // namespace qptau
