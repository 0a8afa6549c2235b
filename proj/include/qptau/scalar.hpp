#pragma once

#include "qptau/complex.hpp"
#include "qptau/errors.hpp"
#include "qptau/rational.hpp"

#include <variant>

namespace qptau {

// Boundary scalar type: either an exact rational or an extended-precision
// complex float. The two modes never mix silently; combining them throws
// mode_error. Core kernels work on the concrete types; Scalar is the type
// that crosses the API (configs, reports, the C layer).
class Scalar {
public:
    enum class Mode { Exact, Float };

    Scalar() : v_(Rat(0)) {}
    Scalar(Rat r) : v_(std::move(r)) {}
    Scalar(Complex c) : v_(std::move(c)) {}
    static Scalar exact(long num, long den = 1) { return Scalar(Rat(num, den)); }

    Mode mode() const { return std::holds_alternative<Rat>(v_) ? Mode::Exact : Mode::Float; }
    bool is_exact() const { return mode() == Mode::Exact; }

    const Rat& rational() const {
        if (!is_exact()) throw mode_error("Scalar: float value used where exact was required");
        return std::get<Rat>(v_);
    }
    const Complex& complex_value() const {
        if (is_exact()) throw mode_error("Scalar: exact value used where float was required");
        return std::get<Complex>(v_);
    }

    // Float view of either mode (exact values are rounded at the given precision).
    Complex to_complex(mpfr_prec_t prec = Real::default_prec()) const;

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return apply(a, b, '+'); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return apply(a, b, '-'); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) { return apply(a, b, '*'); }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return apply(a, b, '/'); }

    std::string str() const;

private:
    static Scalar apply(const Scalar& a, const Scalar& b, char op);
    std::variant<Rat, Complex> v_;
};

Scalar pow_int(const Scalar& base, long e);

} // namespace qptau
