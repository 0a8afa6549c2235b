#include "qptau/qspecial.hpp"

namespace qptau {

ProductValue q_pochhammer_inf(const Complex& a, const QContext& ctx) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    Complex acc(1L), aq = a;
    for (long j = 0; j < ctx.P; ++j) {
        acc *= (Complex(1L) - aq);
        aq = aq * ctx.q;
    }
    return {acc, ctx.product_tail(abs(a))};
}

ProductValue q_double_pochhammer_inf(const Complex& a, const QContext& ctx) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    Complex acc(1L), aq = a;
    for (long m = 0; m < ctx.P; ++m) {
        acc *= pow_int(Complex(1L) - aq, m + 1);
        aq = aq * ctx.q;
    }
    // sum_{m>=P} (m+1) |a| |q|^m <= |a| |q|^P ((P+1)/(1-|q|) + |q|/(1-|q|)^2)
    Real aqr = abs(ctx.q);
    Real one_m = Real(1L) - aqr;
    Real tail = abs(a) * pow(aqr, ctx.P) * (Real(ctx.P + 1) / one_m + aqr / (one_m * one_m));
    return {acc, tail};
}

bool near_nonpositive_integer(const Complex& u, const Real& eps) {
    if (abs(u.im) > eps) return false;
    Real r = round(u.re);
    if (r > 0L) return false;
    return abs(u.re - r) <= eps;
}

Complex gamma_q(const Complex& u, const QContext& ctx) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    Real eps = Real::from_string("1e-12");
    if (near_nonpositive_integer(u, eps))
        throw pole_error("gamma_q: pole at u = " + u.str(8));
    Complex qu = pow(ctx.q, u);
    Complex num = q_pochhammer_inf(ctx.q, ctx).value;
    Complex den = q_pochhammer_inf(qu, ctx).value;
    return num / den * pow(Complex(1L) - ctx.q, Complex(1L) - u);
}

Complex barnes_g_q(const Complex& u, const QContext& ctx) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    Complex qu = pow(ctx.q, u);
    Complex num = q_double_pochhammer_inf(qu, ctx).value;
    Complex den = q_double_pochhammer_inf(ctx.q, ctx).value;
    Complex pq = q_pochhammer_inf(ctx.q, ctx).value;
    Complex e = (u - 1L) * (u - 2L) / 2L;
    return num / den * pow(pq, u - 1L) * pow(Complex(1L) - ctx.q, -e);
}

Complex big_theta(const Complex& x, const QContext& ctx) {
    if (x.is_zero()) throw domain_error("big_theta: x must be nonzero");
    Real::PrecGuard guard(ctx.mantissa_bits);
    Complex a = q_pochhammer_inf(x, ctx).value;
    Complex b = q_pochhammer_inf(ctx.q / x, ctx).value;
    Complex c = q_pochhammer_inf(ctx.q, ctx).value;
    return a * b * c;
}

Complex theta(const Complex& u, const QContext& ctx) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    Complex qu = pow(ctx.q, u);
    return pow(ctx.q, u * (u - 1L) / 2L) * big_theta(qu, ctx);
}

Complex q_2phi1(const Complex& a, const Complex& b, const Complex& c, const Complex& x,
                const QContext& ctx, long terms) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    Complex sum(0L), term(1L);
    Complex qn(1L); // q^n
    for (long n = 0; n < terms; ++n) {
        sum += term;
        // term ratio ((1-a q^n)(1-b q^n)) / ((1-c q^n)(1-q^{n+1})) * x
        Complex num = (Complex(1L) - a * qn) * (Complex(1L) - b * qn);
        Complex den = (Complex(1L) - c * qn) * (Complex(1L) - ctx.q * qn);
        term = term * num / den * x;
        qn = qn * ctx.q;
    }
    return sum;
}

Complex heine_F(const Complex& alpha, const Complex& beta, const Complex& gamma,
                const Complex& x, const QContext& ctx, long terms) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    Real eps = Real::from_string("1e-12");
    if (near_nonpositive_integer(gamma, eps))
        throw pole_error("heine_F: gamma is a nonpositive integer");
    Complex qa = pow(ctx.q, alpha), qb = pow(ctx.q, beta), qg = pow(ctx.q, gamma);
    Complex pref = gamma_q(alpha, ctx) * gamma_q(beta, ctx) / gamma_q(gamma, ctx);
    return pref * q_2phi1(qa, qb, qg, x, ctx, terms);
}

} // namespace qptau
