#include "qptau/qpvi.hpp"

namespace qptau {

namespace {

void check_nonsingular(const Complex& num, const char* what) {
    if (abs(num) < Real::from_string("1e-30"))
        throw singular_error(std::string("qpvi_step: vanishing factor ") + what);
}

Complex tau_at(const TauEvaluator& e, const Complex& t, long K, long N) {
    return e.eval(t, K, N).value;
}

} // namespace

QPviParams params_from_thetas(const Complex& th0, const Complex& tht, const Complex& th1,
                              const Complex& thI, const Complex& q) {
    QPviParams p;
    p.a1 = pow(q, -th1 * 2L - 1L);
    p.a2 = pow(q, -tht * 2L - th1 * 2L - 1L);
    p.a3 = pow(q, Complex(-1L));
    p.a4 = p.a1;
    p.b1 = pow(q, -th0 - tht - th1);
    p.b2 = pow(q, th0 - tht - th1);
    p.b3 = pow(q, thI - 1L);
    p.b4 = pow(q, -thI);
    return p;
}

QPviState qpvi_step(const QPviState& s, const QPviParams& p, const Complex& q) {
    check_nonsingular(s.z, "z");
    check_nonsingular(s.y - p.a3, "y - a3");
    check_nonsingular(s.y - p.a4, "y - a4");
    Complex zbar = p.b3 * p.b4 / s.z * (s.y - s.t * p.a1) * (s.y - s.t * p.a2) /
                   ((s.y - p.a3) * (s.y - p.a4));
    check_nonsingular(s.y, "y");
    check_nonsingular(zbar - p.b3, "zbar - b3");
    check_nonsingular(zbar - p.b4, "zbar - b4");
    Complex ybar = p.a3 * p.a4 / s.y * (zbar - s.t * p.b1) * (zbar - s.t * p.b2) /
                   ((zbar - p.b3) * (zbar - p.b4));
    return {ybar, zbar, q * s.t};
}

QPviState qpvi_step_back(const QPviState& s, const QPviParams& p, const Complex& q) {
    Complex t = s.t / q;
    check_nonsingular(s.y, "ybar");
    check_nonsingular(s.z - p.b3, "zbar - b3");
    check_nonsingular(s.z - p.b4, "zbar - b4");
    Complex y = p.a3 * p.a4 / s.y * (s.z - t * p.b1) * (s.z - t * p.b2) /
                ((s.z - p.b3) * (s.z - p.b4));
    check_nonsingular(s.z, "zbar");
    check_nonsingular(y - p.a3, "y - a3");
    check_nonsingular(y - p.a4, "y - a4");
    Complex z = p.b3 * p.b4 / s.z * (y - t * p.a1) * (y - t * p.a2) /
                ((y - p.a3) * (y - p.a4));
    return {y, z, t};
}

namespace {

Complex y_ratio(const std::vector<TauEvaluator>& tau, const Complex& th1, const Complex& t,
                const QContext& ctx) {
    Complex t1 = tau_at(tau[0], t, ctx.K, ctx.N), t2 = tau_at(tau[1], t, ctx.K, ctx.N);
    Complex t3 = tau_at(tau[2], t, ctx.K, ctx.N), t4 = tau_at(tau[3], t, ctx.K, ctx.N);
    Complex den = t1 * t2;
    if (abs(den) < Real::from_string("1e-60"))
        throw singular_error("y_from_tau: tau1 tau2 vanished");
    return pow(tau[0].ctx().q, -th1 * 2L - 1L) * t * t3 * t4 / den;
}

} // namespace

Complex y_from_tau(const TauFamily& f, const Complex& t, const QContext& ctx) {
    return y_ratio(f.tau, f.base.th1, t, ctx);
}

Complex y_from_tau(const TauTheorem32Family& f, const Complex& t, const QContext& ctx) {
    return y_ratio(f.tau, f.base.th1, t, ctx);
}

Complex z_from_tau_thm(const TauTheorem32Family& f, const Complex& t, const QContext& ctx) {
    const Complex& q = f.tau[0].ctx().q;
    Complex tu = t / q;
    Complex t1 = tau_at(f.tau[0], t, ctx.K, ctx.N), t2 = tau_at(f.tau[1], t, ctx.K, ctx.N);
    Complex t1u = tau_at(f.tau[0], tu, ctx.K, ctx.N), t2u = tau_at(f.tau[1], tu, ctx.K, ctx.N);
    Complex num = t1u * t2 - t1 * t2u;
    Complex den = pow(q, f.base.thI) * t1u * t2 - pow(q, Complex(1L) - f.base.thI) * t1 * t2u;
    if (abs(den) < Real::from_string("1e-60"))
        throw singular_error("z_from_tau_thm: denominator vanished");
    return num / den;
}

Complex z_from_tau_conj(const TauFamily& f, const Complex& t, const QContext& ctx) {
    const Complex& q = f.tau[0].ctx().q;
    Complex tu = t / q;
    Complex t5u = tau_at(f.tau[4], tu, ctx.K, ctx.N), t6 = tau_at(f.tau[5], t, ctx.K, ctx.N);
    Complex t7u = tau_at(f.tau[6], tu, ctx.K, ctx.N), t8 = tau_at(f.tau[7], t, ctx.K, ctx.N);
    Complex den = t5u * t6;
    if (abs(den) < Real::from_string("1e-60"))
        throw singular_error("z_from_tau_conj: tau5_ tau6 vanished");
    return -pow(q, f.base.tht - f.base.th1 - 1L) * t * t7u * t8 / den;
}

Complex w_from_tau(const TauTheorem32Family& f, const Complex& t, const QContext& ctx) {
    const QContext& tctx = f.tau[0].ctx();
    const Complex& q = tctx.q;
    Complex t1 = tau_at(f.tau[0], t, ctx.K, ctx.N), t2 = tau_at(f.tau[1], t, ctx.K, ctx.N);
    if (abs(t1) < Real::from_string("1e-60")) throw singular_error("w_from_tau: tau1 vanished");
    Complex pref = (Complex(1L) - pow(q, Complex(1L) - f.base.thI * 2L)) / q;
    Complex gratio = gamma_q(f.base.thI * 2L, tctx) / gamma_q(Complex(2L) - f.base.thI * 2L, tctx);
    return pref * gratio * t2 / t1;
}

const std::vector<std::string>& bilinear_names() {
    static const std::vector<std::string> names = {
        "bilin-1", "bilin-2", "bilin-3", "bilin-4", "bilin-5",
        "bilin-6", "bilin-7", "bilin-8", "fourier-comparison"};
    return names;
}

std::vector<Real> bilinear_residuals(const TauFamily& f, const Complex& t, const QContext& ctx) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    const Complex& q = f.tau[0].ctx().q;
    const ThetaParams& b = f.base;
    const long K = ctx.K, N = ctx.N;
    Complex tu = t / q, to = q * t;

    // tau_i at t, t/q (underline), qt (overline); 1-based helpers
    auto at = [&](int i, const Complex& tt) { return tau_at(f.tau[static_cast<size_t>(i - 1)], tt, K, N); };
    Complex T1 = at(1, t), T2 = at(2, t), T3 = at(3, t), T4 = at(4, t), T5 = at(5, t),
            T6 = at(6, t), T7 = at(7, t), T8 = at(8, t);
    Complex T1u = at(1, tu), T2u = at(2, tu), T3u = at(3, tu), T4u = at(4, tu), T5u = at(5, tu),
            T7u = at(7, tu);
    Complex T6o = at(6, to), T8o = at(8, to);

    auto resid = [](std::initializer_list<Complex> terms) {
        Complex sum(0L);
        Real scale(0L);
        for (const Complex& v : terms) {
            sum += v;
            scale = max(scale, abs(v));
        }
        if (scale.is_zero()) return Real(0L);
        return abs(sum) / scale;
    };

    Complex q2t1 = pow(q, b.th1 * 2L), q2tt = pow(q, b.tht * 2L);
    std::vector<Real> out;
    // 1: tau1 tau2 - q^{-2th1} t tau3 tau4 - (1 - q^{-2th1} t) tau5 tau6
    out.push_back(resid({T1 * T2, -t / q2t1 * T3 * T4, -(Complex(1L) - t / q2t1) * T5 * T6}));
    // 2: tau1 tau2 - t tau3 tau4 - (1 - q^{-2tht} t) tau5_ tau6^
    out.push_back(resid({T1 * T2, -t * T3 * T4, -(Complex(1L) - t / q2tt) * T5u * T6o}));
    // 3: tau1 tau2 - tau3 tau4 + (1 - q^{-2th1} t) q^{2tht} tau7_ tau8^
    out.push_back(resid({T1 * T2, -T3 * T4, (Complex(1L) - t / q2t1) * q2tt * T7u * T8o}));
    // 4: tau1 tau2 - q^{2tht} tau3 tau4 + (1 - q^{-2tht} t) q^{2tht} tau7 tau8
    out.push_back(resid({T1 * T2, -q2tt * T3 * T4, (Complex(1L) - t / q2tt) * q2tt * T7 * T8}));
    // 5: tau5_ tau6 + q^{-th1-thI+tht-1/2} t tau7_ tau8 - tau1_ tau2
    Complex e5 = pow(q, -b.th1 - b.thI + b.tht - Complex(Real::from_string("0.5")));
    out.push_back(resid({T5u * T6, e5 * t * T7u * T8, -T1u * T2}));
    // 6: tau5_ tau6 + q^{-th1+thI+tht-1/2} t tau7_ tau8 - tau1 tau2_
    Complex e6 = pow(q, -b.th1 + b.thI + b.tht - Complex(Real::from_string("0.5")));
    out.push_back(resid({T5u * T6, e6 * t * T7u * T8, -T1 * T2u}));
    // 7: tau5_ tau6 + q^{th0+2tht} tau7_ tau8 - q^{tht} tau3_ tau4
    out.push_back(resid({T5u * T6, pow(q, b.th0 + b.tht * 2L) * T7u * T8,
                         -pow(q, b.tht) * T3u * T4}));
    // 8: tau5_ tau6 + q^{-th0+2tht} tau7_ tau8 - q^{tht} tau3 tau4_
    out.push_back(resid({T5u * T6, pow(q, -b.th0 + b.tht * 2L) * T7u * T8,
                         -pow(q, b.tht) * T3 * T4u}));
    // Fourier-comparison relation:
    // tau1_ tau2 - tau1 tau2_ =
    //   (q^{1/2+thI} - q^{1/2-thI})/(q^{-th0} - q^{th0}) q^{-th1-1} t (tau3_ tau4 - tau3 tau4_)
    Complex half(Real::from_string("0.5"));
    Complex coef = (pow(q, half + b.thI) - pow(q, half - b.thI)) /
                   (pow(q, -b.th0) - pow(q, b.th0)) * pow(q, -b.th1 - 1L) * t;
    out.push_back(resid({T1u * T2, -T1 * T2u, -coef * T3u * T4, coef * T3 * T4u}));
    return out;
}

QPviResiduals qpvi_residual(const Complex& y, const Complex& z, const Complex& ybar,
                            const Complex& zbar, const Complex& t, const QPviParams& p) {
    auto rel = [](const Complex& lhs, const Complex& rhs) {
        Real scale = max(abs(lhs), abs(rhs));
        if (scale.is_zero()) return Real(0L);
        return abs(lhs - rhs) / scale;
    };
    QPviResiduals r;
    Complex lhs1 = y * ybar / (p.a3 * p.a4);
    Complex rhs1 = (zbar - t * p.b1) * (zbar - t * p.b2) / ((zbar - p.b3) * (zbar - p.b4));
    r.r1 = rel(lhs1, rhs1);
    Complex tbar = t / p.a3; // a3 = q^{-1}, so this is qt
    Complex rhs1_alt = (zbar - tbar * p.b1) * (zbar - tbar * p.b2) /
                       ((zbar - p.b3) * (zbar - p.b4));
    r.r1_alt = rel(lhs1, rhs1_alt);
    Complex lhs2 = z * zbar / (p.b3 * p.b4);
    Complex rhs2 = (y - t * p.a1) * (y - t * p.a2) / ((y - p.a3) * (y - p.a4));
    r.r2 = rel(lhs2, rhs2);
    return r;
}

} // namespace qptau
