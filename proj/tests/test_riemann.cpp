#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qptau/riemann.hpp"

using namespace qptau;

namespace {

Complex C(const char* s) { return Complex(Real::from_string(s)); }
Real tol(const char* s) { return Real::from_string(s); }

// Annulus-friendly point: R1 < R2 needs t between roughly q and 1.
ThetaParams annulus_params() {
    ThetaParams p;
    p.th0 = C("0.147");
    p.tht = C("0.11");
    p.th1 = C("0.13");
    p.thI = C("0.163");
    p.sigma = C("0.1825");
    p.s = C("0.9");
    return p;
}

struct Setup {
    QContext ctx;
    RiemannProblem rp;
    Complex t;
    Setup() : ctx(QContext::from_decimal("0.02", 128, 256, 6, 3)),
              rp(annulus_params(), ctx, 6, 3), t(C("0.12")) {}
};

Complex on_circle(const Real& r, double deg) {
    Real phi = Real::pi() * Real::from_string(std::to_string(deg / 180.0));
    return {r * cos(phi), r * sin(phi)};
}

} // namespace

TEST_CASE("domain radii and validity") {
    Setup s;
    auto d = s.rp.domain(s.t);
    CHECK(d.valid());
    // against directly computed moduli at q = 0.02, th1 = 0.13, tht = 0.11
    Real q2t1 = abs(pow(s.ctx.q, C("-0.26")));
    CHECK(abs(d.R1 - q2t1) < tol("1e-20")); // R1 = |q^{-2 th1}| here
    Real lo = abs(s.t * q2t1);
    CHECK(abs(d.R2 - lo / abs(s.ctx.q)) < tol("1e-20"));
    // shrinking t far enough destroys the annulus
    auto bad = s.rp.domain(C("1e-4"));
    CHECK(!bad.valid());
}

TEST_CASE("region enforcement") {
    Setup s;
    auto d = s.rp.domain(s.t);
    Complex inside = on_circle(d.R1 * Real::from_string("0.5"), 22.5);
    CHECK_THROWS_AS(s.rp.Y(YKind::Inf, inside, s.t, 6, 3), region_error);
    CHECK_THROWS_AS(s.rp.Y(YKind::ZeroT, inside, s.t, 6, 3), region_error);
    Complex outside = on_circle(d.R2 * Real::from_string("2.0"), 22.5);
    CHECK_THROWS_AS(s.rp.Y(YKind::Zero, outside, s.t, 6, 3), region_error);
    CHECK_THROWS_AS(s.rp.Y(YKind::ZeroT, outside, s.t, 6, 3), region_error);
    // the same x is fine for the series whose true region covers it
    Complex mid = on_circle(d.mid(), 22.5);
    CHECK(s.rp.Y(YKind::Inf, mid, s.t, 6, 3).max_abs() > Real(0L));
}

TEST_CASE("Y^inf normalization and column exponents") {
    Setup s;
    // far out, Y^inf diag(x^{thI}, x^{-thI}) approaches the identity
    Complex x1 = on_circle(Real::from_string("300"), 22.5);
    Matrix2 y = s.rp.Y(YKind::Inf, x1, s.t, 6, 3);
    Complex thI = annulus_params().thI;
    CHECK(abs(y.e[0][0] * pow(x1, thI) - Complex(1L)) < tol("0.02"));
    CHECK(abs(y.e[1][1] * pow(x1, -thI) - Complex(1L)) < tol("0.02"));
    // off-diagonal entries decay one power faster: slope test between radii
    Complex x2 = on_circle(Real::from_string("600"), 22.5);
    Matrix2 y2 = s.rp.Y(YKind::Inf, x2, s.t, 6, 3);
    Real l2 = log(Real::from_string("2"));
    Real slope_pm = (log(abs(y2.e[0][1])) - log(abs(y.e[0][1]))) / l2;
    Real slope_mp = (log(abs(y2.e[1][0])) - log(abs(y.e[1][0]))) / l2;
    CHECK(abs(slope_pm - (thI.re - 1L)) < tol("0.05"));
    CHECK(abs(slope_mp - (-thI.re - 1L)) < tol("0.05"));
}

TEST_CASE("Y^0 column exponents at small x") {
    Setup s;
    auto p = annulus_params();
    Complex xa = on_circle(Real::from_string("0.04"), 22.5);
    Complex xb = on_circle(Real::from_string("0.08"), 22.5);
    Matrix2 ya = s.rp.Y(YKind::Zero, xa, s.t, 6, 3);
    Matrix2 yb = s.rp.Y(YKind::Zero, xb, s.t, 6, 3);
    Real l2 = log(Real::from_string("2"));
    // columns carry x^{+-th0 - tht - th1}
    Real col_p = (p.th0 - p.tht - p.th1).re;
    Real col_m = (-p.th0 - p.tht - p.th1).re;
    CHECK(abs((log(abs(yb.e[0][0])) - log(abs(ya.e[0][0]))) / l2 - col_p) < tol("0.05"));
    CHECK(abs((log(abs(yb.e[1][1])) - log(abs(ya.e[1][1]))) / l2 - col_m) < tol("0.05"));
}

TEST_CASE("k-factor ratios") {
    Setup s;
    auto p = annulus_params();
    for (int eps : {1, -1}) {
        auto k = s.rp.k_factors(eps, s.t, 6, 3);
        Complex r1 = k.k_0t / k.k_inf;
        CHECK(rel_diff(r1, pow(s.ctx.q, p.th1 * p.th1 + p.th1 / 2L)) < tol("1e-25"));
        Complex r2 = k.k_0 / k.k_0t;
        Complex expect = pow(s.ctx.q, p.tht * p.tht + p.tht / 2L + p.th1 * p.tht * 2L) *
                         pow(s.t, -p.tht);
        CHECK(rel_diff(r2, expect) < tol("1e-25"));
    }
}

TEST_CASE("connection formulas on the mid-annulus circle") {
    Setup s;
    auto d = s.rp.domain(s.t);
    for (double deg : {22.5, 112.5, 247.5}) {
        Complex x = on_circle(d.mid(), deg);
        CHECK(s.rp.connection_residual(1, x, s.t, 6, 3) < tol("1e-4"));
        CHECK(s.rp.connection_residual(2, x, s.t, 6, 3) < tol("1e-4"));
    }
}

TEST_CASE("det Y^inf closed form and zero dip") {
    Setup s;
    auto d = s.rp.domain(s.t);
    Complex x = on_circle(d.mid(), 22.5);
    CHECK(s.rp.det_yinf_residual(x, s.t, 6, 3) < tol("1e-4"));
    // x -> infinity: both sides -> 1
    Complex far = on_circle(Real::from_string("2000"), 22.5);
    Matrix2 yfar = s.rp.Y(YKind::Inf, far, s.t, 6, 3);
    CHECK(abs(yfar.det() - Complex(1L)) < tol("1e-2"));
    // |det| dips near the first determinant zero x = q^{-2 th1}
    Complex near_zero = Complex(abs(pow(s.ctx.q, C("-0.26"))) * Real::from_string("1.05"));
    Complex generic = on_circle(d.mid(), 22.5);
    Matrix2 yn = s.rp.Y(YKind::Inf, near_zero, s.t, 6, 3);
    Matrix2 yg = s.rp.Y(YKind::Inf, generic, s.t, 6, 3);
    CHECK(abs(yn.det()) < abs(yg.det()) * Real::from_string("0.3"));
}

TEST_CASE("A matrix: rationality, A2 limit, det, cross-kind consistency") {
    Setup s;
    auto p = annulus_params();
    auto d = s.rp.domain(s.t);
    // A from the x = 0 series at mid-annulus: quadratic fit predicts a 4th point
    CHECK(s.rp.A_fit_residual(YKind::Zero, s.t, d.mid(), 6, 3) < tol("1e-3"));
    auto m = s.rp.reconstruct_A(YKind::Zero, s.t, d.mid(), 6, 3, false);
    // A2 limit, read off the large-radius fit where x^2 dominates
    Real rbig = d.R1 / abs(s.ctx.q) * Real::from_string("3");
    auto mi = s.rp.reconstruct_A(YKind::Inf, s.t, rbig, 6, 3, false);
    CHECK(rel_diff(mi.num[2].e[0][0], pow(s.ctx.q, -p.thI)) < tol("1e-3"));
    CHECK(rel_diff(mi.num[2].e[1][1], pow(s.ctx.q, p.thI)) < tol("1e-3"));
    CHECK(abs(mi.num[2].e[0][1]) < abs(mi.num[2].e[0][0]) * tol("1e-3"));
    // det A at a sample point
    Complex x = on_circle(d.mid(), 67.5);
    Matrix2 a = s.rp.A_from(YKind::Zero, x, s.t, 6, 3);
    CHECK(s.rp.det_A_residual(a, x, s.t) < tol("1e-3"));
    // the same A from the Y^inf series at large radius
    for (int k = 0; k < 3; ++k) CHECK(rel_residual(m.num[static_cast<size_t>(k)], mi.num[static_cast<size_t>(k)]) < tol("1e-2"));
    // and from the 0t series inside its true annulus (extended region); the
    // sampling needs q x inside the annulus as well
    Real lo2 = abs(s.t * pow(s.ctx.q, C("-1.26")));
    Real hi2 = abs(pow(s.ctx.q, C("-1.26")));
    Real rmid = sqrt(lo2 * hi2);
    auto mt = s.rp.reconstruct_A(YKind::ZeroT, s.t, rmid, 6, 3, false, true, 1.0);
    for (int k = 0; k < 3; ++k) CHECK(rel_residual(m.num[static_cast<size_t>(k)], mt.num[static_cast<size_t>(k)]) < tol("1e-2"));
}

TEST_CASE("B matrix: linear structure with unit leading coefficient") {
    Setup s;
    auto d = s.rp.domain(s.t);
    auto mb = s.rp.reconstruct_B(YKind::Inf, s.t, d.mid(), 6, 3);
    CHECK(abs(mb.num[1].e[0][0] - Complex(1L)) < tol("1e-4"));
    CHECK(abs(mb.num[1].e[1][1] - Complex(1L)) < tol("1e-4"));
    CHECK(abs(mb.num[1].e[0][1]) < tol("1e-4"));
    CHECK(abs(mb.num[1].e[1][0]) < tol("1e-4"));
    // two-point reconstruction predicts a third sample
    Complex x3 = on_circle(d.mid(), 157.5);
    Matrix2 direct = s.rp.B_from(YKind::Inf, x3, s.t, 6, 3);
    CHECK(rel_residual(mb.eval(x3), direct) < tol("1e-4"));
}

TEST_CASE("y, z, w from the linear problem match the tau formulas") {
    auto ctx = QContext::from_decimal("0.3", 128, 256, 6, 3);
    ThetaParams p;
    p.th0 = C("0.23");
    p.tht = C("0.17");
    p.th1 = C("0.31");
    p.thI = C("0.79");
    p.sigma = C("0.137");
    p.s = C("0.85");
    RiemannProblem rp(p, ctx, 8, 3);
    Complex t = C("0.02");
    auto lin = rp.yzw_from_A(t, Real::from_string("160"), 8, 3);
    auto thm = tau_theorem32_family(p, ctx, 8, 3);
    auto c8 = ctx.with_K(8);
    Complex y_tau = y_from_tau(thm, t, c8);
    Complex z_tau = z_from_tau_thm(thm, t, c8);
    Complex w_tau = w_from_tau(thm, t, c8);
    CHECK(rel_diff(lin.y, y_tau) < tol("1e-8"));
    CHECK(rel_diff(lin.z, z_tau) < tol("1e-6"));
    CHECK(rel_diff(lin.w, w_tau) < tol("1e-10"));
}
