#include "qptau/riemann.hpp"

#include <algorithm>

namespace qptau {

namespace {

// symbols shared by every Riemann-problem block: 0 th0, 1 tht, 2 th1,
// 3 thI, 4 sigma
enum Sym { R_TH0 = 0, R_THT, R_TH1, R_THI, R_SIG };

std::vector<Complex> sym_values(const ThetaParams& p) {
    return {p.th0, p.tht, p.th1, p.thI, p.sigma};
}

BlockSpecX y_spec(YKind kind, int eps, int eps2, long n, long cap) {
    BlockSpecX xs;
    xs.weight_cap = cap;
    switch (kind) {
        case YKind::Inf:
            xs.theta = {ParamExpr::sym(R_THT), ParamExpr::sym(R_TH1), ParamExpr::constant(1)};
            xs.sigma = {ParamExpr::sym(R_TH0), ParamExpr::sym(R_SIG, 2 * n),
                        ParamExpr::sym(R_THI, -(eps - eps2)), ParamExpr::sym(R_THI, -eps)};
            xs.regularized = {3};
            break;
        case YKind::ZeroT:
            xs.theta = {ParamExpr::sym(R_THT), ParamExpr::constant(1), ParamExpr::sym(R_TH1)};
            xs.sigma = {ParamExpr::sym(R_TH0), ParamExpr::sym(R_SIG, 2 * n),
                        ParamExpr::sym(R_SIG, 2 * n + eps2), ParamExpr::sym(R_THI, -eps)};
            xs.regularized = {2};
            break;
        case YKind::Zero:
            xs.theta = {ParamExpr::constant(1), ParamExpr::sym(R_THT), ParamExpr::sym(R_TH1)};
            xs.sigma = {ParamExpr::sym(R_TH0), ParamExpr::sym(R_TH0, eps2),
                        ParamExpr::sym(R_SIG, 2 * n + 1), ParamExpr::sym(R_THI, -eps)};
            xs.regularized = {1};
            break;
    }
    return xs;
}

} // namespace

std::vector<Complex> poly_fit(const std::vector<Complex>& xs, const std::vector<Complex>& vs) {
    const size_t n = xs.size();
    if (vs.size() != n || n == 0) throw domain_error("poly_fit: bad input sizes");
    // Gaussian elimination on the Vandermonde system
    std::vector<std::vector<Complex>> m(n, std::vector<Complex>(n + 1));
    for (size_t i = 0; i < n; ++i) {
        Complex p(1L);
        for (size_t j = 0; j < n; ++j) {
            m[i][j] = p;
            p *= xs[i];
        }
        m[i][n] = vs[i];
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        Real best = abs(m[col][col]);
        for (size_t r = col + 1; r < n; ++r)
            if (abs(m[r][col]) > best) {
                best = abs(m[r][col]);
                piv = r;
            }
        if (best.is_zero()) throw singular_error("poly_fit: singular Vandermonde system");
        std::swap(m[col], m[piv]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            Complex f = m[r][col] / m[col][col];
            for (size_t j = col; j <= n; ++j) m[r][j] -= f * m[col][j];
        }
    }
    std::vector<Complex> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = m[i][n] / m[i][i];
    return out;
}

Complex poly_eval(const std::vector<Complex>& c, const Complex& x) {
    Complex v(0L);
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

Matrix2 RationalMatrix::eval(const Complex& x) const {
    Matrix2 out;
    Complex den(1L);
    for (const Complex& r : den_roots) den *= (x - r);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Complex v(0L);
            for (size_t k = num.size(); k-- > 0;) v = v * x + num[k].e[i][j];
            out.e[i][j] = v / den;
        }
    return out;
}

RiemannProblem::RiemannProblem(ThetaParams p, const QContext& ctx, long k_table, long n_table)
    : p_(std::move(p)), ctx_(ctx), ktab_(k_table < 0 ? ctx.K : k_table),
      ntab_(n_table < 0 ? ctx.N : n_table), tau_(p_, ctx_, ktab_, ntab_) {}

RiemannDomain RiemannProblem::domain(const Complex& t) const {
    Real::PrecGuard guard(ctx_.mantissa_bits);
    Real q2t1 = abs(pow(ctx_.q, -p_.th1 * 2L));
    Real q2tt = abs(pow(ctx_.q, -p_.tht * 2L));
    Real at = abs(t), aq = abs(ctx_.q);
    Real R1 = max(max(Real(1L), q2t1), max(at * q2t1, at * q2t1 * q2tt));
    Real R2 = min(min(Real(1L), q2t1), min(at * q2t1, at * q2t1 * q2tt)) / aq;
    return {R1, R2};
}

void RiemannProblem::check_region(YKind kind, const Complex& x, const Complex& t,
                                  bool extended) const {
    Real ax = abs(x);
    if (!extended) {
        RiemannDomain d = domain(t);
        bool ok = true;
        switch (kind) {
            case YKind::Inf: ok = ax > d.R1; break;
            case YKind::ZeroT: ok = ax > d.R1 && ax < d.R2; break;
            case YKind::Zero: ok = ax < d.R2; break;
        }
        if (!ok)
            throw region_error("Y series evaluated outside its region: |x| = " + ax.str(6) +
                               ", R1 = " + d.R1.str(6) + ", R2 = " + d.R2.str(6));
        return;
    }
    // actual convergence regions of the three series
    Real lower = max(Real(1L), abs(t * pow(ctx_.q, -p_.th1 * 2L)));
    Real mid_lo = abs(t * pow(ctx_.q, -p_.th1 * 2L));
    Real mid_hi = abs(pow(ctx_.q, -p_.th1 * 2L - 1L));
    Real hi = abs(t * pow(ctx_.q, -p_.tht * 2L - p_.th1 * 2L - 1L));
    bool ok = true;
    switch (kind) {
        case YKind::Inf: ok = ax > lower; break;
        case YKind::ZeroT: ok = ax > mid_lo && ax < mid_hi; break;
        case YKind::Zero: ok = ax < hi; break;
    }
    if (!ok) throw region_error("Y series evaluated outside its convergence region");
}

const std::vector<RiemannProblem::Term>& RiemannProblem::terms(YKind kind, int ie, int ie2) const {
    auto& slot = cache_[static_cast<int>(kind)][ie][ie2];
    if (slot) return *slot;
    Real::PrecGuard guard(ctx_.mantissa_bits);
    const int eps = ie == 0 ? 1 : -1;
    const int eps2 = ie2 == 0 ? 1 : -1;
    BlockWorkspace ws(ctx_, sym_values(p_));
    std::vector<Term> terms;
    terms.reserve(static_cast<size_t>(2 * ntab_ + 1));
    for (long n = -ntab_; n <= ntab_; ++n) {
        BlockSpecX xs = y_spec(kind, eps, eps2, n, ktab_);
        Term term;
        term.pref = Complex(1L);
        for (int p = 1; p <= 3; ++p) {
            bool reg = std::find(xs.regularized.begin(), xs.regularized.end(), p) !=
                       xs.regularized.end();
            const ParamExpr& th = xs.theta[static_cast<size_t>(p - 1)];
            const ParamExpr& so = xs.sigma[static_cast<size_t>(p)];
            const ParamExpr& si = xs.sigma[static_cast<size_t>(p - 1)];
            term.pref *= vertex_norm(th, so, si, reg, ws);
            Complex thv = ws.sp().value(th), sov = ws.sp().value(so), siv = ws.sp().value(si);
            term.pref *= pow(ctx_.q, thv * sov * sov * 2L);
            term.exps[static_cast<size_t>(p - 1)] = sov * sov - thv * thv - siv * siv;
        }
        term.coeffs = block_sum(xs, ws).coeffs;
        terms.push_back(std::move(term));
    }
    slot = std::move(terms);
    return *slot;
}

KFactors RiemannProblem::k_factors(int eps, const Complex& t, long K, long N) const {
    Real::PrecGuard guard(ctx_.mantissa_bits);
    // tau-hat: strip the Barnes normalization and the q-power off the tau sum
    Complex tau = tau_.eval(t, K, N).value;
    Complex conv = pow(ctx_.q, (p_.tht + p_.th1) * p_.thI * p_.thI * 2L - p_.tht * p_.th1 * p_.th1 * 2L);
    Complex tau_hat = tau * conv /
                      (barnes_g_q(Complex(1L) + p_.thI * 2L, ctx_) *
                       barnes_g_q(Complex(1L) - p_.th0 * 2L, ctx_));
    // N'(1/2; thI - eps/2, thI)
    BlockWorkspace ws(ctx_, {p_.thI});
    Complex nprime = vertex_norm(ParamExpr::constant(1), ParamExpr::sym(0, -eps),
                                 ParamExpr::sym(0), true, ws);
    Complex half_eps = Complex(Real(eps)) / 2L;
    Complex a = p_.thI - half_eps;
    Complex expo = a * a - p_.thI * (p_.tht + p_.th1) * (2L * eps);
    KFactors k;
    k.k_inf = pow(ctx_.q, expo) * nprime * tau_hat;
    k.k_0t = k.k_inf * pow(ctx_.q, p_.th1 * p_.th1 + p_.th1 / 2L);
    k.k_0 = k.k_0t * pow(ctx_.q, p_.tht * p_.tht + p_.tht / 2L + p_.th1 * p_.tht * 2L) *
            pow(t, -p_.tht);
    return k;
}

Complex RiemannProblem::entry(YKind kind, int eps, int eps2, const Complex& x, const Complex& t,
                              long K, long N) const {
    const std::vector<Term>& tt = terms(kind, Matrix2::idx(eps), Matrix2::idx(eps2));
    // slot values x_1..x_3 for this kind
    Complex cx = pow(ctx_.q, (p_.tht + p_.th1) * 2L) * x;
    std::array<Complex, 3> xs;
    std::array<Complex, 2> ratios; // r_p = q^{2 theta_p} x_p / x_{p+1}
    Complex q2tt = pow(ctx_.q, p_.tht * 2L), q2t1 = pow(ctx_.q, p_.th1 * 2L);
    switch (kind) {
        case YKind::Inf:
            xs = {t, q2tt, cx};
            ratios = {q2tt * xs[0] / xs[1], q2t1 * xs[1] / xs[2]};
            break;
        case YKind::ZeroT:
            xs = {t, cx, q2tt};
            ratios = {q2tt * xs[0] / xs[1], ctx_.q * xs[1] / xs[2]};
            break;
        case YKind::Zero:
            xs = {cx, t, q2tt};
            ratios = {ctx_.q * xs[0] / xs[1], q2tt * xs[1] / xs[2]};
            break;
    }
    Complex total(0L);
    for (long n = -N; n <= N; ++n) {
        const Term& term = tt[static_cast<size_t>(n + ntab_)];
        Complex v = term.pref * pow_int(p_.s, n);
        for (int p = 0; p < 3; ++p) v *= pow(xs[static_cast<size_t>(p)], term.exps[static_cast<size_t>(p)]);
        Complex sum(0L);
        for (const auto& [w, c] : term.coeffs) {
            if (w[0] + w[1] > K) continue;
            sum += c * pow_int(ratios[0], w[0]) * pow_int(ratios[1], w[1]);
        }
        total += v * sum;
    }
    return total;
}

Matrix2 RiemannProblem::Y(YKind kind, const Complex& x, const Complex& t, long K, long N,
                          bool extended) const {
    Real::PrecGuard guard(ctx_.mantissa_bits);
    if (K > ktab_ || N > ntab_)
        throw domain_error("RiemannProblem::Y: caps exceed the precomputed tables");
    check_region(kind, x, t, extended);
    Matrix2 out;
    for (int eps : {1, -1}) {
        KFactors k = k_factors(eps, t, K, N);
        Complex row_pref;
        switch (kind) {
            case YKind::Inf: row_pref = inverse(k.k_inf); break;
            case YKind::ZeroT: row_pref = pow(x, -p_.th1) / k.k_0t; break;
            case YKind::Zero: row_pref = pow(x, -p_.tht - p_.th1) / k.k_0; break;
        }
        for (int eps2 : {1, -1})
            out.at(eps, eps2) = row_pref * entry(kind, eps, eps2, x, t, K, N);
    }
    return out;
}

Matrix2 RiemannProblem::B1(const Complex& x) const {
    const Complex half(Real::from_string("0.5"));
    return braiding_matrix(p_.th1, p_.thI + half, p_.sigma, pow(ctx_.q, -p_.th1 * 2L) / x, ctx_);
}

Matrix2 RiemannProblem::B2(const Complex& x, const Complex& t) const {
    const Complex half(Real::from_string("0.5"));
    Matrix2 b = braiding_matrix(p_.tht, p_.sigma + half, p_.th0,
                                pow(ctx_.q, -p_.tht * 2L - p_.th1 * 2L) * t / x, ctx_);
    // right-multiply by [[0, s], [1, 0]]
    Matrix2 out;
    for (int i = 0; i < 2; ++i) {
        out.e[i][0] = b.e[i][1];
        out.e[i][1] = p_.s * b.e[i][0];
    }
    return out;
}

Real RiemannProblem::connection_residual(int pair, const Complex& x, const Complex& t, long K,
                                         long N) const {
    Real::PrecGuard guard(ctx_.mantissa_bits);
    if (pair == 1) {
        Matrix2 lhs = Y(YKind::Inf, x, t, K, N);
        Matrix2 rhs = Y(YKind::ZeroT, x, t, K, N) * B1(x);
        return rel_residual(lhs, rhs);
    }
    Matrix2 lhs = Y(YKind::ZeroT, x, t, K, N);
    Matrix2 rhs = Y(YKind::Zero, x, t, K, N) * B2(x, t);
    return rel_residual(lhs, rhs);
}

Real RiemannProblem::det_yinf_residual(const Complex& x, const Complex& t, long K, long N) const {
    Real::PrecGuard guard(ctx_.mantissa_bits);
    Complex det = Y(YKind::Inf, x, t, K, N).det();
    Complex q2t1 = pow(ctx_.q, -p_.th1 * 2L);
    Complex q2tt1 = pow(ctx_.q, -p_.tht * 2L - p_.th1 * 2L);
    Complex num = q_pochhammer_inf(q2t1 / x, ctx_).value *
                  q_pochhammer_inf(t * q2tt1 / x, ctx_).value;
    Complex den = q_pochhammer_inf(inverse(x), ctx_).value *
                  q_pochhammer_inf(t * q2t1 / x, ctx_).value;
    return rel_diff(det, num / den);
}

Matrix2 RiemannProblem::A_from(YKind kind, const Complex& x, const Complex& t, long K, long N,
                               bool extended) const {
    Matrix2 yq = Y(kind, ctx_.q * x, t, K, N, extended);
    Matrix2 y = Y(kind, x, t, K, N, extended);
    return yq * y.inverse();
}

Matrix2 RiemannProblem::B_from(YKind kind, const Complex& x, const Complex& t, long K, long N,
                               bool extended) const {
    Matrix2 yq = Y(kind, x, ctx_.q * t, K, N, extended);
    Matrix2 y = Y(kind, x, t, K, N, extended);
    return yq * y.inverse();
}

namespace {

Complex circle_point(const Real& r, int angle_index) {
    Real phi = Real::pi() * Real(1 + 2 * angle_index) / Real(8L);
    return {r * cos(phi), r * sin(phi)};
}

} // namespace

RationalMatrix RiemannProblem::reconstruct_A(YKind kind, const Complex& t, const Real& r, long K,
                                             long N, bool pin_A2, bool extended,
                                             double spread) const {
    Real::PrecGuard guard(ctx_.mantissa_bits);
    Complex root1 = inverse(ctx_.q);
    Complex root2 = t * pow(ctx_.q, -p_.th1 * 2L - 1L);
    // spread radii condition the low-order coefficients much better than a
    // single circle; series valid only on an annulus sample at spread = 1
    const int npts = pin_A2 ? 2 : 3;
    Real rh = r * Real::from_string(std::to_string(spread));
    std::vector<Complex> pts;
    if (pin_A2)
        pts = {circle_point(r, 0), circle_point(rh, 2)};
    else
        pts = {circle_point(r, 0), circle_point(r, 3), circle_point(rh, 1)};
    std::vector<Matrix2> numv;
    for (const Complex& x : pts) {
        Matrix2 a = A_from(kind, x, t, K, N, extended);
        numv.push_back(a * ((x - root1) * (x - root2)));
    }
    Matrix2 A2;
    if (pin_A2) {
        A2.e[0][0] = pow(ctx_.q, -p_.thI);
        A2.e[0][1] = Complex(0L);
        A2.e[1][0] = Complex(0L);
        A2.e[1][1] = pow(ctx_.q, p_.thI);
    }
    RationalMatrix out;
    out.den_roots = {root1, root2};
    out.num.resize(3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            std::vector<Complex> xs, vs;
            for (int k = 0; k < npts; ++k) {
                xs.push_back(pts[static_cast<size_t>(k)]);
                Complex v = numv[static_cast<size_t>(k)].e[i][j];
                if (pin_A2) v -= A2.e[i][j] * pts[static_cast<size_t>(k)] * pts[static_cast<size_t>(k)];
                vs.push_back(v);
            }
            auto c = poly_fit(xs, vs);
            out.num[0].e[i][j] = c[0];
            out.num[1].e[i][j] = c[1];
            out.num[2].e[i][j] = pin_A2 ? A2.e[i][j] : c[2];
        }
    return out;
}

Real RiemannProblem::A_fit_residual(YKind kind, const Complex& t, const Real& r, long K, long N,
                                    bool extended) const {
    RationalMatrix m = reconstruct_A(kind, t, r, K, N, false, extended);
    Complex x4 = circle_point(r / 2L, 5);
    Matrix2 direct = A_from(kind, x4, t, K, N, extended);
    return rel_residual(m.eval(x4), direct);
}

Matrix2 RiemannProblem::B0_at(YKind kind, const Complex& x, const Complex& t, long K, long N,
                              bool extended) const {
    Matrix2 b = B_from(kind, x, t, K, N, extended);
    Complex root = t * pow(ctx_.q, -p_.tht * 2L - p_.th1 * 2L);
    Matrix2 out = b * (x - root);
    out.e[0][0] -= x;
    out.e[1][1] -= x;
    return out;
}

RationalMatrix RiemannProblem::reconstruct_B(YKind kind, const Complex& t, const Real& r, long K,
                                             long N, bool extended) const {
    Real::PrecGuard guard(ctx_.mantissa_bits);
    Complex root = t * pow(ctx_.q, -p_.tht * 2L - p_.th1 * 2L);
    std::vector<Complex> pts = {circle_point(r, 0), circle_point(r, 4)};
    RationalMatrix out;
    out.den_roots = {root};
    out.num.resize(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            std::vector<Complex> xs, vs;
            for (const Complex& x : pts) {
                Matrix2 b = B_from(kind, x, t, K, N, extended);
                xs.push_back(x);
                vs.push_back(b.e[i][j] * (x - root));
            }
            auto c = poly_fit(xs, vs);
            out.num[0].e[i][j] = c[0];
            out.num[1].e[i][j] = c[1];
        }
    return out;
}

Real RiemannProblem::det_A_residual(const Matrix2& A, const Complex& x, const Complex& t) const {
    Complex num = (x - pow(ctx_.q, -p_.th1 * 2L - 1L)) *
                  (x - t * pow(ctx_.q, -p_.tht * 2L - p_.th1 * 2L - 1L));
    Complex den = (x - inverse(ctx_.q)) * (x - t * pow(ctx_.q, -p_.th1 * 2L - 1L));
    return rel_diff(A.det(), num / den);
}

RiemannProblem::LinearData RiemannProblem::yzw_from_A(const Complex& t, const Real& r, long K,
                                                      long N) const {
    Real::PrecGuard guard(ctx_.mantissa_bits);
    RationalMatrix m = reconstruct_A(YKind::Inf, t, r, K, N, false);
    const Complex& c0 = m.num[0].e[0][1];
    const Complex& c1 = m.num[1].e[0][1];
    const Complex& c2 = m.num[2].e[0][1];
    Real scale = max(max(abs(c0), abs(c1) * r), abs(c2) * r * r);
    if (abs(c2) * r * r > scale * Real::from_string("1e-4"))
        throw domain_error("yzw_from_A: (+,-) numerator is not linear in x");
    if (abs(c1) < Real::from_string("1e-60")) throw domain_error("yzw_from_A: degenerate A_{+-}");
    LinearData d;
    d.w = c1 / pow(ctx_.q, p_.thI);
    d.y = -c0 / c1;
    Matrix2 Ay = m.eval(d.y);
    Complex num = d.y - t * pow(ctx_.q, -p_.tht * 2L - p_.th1 * 2L - 1L);
    d.z = num / (ctx_.q * Ay.e[0][0] * (d.y - inverse(ctx_.q)));
    return d;
}

} // namespace qptau
