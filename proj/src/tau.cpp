#include "qptau/tau.hpp"

namespace qptau {

namespace {

// symbols: 0 th0, 1 tht, 2 th1, 3 thI, 4 sigma
enum Sym { S_TH0 = 0, S_THT, S_TH1, S_THI, S_SIG };

std::vector<Complex> sym_values(const ThetaParams& p) {
    return {p.th0, p.tht, p.th1, p.thI, p.sigma};
}

// m = 2 block spec whose sum coefficients are the Z[sigma+n, t] t-weights.
BlockSpecX z_spec(long n, long cap) {
    BlockSpecX xs;
    xs.theta = {ParamExpr::sym(S_THT), ParamExpr::sym(S_TH1)};
    xs.sigma = {ParamExpr::sym(S_TH0), ParamExpr::sym(S_SIG, 2 * n), ParamExpr::sym(S_THI)};
    xs.weight_cap = cap;
    return xs;
}

bool near_int(const Complex& z, const Real& eps) {
    return abs(z.im) < eps && int_dist(z.re) < eps;
}

} // namespace

Complex c_structure(const Complex& th1, const Complex& tht, const Complex& thI,
                    const Complex& th0, const Complex& sigma, const QContext& ctx) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    Real eps = Real::from_string("1e-8");
    for (int e : {1, -1}) {
        Complex d = Complex(1L) + sigma * (2L * e);
        if (near_nonpositive_integer(d, eps))
            throw pole_error("c_structure: Barnes denominator argument 1" +
                             std::string(e > 0 ? "+" : "-") + "2*sigma is at a pole");
    }
    Complex num(1L);
    for (int e : {1, -1})
        for (int e2 : {1, -1}) {
            num *= barnes_g_q(Complex(1L) + thI * e - th1 + sigma * e2, ctx);
            num *= barnes_g_q(Complex(1L) + sigma * e - tht + th0 * e2, ctx);
        }
    return num / (barnes_g_q(Complex(1L) + sigma * 2L, ctx) *
                  barnes_g_q(Complex(1L) - sigma * 2L, ctx));
}

Complex z_instanton(const Complex& th1, const Complex& tht, const Complex& thI,
                    const Complex& th0, const Complex& sigma, const Complex& t,
                    const QContext& ctx) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    ThetaParams p{th0, tht, th1, thI, sigma, Complex(1L)};
    BlockWorkspace ws(ctx, sym_values(p));
    BlockSum s = block_sum(z_spec(0, ctx.K), ws);
    Complex total(0L);
    for (const auto& [w, c] : s.coeffs) total += c * pow_int(t, w[0]);
    return total;
}

void guard_tau_resonances(const ThetaParams& p, const QContext& ctx, const Real& margin) {
    // Z denominators and the C denominators both vanish when 2 sigma drifts
    // onto an integer (any n in the window reaches it).
    Complex two_sigma = p.sigma * 2L;
    if (near_int(two_sigma, margin))
        throw resonance_error("tau parameters resonant: 2*sigma within " + margin.str(3) +
                              " of an integer");
}

TauEvaluator::TauEvaluator(ThetaParams p, const QContext& ctx, long k_table, long n_table)
    : p_(std::move(p)), ctx_(ctx), ktab_(k_table < 0 ? ctx.K : k_table),
      ntab_(n_table < 0 ? ctx.N : n_table) {
    Real::PrecGuard guard(ctx_.mantissa_bits);
    if (ktab_ < ctx_.K || ntab_ < ctx_.N)
        throw domain_error("TauEvaluator: table sizes must cover the context caps");
    guard_tau_resonances(p_, ctx_, Real::from_string("0.02"));
    BlockWorkspace ws(ctx_, sym_values(p_));
    cvals_.reserve(static_cast<size_t>(2 * ntab_ + 1));
    zcoef_.reserve(static_cast<size_t>(2 * ntab_ + 1));
    for (long n = -ntab_; n <= ntab_; ++n) {
        Complex sn = p_.sigma + Complex(Real(n));
        cvals_.push_back(c_structure(p_.th1, p_.tht, p_.thI, p_.th0, sn, ctx_));
        BlockSum s = block_sum(z_spec(n, ktab_), ws);
        std::vector<Complex> z(static_cast<size_t>(ktab_) + 1);
        for (const auto& [w, c] : s.coeffs) z[static_cast<size_t>(w[0])] = c;
        zcoef_.push_back(std::move(z));
    }
}

TauValue TauEvaluator::eval(const Complex& t, long K, long N) const {
    Real::PrecGuard guard(ctx_.mantissa_bits);
    if (K > ktab_ || N > ntab_)
        throw domain_error("TauEvaluator::eval: caps exceed the precomputed tables");
    Complex total(0L);
    Real boundary(0L);
    Real tail_abs(0L);
    for (long n = -N; n <= N; ++n) {
        const size_t in = static_cast<size_t>(n + ntab_);
        Complex sn = p_.sigma + Complex(Real(n));
        Complex expo = sn * sn - p_.tht * p_.tht - p_.th0 * p_.th0;
        Complex pref = pow_int(p_.s, n) * pow(t, expo) * cvals_[in];
        Complex z(0L);
        for (long w = 0; w <= K; ++w) z += zcoef_[in][static_cast<size_t>(w)] * pow_int(t, w);
        Complex term = pref * z;
        total += term;
        if (n == -N || n == N) boundary = max(boundary, abs(term));
        tail_abs += abs(pref) * abs(zcoef_[in][static_cast<size_t>(K)]) * pow(abs(t), K + 1);
    }
    // allow for mild coefficient growth past the cap: geometric majorant in 2|t|
    Real two_t = abs(t) * 2L;
    if (two_t < Real(1L)) tail_abs /= (Real(1L) - two_t);
    Real scale = abs(total);
    TauValue v{total, Real(0L), Real(0L)};
    if (!scale.is_zero()) {
        v.boundary_frac = boundary / scale;
        v.series_tail = tail_abs / scale;
    }
    return v;
}

TauFamily tau_family(const ThetaParams& base, const QContext& ctx, long k_table, long n_table) {
    const Complex h(Real::from_string("0.5"));
    TauFamily f;
    f.base = base;
    f.tau.reserve(8);
    f.tau.emplace_back(base.shifted(0L, 0L, 0L, h, 0L), ctx, k_table, n_table);   // tau1
    f.tau.emplace_back(base.shifted(0L, 0L, 0L, -h, 0L), ctx, k_table, n_table);  // tau2
    f.tau.emplace_back(base.shifted(h, 0L, 0L, 0L, h), ctx, k_table, n_table);    // tau3
    f.tau.emplace_back(base.shifted(-h, 0L, 0L, 0L, -h), ctx, k_table, n_table);  // tau4
    f.tau.emplace_back(base.shifted(0L, 0L, -h, 0L, 0L), ctx, k_table, n_table);  // tau5
    f.tau.emplace_back(base.shifted(0L, 0L, h, 0L, 0L), ctx, k_table, n_table);   // tau6
    f.tau.emplace_back(base.shifted(0L, -h, 0L, 0L, h), ctx, k_table, n_table);   // tau7
    f.tau.emplace_back(base.shifted(0L, h, 0L, 0L, -h), ctx, k_table, n_table);   // tau8
    return f;
}

TauTheorem32Family tau_theorem32_family(const ThetaParams& base, const QContext& ctx,
                                        long k_table, long n_table) {
    const Complex h(Real::from_string("0.5"));
    TauTheorem32Family f;
    f.base = base;
    f.tau.reserve(4);
    f.tau.emplace_back(base, ctx, k_table, n_table);                                       // tau1
    f.tau.emplace_back(base.shifted(0L, 0L, 0L, Complex(-1L), 0L), ctx, k_table, n_table); // tau2
    f.tau.emplace_back(base.shifted(h, 0L, 0L, -h, h), ctx, k_table, n_table);             // tau3
    f.tau.emplace_back(base.shifted(-h, 0L, 0L, -h, -h), ctx, k_table, n_table);           // tau4
    return f;
}

} // namespace qptau
