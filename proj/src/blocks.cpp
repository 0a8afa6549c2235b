#include "qptau/blocks.hpp"

#include <algorithm>
#include <functional>

namespace qptau {

namespace {

const int kSigns[2] = {+1, -1};

Real guard_eps() { return Real::from_string("1e-8"); }

// theta(z) vanishes exactly on the integers; reject arguments too close.
void guard_theta_arg(const Complex& z, const char* what) {
    if (abs(z.im) < guard_eps() && int_dist(z.re) < guard_eps())
        throw resonance_error(std::string("theta denominator near zero: ") + what);
}

} // namespace

// ---------------------------------------------------------------- Matrix2

Matrix2 Matrix2::inverse() const {
    Complex d = det();
    if (d.is_zero()) throw singular_error("Matrix2: singular matrix");
    Matrix2 r;
    r.e[0][0] = e[1][1] / d;
    r.e[0][1] = -e[0][1] / d;
    r.e[1][0] = -e[1][0] / d;
    r.e[1][1] = e[0][0] / d;
    return r;
}

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    Matrix2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.e[i][j] = a.e[i][0] * b.e[0][j] + a.e[i][1] * b.e[1][j];
    return r;
}
Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
    Matrix2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.e[i][j] = a.e[i][j] - b.e[i][j];
    return r;
}
Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
    Matrix2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.e[i][j] = a.e[i][j] + b.e[i][j];
    return r;
}
Matrix2 operator*(const Matrix2& a, const Complex& s) {
    Matrix2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.e[i][j] = a.e[i][j] * s;
    return r;
}

Real Matrix2::max_abs() const {
    Real m(0L);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m = max(m, abs(e[i][j]));
    return m;
}

Real rel_residual(const Matrix2& a, const Matrix2& b) {
    Real scale = max(a.max_abs(), b.max_abs());
    if (scale.is_zero()) return Real(0L);
    return (a - b).max_abs() / scale;
}

// ---------------------------------------------------------- BlockWorkspace

BlockWorkspace::BlockWorkspace(const QContext& ctx, std::vector<Complex> sym_values)
    : ctx_(ctx), sp_(ctx, std::move(sym_values)) {}

Complex BlockWorkspace::gq(const ParamExpr& arg) {
    auto key = std::make_pair(arg.c, arg.half);
    auto it = gq_cache_.find(key);
    if (it != gq_cache_.end()) return it->second;
    Complex v = barnes_g_q(sp_.value(arg), ctx_);
    gq_cache_.emplace(key, v);
    return v;
}

// ------------------------------------------------------------ vertex norm

Complex vertex_norm(const ParamExpr& theta_e, const ParamExpr& s_out, const ParamExpr& s_in,
                    bool regularized, BlockWorkspace& ws) {
    const ParamExpr d1 = s_out.scaled(2).plus_half(2);    // 1 + 2 s_out
    const ParamExpr d2 = (-s_in.scaled(2)).plus_half(2);  // 1 - 2 s_in
    for (const ParamExpr* d : {&d1, &d2}) {
        auto k = d->exact_int();
        if ((k && *k <= 0) || near_nonpositive_integer(ws.sp().value(*d), guard_eps()))
            throw pole_error("vertex normalization: Barnes denominator argument " +
                             ws.sp().value(*d).str(6) + " is at a pole");
    }
    int dropped = 0;
    Complex num(1L);
    for (int e : kSigns)
        for (int e2 : kSigns) {
            ParamExpr a = ParamExpr::constant(2) + s_out.scaled(e) - theta_e - s_in.scaled(e2);
            if (auto k = a.exact_int(); k && *k <= 0) {
                if (!regularized) return Complex(0L);
                if (*k == 0 && dropped == 0) {
                    ++dropped;
                    continue;
                }
                throw resonance_error("vertex normalization: unexpected extra vanishing factor");
            }
            num *= ws.gq(a);
        }
    if (regularized && dropped != 1)
        throw resonance_error("vertex normalization: regularized vertex has no vanishing factor");
    return num / (ws.gq(d1) * ws.gq(d2));
}

Complex normalization_N(const Complex& theta3, const Complex& theta2, const Complex& theta1,
                        const QContext& ctx) {
    BlockWorkspace ws(ctx, {theta3, theta2, theta1});
    return vertex_norm(ParamExpr::sym(1), ParamExpr::sym(0), ParamExpr::sym(2), false, ws);
}

// -------------------------------------------------------------- block sum

namespace {

struct PairList {
    struct Entry {
        int a, b;
        long w;
    };
    std::vector<Entry> items;

    PairList(const PartitionTable& tab, long cap) {
        for (int a = 0; a < tab.count(); ++a) {
            if (tab.parts[static_cast<size_t>(a)].w > cap) break;
            for (int b = 0; b < tab.count(); ++b) {
                long w = tab.parts[static_cast<size_t>(a)].w + tab.parts[static_cast<size_t>(b)].w;
                if (tab.parts[static_cast<size_t>(b)].w > cap - tab.parts[static_cast<size_t>(a)].w) break;
                items.push_back({a, b, w});
            }
        }
    }
};

// Product over the four sign pairs of N_{cur_e, prev_e'}(q^{E(e,e')}).
struct VertexArgs {
    NekArg<Complex> arg[2][2];

    VertexArgs(const ParamExpr& th, const ParamExpr& s_out, const ParamExpr& s_in,
               const QSymPowers& sp) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                ParamExpr e = s_out.scaled(kSigns[i]) - th - s_in.scaled(kSigns[j]);
                arg[i][j] = sp.arg(e);
            }
    }
};

NekVal<Complex> vertex_product(const PartInfo& cur_p, const PartInfo& cur_m, const PartInfo& prev_p,
                               const PartInfo& prev_m, const VertexArgs& va,
                               const IntPow<Complex>& qp) {
    const PartInfo* cur[2] = {&cur_p, &cur_m};
    const PartInfo* prev[2] = {&prev_p, &prev_m};
    Complex acc(1L);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            auto v = nekrasov_factor<Complex>(*cur[i], *prev[j], va.arg[i][j], qp);
            if (v.zero) return {Complex(0L), true};
            acc *= v.value;
        }
    return {acc, false};
}

void guard_internal_sigma(const ParamExpr& sig, const QSymPowers& sp, long cap) {
    Complex v2 = sp.value(sig.scaled(2));
    if (abs(v2.im) < guard_eps() && int_dist(v2.re) < guard_eps() &&
        abs(v2.re) <= Real(2 * cap + 2))
        throw resonance_error("internal weight 2*sigma_p = " + v2.str(6) +
                              " is resonant (too close to an integer)");
}

} // namespace

BlockSum block_sum(const BlockSpecX& spec, BlockWorkspace& ws) {
    const int m = spec.m();
    if (static_cast<int>(spec.sigma.size()) != m + 1)
        throw domain_error("block_sum: sigma list must have m+1 entries");
    BlockSum out;
    if (m <= 1) {
        out.coeffs[{}] = Complex(1L);
        return out;
    }
    const long cap = spec.weight_cap;
    const int slots = m - 1;
    const QSymPowers& sp = ws.sp();
    const IntPow<Complex>& qp = sp.qint();
    for (int p = 1; p <= slots; ++p) guard_internal_sigma(spec.sigma[static_cast<size_t>(p)], sp, cap);

    PartitionTable tab(static_cast<int>(cap));
    PairList pairs(tab, cap);
    const size_t np = pairs.items.size();
    const PartInfo& vac = tab.parts[0];

    // per-slot self-denominators and boundary numerators
    std::vector<std::vector<Complex>> contrib(static_cast<size_t>(slots),
                                              std::vector<Complex>(np));
    std::vector<std::vector<char>> dead(static_cast<size_t>(slots), std::vector<char>(np, 0));

    for (int s = 1; s <= slots; ++s) {
        VertexArgs self(ParamExpr(), spec.sigma[static_cast<size_t>(s)],
                        spec.sigma[static_cast<size_t>(s)], sp);
        // boundary vertex products folded into the slot contribution
        std::optional<VertexArgs> left, right;
        if (s == 1) left.emplace(spec.theta[0], spec.sigma[1], spec.sigma[0], sp);
        if (s == slots)
            right.emplace(spec.theta[static_cast<size_t>(m - 1)], spec.sigma[static_cast<size_t>(m)],
                          spec.sigma[static_cast<size_t>(m - 1)], sp);
        for (size_t ip = 0; ip < np; ++ip) {
            const PartInfo& pp = tab.parts[static_cast<size_t>(pairs.items[ip].a)];
            const PartInfo& pm = tab.parts[static_cast<size_t>(pairs.items[ip].b)];
            auto den = vertex_product(pp, pm, pp, pm, self, qp);
            if (den.zero)
                throw resonance_error("block denominator N_{la,la'}(q^{(e-e')sigma}) vanished");
            Complex val = inverse(den.value);
            if (left) {
                auto v = vertex_product(pp, pm, vac, vac, *left, qp);
                if (v.zero) {
                    dead[static_cast<size_t>(s - 1)][ip] = 1;
                    continue;
                }
                val *= v.value;
            }
            if (right) {
                auto v = vertex_product(vac, vac, pp, pm, *right, qp);
                if (v.zero) {
                    dead[static_cast<size_t>(s - 1)][ip] = 1;
                    continue;
                }
                val *= v.value;
            }
            contrib[static_cast<size_t>(s - 1)][ip] = val;
        }
    }

    // cross vertices p = 2..m-1 join slot p-1 (prev) and slot p (cur)
    std::vector<VertexArgs> cross;
    for (int p = 2; p <= m - 1; ++p)
        cross.emplace_back(spec.theta[static_cast<size_t>(p - 1)], spec.sigma[static_cast<size_t>(p)],
                           spec.sigma[static_cast<size_t>(p - 1)], sp);

    std::vector<int> choice(static_cast<size_t>(slots));
    std::vector<int> wvec(static_cast<size_t>(slots));
    std::function<void(int, long, const Complex&)> rec = [&](int s, long used, const Complex& acc) {
        for (size_t ip = 0; ip < np; ++ip) {
            const auto& en = pairs.items[ip];
            if (en.w > cap - used) continue;
            if (dead[static_cast<size_t>(s - 1)][ip]) continue;
            Complex val = acc * contrib[static_cast<size_t>(s - 1)][ip];
            if (s >= 2) {
                const auto& prev = pairs.items[static_cast<size_t>(choice[static_cast<size_t>(s - 2)])];
                auto v = vertex_product(tab.parts[static_cast<size_t>(en.a)],
                                        tab.parts[static_cast<size_t>(en.b)],
                                        tab.parts[static_cast<size_t>(prev.a)],
                                        tab.parts[static_cast<size_t>(prev.b)],
                                        cross[static_cast<size_t>(s - 2)], qp);
                if (v.zero) continue;
                val *= v.value;
            }
            choice[static_cast<size_t>(s - 1)] = static_cast<int>(ip);
            wvec[static_cast<size_t>(s - 1)] = static_cast<int>(en.w);
            if (s == slots) {
                auto [it, fresh] = out.coeffs.try_emplace(wvec, val);
                if (!fresh) it->second += val;
            } else {
                rec(s + 1, used + en.w, val);
            }
        }
    };
    rec(1, 0, Complex(1L));
    return out;
}

Complex block_eval(const BlockSpecX& spec, BlockWorkspace& ws) {
    const int m = spec.m();
    const QSymPowers& sp = ws.sp();
    const QContext& ctx = ws.ctx();
    Complex pref(1L);
    for (int p = 1; p <= m; ++p) {
        bool reg = std::find(spec.regularized.begin(), spec.regularized.end(), p) !=
                   spec.regularized.end();
        const ParamExpr& th = spec.theta[static_cast<size_t>(p - 1)];
        const ParamExpr& so = spec.sigma[static_cast<size_t>(p)];
        const ParamExpr& si = spec.sigma[static_cast<size_t>(p - 1)];
        pref *= vertex_norm(th, so, si, reg, ws);
        Complex thv = sp.value(th), sov = sp.value(so), siv = sp.value(si);
        pref *= pow(ctx.q, thv * sov * sov * 2L);
        pref *= pow(spec.x[static_cast<size_t>(p - 1)], sov * sov - thv * thv - siv * siv);
    }
    BlockSum s = block_sum(spec, ws);
    std::vector<Complex> r;
    for (int p = 1; p <= m - 1; ++p)
        r.push_back(sp.qpow(spec.theta[static_cast<size_t>(p - 1)].scaled(2)) *
                    spec.x[static_cast<size_t>(p - 1)] / spec.x[static_cast<size_t>(p)]);
    Complex sum(0L);
    for (const auto& [w, c] : s.coeffs) {
        Complex t = c;
        for (size_t i = 0; i < r.size(); ++i) t *= pow_int(r[i], w[i]);
        sum += t;
    }
    return pref * sum;
}

Complex conformal_block(const BlockSpec& spec, const QContext& ctx) {
    const int m = static_cast<int>(spec.theta.size());
    if (m < 1) throw domain_error("conformal_block: need at least one insertion");
    if (static_cast<int>(spec.sigma.size()) != m - 1)
        throw domain_error("conformal_block: sigma list must have m-1 entries");
    if (static_cast<int>(spec.x.size()) != m)
        throw domain_error("conformal_block: x list must have m entries");
    std::vector<Complex> vals;
    BlockSpecX xs;
    for (int p = 0; p < m; ++p) {
        xs.theta.push_back(ParamExpr::sym(p));
        vals.push_back(spec.theta[static_cast<size_t>(p)]);
    }
    // sigma symbols m..2m
    xs.sigma.push_back(ParamExpr::sym(m));
    vals.push_back(spec.theta0);
    for (int j = 1; j <= m - 1; ++j) {
        xs.sigma.push_back(ParamExpr::sym(m + j));
        vals.push_back(spec.sigma[static_cast<size_t>(j - 1)]);
    }
    xs.sigma.push_back(ParamExpr::sym(2 * m));
    vals.push_back(spec.theta_top);
    xs.x = spec.x;
    xs.weight_cap = ctx.K;
    BlockWorkspace ws(ctx, vals);
    return block_eval(xs, ws);
}

// --------------------------------------------------- degenerate 4pt blocks

Complex degenerate_block_4pt(DegenerateSide side, int sign, const Complex& thI,
                             const Complex& th1, const Complex& th0, const Complex& x1,
                             const Complex& x2, const QContext& ctx, long terms) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    Complex nfac(1L);
    for (int mu : kSigns)
        for (int mu2 : kSigns) {
            Complex arg = Complex(Real::from_string("0.5")) + thI * mu - th1 + th0 * mu2;
            nfac *= barnes_g_q(arg, ctx);
        }
    nfac = nfac / (barnes_g_q(Complex(1L) + thI * 2L, ctx) * barnes_g_q(Complex(1L) - th0 * 2L, ctx));
    Complex Nfull = pow(ctx.q, th1 * thI * thI * 2L) * pow(x1, Complex(Real::from_string("-0.25"))) *
                    pow(x2, thI * thI - th1 * th1 - th0 * th0) * nfac;
    const Complex half(Real::from_string("0.5"));
    const Complex quarter(Real::from_string("0.25"));
    if (side == DegenerateSide::Left) {
        Complex ratio = pow(ctx.q, th1 * 2L) * x2 / x1;
        if (!(abs(ratio) < Real(1L)))
            throw domain_error("degenerate_block_4pt: |q^{2 th1} x2/x1| must be < 1");
        Complex F = heine_F(half + thI * sign - th1 + th0, half + thI * sign - th1 - th0,
                            Complex(1L) + thI * (2L * sign), ratio, ctx, terms);
        return Nfull * pow(ctx.q, thI * thI) * pow(ratio, thI * sign + quarter) * F;
    }
    Complex ratio = ctx.q * x1 / x2;
    if (!(abs(ratio) < Real(1L)))
        throw domain_error("degenerate_block_4pt: |q x1/x2| must be < 1");
    Complex F = heine_F(half + thI - th1 + th0 * sign, half - thI - th1 + th0 * sign,
                        Complex(1L) + th0 * (2L * sign), ratio, ctx, terms);
    return Nfull * pow(ctx.q, th0 * th0) * pow(ratio, th0 * sign + quarter) * F;
}

Complex degenerate_block_4pt_series(DegenerateSide side, int sign, const Complex& thI,
                                    const Complex& th1, const Complex& th0, const Complex& x1,
                                    const Complex& x2, const QContext& ctx, long weight_cap) {
    // symbols: 0 = thI, 1 = th1, 2 = th0
    BlockSpecX xs;
    xs.weight_cap = weight_cap;
    if (side == DegenerateSide::Left) {
        xs.theta = {ParamExpr::sym(1), ParamExpr::constant(1)};
        xs.sigma = {ParamExpr::sym(2), ParamExpr::sym(0, sign), ParamExpr::sym(0)};
        xs.x = {x2, x1};
        xs.regularized = {2};
    } else {
        xs.theta = {ParamExpr::constant(1), ParamExpr::sym(1)};
        xs.sigma = {ParamExpr::sym(2), ParamExpr::sym(2, sign), ParamExpr::sym(0)};
        xs.x = {x1, x2};
        xs.regularized = {1};
    }
    BlockWorkspace ws(ctx, {thI, th1, th0});
    return block_eval(xs, ws);
}

// ---------------------------------------------------------- braiding matrix

Matrix2 braiding_matrix(const Complex& th1, const Complex& thI, const Complex& th0,
                        const Complex& x, const QContext& ctx) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    Complex u = log(x) / log(ctx.q);
    const Complex half(Real::from_string("0.5"));
    guard_theta_arg(th0 * 2L, "2 theta0");
    guard_theta_arg(th1 * 2L + u, "2 theta1 + u");
    Complex den = theta(th0 * 2L, ctx) * theta(th1 * 2L + u, ctx);
    Matrix2 B;
    for (int e : kSigns)
        for (int e2 : kSigns) {
            Complex a = half + thI * e2 + th1;
            Complex v = theta(a - th0 * e, ctx) * theta(a + th0 * e + u, ctx) / den;
            B.at(e, e2) = v * (-e);
        }
    return B;
}

// ------------------------------------------------- Prop A.1 X/Y functions

namespace {

// symbols for the braiding-identity kernels: 0 = T (theta_inf slot),
// 1 = theta_1, 2 = sigma
ParamExpr pe3(int cT, int c1, int cS, long half) {
    ParamExpr e;
    e.c[0] = static_cast<int16_t>(cT);
    e.c[1] = static_cast<int16_t>(c1);
    e.c[2] = static_cast<int16_t>(cS);
    e.half = half;
    return e;
}

// X-hat core with explicit ratio powers r^{|eta|+|B|}:
//   N_{A,B}(q^{2T}) N_{B,la}(q^{-T-1/2-th1-s}) N_{B,mu}(q^{-T-1/2-th1+s})
//   * sum_eta r^{|eta|+|B|} N_{A,eta}(q^{-1}) N_{eta,la}(q^{T+1/2-th1-s})
//     N_{eta,mu}(q^{T+1/2-th1+s}) / (N_{eta,B}(q^{2T+1}) N_{eta,eta}(1)).
Complex x_core(const PartInfo& La, const PartInfo& Mu, const PartInfo& A, const PartInfo& B,
               const Complex& ratio, const QSymPowers& sp, const std::vector<PartInfo>& etas) {
    const IntPow<Complex>& qp = sp.qint();
    auto N = [&](const PartInfo& a, const PartInfo& b, const ParamExpr& e) {
        return nekrasov_factor<Complex>(a, b, sp.arg(e), qp);
    };
    auto p1 = N(A, B, pe3(2, 0, 0, 0));
    auto p2 = N(B, La, pe3(-1, -1, -1, -1));
    auto p3 = N(B, Mu, pe3(-1, -1, 1, -1));
    if (p1.zero || p2.zero || p3.zero) return Complex(0L);
    Complex sum(0L);
    for (const PartInfo& eta : etas) {
        auto a1 = N(A, eta, ParamExpr::constant(-2));
        if (a1.zero) continue;
        auto a2 = N(eta, La, pe3(1, -1, -1, 1));
        auto a3 = N(eta, Mu, pe3(1, -1, 1, 1));
        if (a2.zero || a3.zero) continue;
        auto d1 = N(eta, B, pe3(2, 0, 0, 2));
        auto d2 = N(eta, eta, ParamExpr::constant(0));
        if (d1.zero || d2.zero)
            throw resonance_error("x_func: eta-sum denominator vanished");
        sum += pow_int(ratio, eta.w + B.w) * a1.value * a2.value * a3.value /
               (d1.value * d2.value);
    }
    return p1.value * p2.value * p3.value * sum;
}

// Y-hat core with ratio powers r^{|la|+|eta|}:
//   N_{la,mu}(q^{2s}) N_{A,la}(q^{T-th1-s-1/2}) N_{B,la}(q^{-T-th1-s-1/2})
//   * sum_eta r^{|la|+|eta|} N_{eta,mu}(q^{-1}) N_{A,eta}(q^{T-th1+s+1/2})
//     N_{B,eta}(q^{-T-th1+s+1/2}) / (N_{la,eta}(q^{2s+1}) N_{eta,eta}(1)).
Complex y_core(const PartInfo& La, const PartInfo& Mu, const PartInfo& A, const PartInfo& B,
               const Complex& ratio, const QSymPowers& sp, const std::vector<PartInfo>& etas) {
    const IntPow<Complex>& qp = sp.qint();
    auto N = [&](const PartInfo& a, const PartInfo& b, const ParamExpr& e) {
        return nekrasov_factor<Complex>(a, b, sp.arg(e), qp);
    };
    auto p1 = N(La, Mu, pe3(0, 0, 2, 0));
    auto p2 = N(A, La, pe3(1, -1, -1, -1));
    auto p3 = N(B, La, pe3(-1, -1, -1, -1));
    if (p1.zero || p2.zero || p3.zero) return Complex(0L);
    Complex sum(0L);
    for (const PartInfo& eta : etas) {
        auto a1 = N(eta, Mu, ParamExpr::constant(-2));
        if (a1.zero) continue;
        auto a2 = N(A, eta, pe3(1, -1, 1, 1));
        auto a3 = N(B, eta, pe3(-1, -1, 1, 1));
        if (a2.zero || a3.zero) continue;
        auto d1 = N(La, eta, pe3(0, 0, 2, 2));
        auto d2 = N(eta, eta, ParamExpr::constant(0));
        if (d1.zero || d2.zero)
            throw resonance_error("y_func: eta-sum denominator vanished");
        sum += pow_int(ratio, La.w + eta.w) * a1.value * a2.value * a3.value /
               (d1.value * d2.value);
    }
    return p1.value * p2.value * p3.value * sum;
}

std::vector<PartInfo> eta_list(long keta) {
    std::vector<PartInfo> v;
    for (auto& p : enumerate_upto(static_cast<int>(keta))) v.emplace_back(std::move(p));
    return v;
}

} // namespace

Complex x_func(int eps, const Partition& la, const Partition& mu, const Partition& al,
               const Partition& be, const BraidPoint& pt, const QContext& ctx) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    Complex T = eps > 0 ? pt.thI : -pt.thI;
    QSymPowers sp(ctx, {T, pt.th1, pt.sigma});
    PartInfo La(la), Mu(mu);
    PartInfo A = eps > 0 ? PartInfo(al) : PartInfo(be);
    PartInfo B = eps > 0 ? PartInfo(be) : PartInfo(al);
    Complex ratio = sp.qpow(pe3(0, 2, 0, 0)) * pt.x2 / pt.x1;
    Complex core = x_core(La, Mu, A, B, ratio, sp, eta_list(pt.keta));
    return pow_int(inverse(pt.x2), La.w + Mu.w) * pow_int(ctx.q * pt.x1, A.w + B.w) * core;
}

Complex y_func(int eps, const Partition& la, const Partition& mu, const Partition& al,
               const Partition& be, const BraidPoint& pt, const QContext& ctx) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    Complex S = eps > 0 ? pt.sigma : -pt.sigma;
    QSymPowers sp(ctx, {pt.thI, pt.th1, S});
    PartInfo La = eps > 0 ? PartInfo(la) : PartInfo(mu);
    PartInfo Mu = eps > 0 ? PartInfo(mu) : PartInfo(la);
    PartInfo A(al), B(be);
    Complex ratio = ctx.q * pt.x1 / pt.x2;
    Complex core = y_core(La, Mu, A, B, ratio, sp, eta_list(pt.keta));
    return pow_int(inverse(pt.x1), La.w + Mu.w) *
           pow_int(sp.qpow(pe3(0, 2, 0, 0)) * pt.x2, A.w + B.w) * core;
}

namespace {

// Gamma_q prefactors of the braiding identity.
Complex gam(const Complex& z, const QContext& ctx) { return gamma_q(z, ctx); }

Complex lhs_side(int eps_prime, const Partition& la, const Partition& mu, const Partition& al,
                 const Partition& be, const BraidPoint& pt, const QContext& ctx) {
    const Complex half(Real::from_string("0.5"));
    const Complex quarter(Real::from_string("0.25"));
    Complex ratio = pow(ctx.q, pt.th1 * 2L) * pt.x2 / pt.x1;
    Complex g = gam(half + pt.thI * eps_prime - pt.th1 + pt.sigma, ctx) *
                gam(half + pt.thI * eps_prime - pt.th1 - pt.sigma, ctx) /
                gam(Complex(1L) + pt.thI * (2L * eps_prime), ctx);
    return pow(ctx.q, pt.thI * pt.thI) * pow(ratio, pt.thI * eps_prime + quarter) * g *
           x_func(eps_prime, la, mu, al, be, pt, ctx);
}

Complex rhs_side(int eps_prime, const Partition& la, const Partition& mu, const Partition& al,
                 const Partition& be, const BraidPoint& pt, const QContext& ctx) {
    const Complex half(Real::from_string("0.5"));
    const Complex quarter(Real::from_string("0.25"));
    Matrix2 B = braiding_matrix(pt.th1, pt.thI, pt.sigma, pt.x2 / pt.x1, ctx);
    Complex common = pow(ctx.q, pt.th1 * pt.th1 - pt.th1 * half) * pow(pt.x2 / pt.x1, pt.th1);
    Complex total(0L);
    for (int eps : kSigns) {
        Complex g = gam(half + pt.thI - pt.th1 + pt.sigma * eps, ctx) *
                    gam(half - pt.thI - pt.th1 + pt.sigma * eps, ctx) /
                    gam(Complex(1L) + pt.sigma * (2L * eps), ctx);
        Complex y = y_func(eps, la, mu, al, be, pt, ctx);
        total += pow(ctx.q, pt.sigma * pt.sigma) *
                 pow(ctx.q * pt.x1 / pt.x2, pt.sigma * eps + quarter) * g * y *
                 B.at(eps, eps_prime) * common;
    }
    return total;
}

} // namespace

Real braiding_identity_residual(const Partition& la, const Partition& mu, const Partition& al,
                                const Partition& be, const BraidPoint& pt, const QContext& ctx,
                                int eps_prime) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    Real worst(0L);
    for (int ep : kSigns) {
        if (eps_prime != 0 && ep != eps_prime) continue;
        Complex l = lhs_side(ep, la, mu, al, be, pt, ctx);
        Complex r = rhs_side(ep, la, mu, al, be, pt, ctx);
        worst = max(worst, rel_diff(l, r));
    }
    return worst;
}

// -------------------------------------------------- Lemma A.6 reduction

namespace {

// The boundary-strip prefactor C of the reduction identities:
//   prod_{j<=al_ell} (1-q^{j+T-th1-s-1/2}) / (1-q^{-leg_al(ell,j)+j+T-th1-s-3/2})
// * prod_{i<ell} (1-q^{ell-i+arm_al(i,1)+T-th1-s+1/2}),
// times the mirror with beta and -T, times q^{ell-|al|-|be|} x2^{-ell}.
Complex reduction_C(const PartInfo& Al, const PartInfo& Be, int ell, const BraidPoint& pt,
                    const QContext& ctx) {
    Complex base_p = pow(ctx.q, pt.thI - pt.th1 - pt.sigma);
    Complex base_m = pow(ctx.q, -pt.thI - pt.th1 - pt.sigma);
    IntPow<Complex> qp(ctx.q);
    Complex qh = sqrt(ctx.q);
    auto strip = [&](const PartInfo& P, const Complex& b) {
        Complex acc(1L);
        for (int j = 1; j <= P.part(ell); ++j) {
            Complex num = Complex(1L) - qp(j) * b / qh;
            Complex den = Complex(1L) - qp(-P.leg(ell, j) + j - 1) * b / qh;
            acc *= num / den;
        }
        for (int i = 1; i <= ell - 1; ++i)
            acc *= Complex(1L) - qp(ell - i + P.arm(i, 1)) * b * qh;
        return acc;
    };
    Complex c = strip(Al, base_p) * strip(Be, base_m);
    return c * qp(ell - Al.w - Be.w) * pow_int(pt.x2, -ell);
}

} // namespace

ReductionResiduals check_lemma_reduction(const Partition& la, const Partition& mu,
                                         const Partition& al, const Partition& be,
                                         const BraidPoint& pt, const QContext& ctx) {
    if (la.empty()) throw domain_error("check_lemma_reduction: la must be nonempty");
    Real::PrecGuard guard(ctx.mantissa_bits);
    const int ell = la.length();
    PartInfo Al(al), Be(be);
    Complex C = reduction_C(Al, Be, ell, pt, ctx);

    const Complex half(Real::from_string("0.5"));
    Partition lb = la.bar();
    BraidPoint shifted = pt;
    shifted.th1 = pt.th1 + half;
    shifted.sigma = pt.sigma + half;
    BraidPoint shifted_qx = shifted;
    shifted_qx.x1 = ctx.q * pt.x1;

    auto qpowc = [&](const Complex& e) { return pow(ctx.q, e); };

    ReductionResiduals out{Real(0L), Real(0L), Real(0L), Real(0L)};
    // X^eps identities
    for (int eps : kSigns) {
        Complex lhs = x_func(eps, la, mu, al, be, pt, ctx);
        Complex f0 = x_func(eps, lb, mu, al, be, shifted, ctx);
        Complex f1 = x_func(eps, lb, mu, al, be, shifted_qx, ctx);
        Complex tfac = qpowc(Complex(-ell) - pt.thI * eps + pt.th1 + pt.sigma + half);
        Complex rhs = C * (Complex(1L) - qpowc(-pt.thI * eps - pt.th1 - pt.sigma - half)) *
                      qpowc(pt.thI * eps - pt.th1 - pt.sigma - half) * (tfac * f1 - f0);
        Real r = rel_diff(lhs, rhs);
        (eps > 0 ? out.x_plus : out.x_minus) = r;
    }
    // Y^+ identity
    {
        Complex lhs = y_func(+1, la, mu, al, be, pt, ctx);
        Complex f0 = y_func(+1, lb, mu, al, be, shifted, ctx);
        Complex f1 = y_func(+1, lb, mu, al, be, shifted_qx, ctx);
        Complex num = (Complex(1L) - qpowc(pt.thI - pt.th1 - pt.sigma - half)) *
                      (Complex(1L) - qpowc(-pt.thI - pt.th1 - pt.sigma - half));
        Complex den = Complex(1L) - qpowc(pt.sigma * 2L + 1L);
        Complex rhs = C * num / den * (f0 - qpowc(Complex(-ell) + pt.sigma * 2L + 1L) * f1);
        out.y_plus = rel_diff(lhs, rhs);
    }
    // Y^- identity. The scalar here carries an extra q^{-1} relative to the
    // X/Y^+ cases; it comes out of the weight bookkeeping |eta| - |eta-bar| =
    // ell - 1 on the minus side.
    {
        Complex lhs = y_func(-1, la, mu, al, be, pt, ctx);
        Complex f0 = y_func(-1, lb, mu, al, be, shifted, ctx);
        Complex f1 = y_func(-1, lb, mu, al, be, shifted_qx, ctx);
        Complex rhs = C * (Complex(1L) - qpowc(-pt.sigma * 2L)) * inverse(ctx.q) *
                      (pt.x2 / pt.x1) * (f0 - qpowc(Complex(-ell)) * f1);
        out.y_minus = rel_diff(lhs, rhs);
    }
    return out;
}

Real ReductionResiduals::max() const {
    return qptau::max(qptau::max(x_plus, x_minus), qptau::max(y_plus, y_minus));
}

// -------------------------------------------------- 6-point slice check

Real sixpoint_slice_residual(int a, int b, int rho, const Complex& thI, const Complex& th1,
                             const Complex& sigma, const Complex& tht, const Complex& th0,
                             const Complex& thd2, const Complex& thd3, const Complex& x1,
                             const Complex& x2, const QContext& ctx, long keta) {
    Real::PrecGuard guard(ctx.mantissa_bits);
    // symbols: 0 tht, 1 th1, 2 sigma, 3 thI, 4 thd2, 5 thd3, 6 th0
    QSymPowers sp(ctx, {tht, th1, sigma, thI, thd2, thd3, th0});
    const IntPow<Complex>& qp = sp.qint();
    const ParamExpr e_tht = ParamExpr::sym(0), e_th1 = ParamExpr::sym(1),
                    e_sig = ParamExpr::sym(2), e_thI = ParamExpr::sym(3),
                    e_thd2 = ParamExpr::sym(4), e_thd3 = ParamExpr::sym(5),
                    e_th0 = ParamExpr::sym(6);
    const ParamExpr e_half = ParamExpr::constant(1);
    const ParamExpr sig2 = e_thI.plus_half(rho); // internal label next to the 1/2 insertion

    // vertex argument sets, p = 1..4
    VertexArgs v1(e_tht, e_sig, e_th0, sp);
    VertexArgs v2(e_th1, sig2, e_sig, sp);
    VertexArgs v3(e_half, e_thI, sig2, sp);
    VertexArgs v4(e_thd2, e_thd3, e_thI, sp);
    VertexArgs d1(ParamExpr(), e_sig, e_sig, sp);
    VertexArgs d2(ParamExpr(), sig2, sig2, sp);
    VertexArgs d3(ParamExpr(), e_thI, e_thI, sp);

    PartitionTable tab(static_cast<int>(keta) + std::max(a, b));
    const PartInfo& vac = tab.parts[0];
    auto pairs_of_weight = [&](long w) {
        std::vector<std::pair<int, int>> v;
        for (int i = 0; i < tab.count(); ++i)
            for (int j = 0; j < tab.count(); ++j)
                if (tab.parts[static_cast<size_t>(i)].w + tab.parts[static_cast<size_t>(j)].w == w)
                    v.emplace_back(i, j);
        return v;
    };
    auto slot1 = pairs_of_weight(a);
    auto slot3 = pairs_of_weight(b);

    Complex ratio2 = sp.qpow(e_th1.scaled(2)) * x2 / x1; // r_2 = q^{2 th1} x2 / x1

    // literal 6-point slice
    Complex lhs(0L);
    for (auto [i3a, i3b] : slot3) {
        const PartInfo &A3 = tab.parts[static_cast<size_t>(i3a)], &B3 = tab.parts[static_cast<size_t>(i3b)];
        auto num4 = vertex_product(vac, vac, A3, B3, v4, qp);
        if (num4.zero) continue;
        auto den3 = vertex_product(A3, B3, A3, B3, d3, qp);
        Complex c3 = num4.value / den3.value;
        for (int i2a = 0; i2a < tab.count(); ++i2a)
            for (int i2b = 0; i2b < tab.count(); ++i2b) {
                const PartInfo &A2 = tab.parts[static_cast<size_t>(i2a)],
                               &B2 = tab.parts[static_cast<size_t>(i2b)];
                if (A2.w + B2.w > keta + b) continue;
                auto num3 = vertex_product(A3, B3, A2, B2, v3, qp);
                if (num3.zero) continue;
                auto den2 = vertex_product(A2, B2, A2, B2, d2, qp);
                Complex c2 = num3.value / den2.value * pow_int(ratio2, A2.w + B2.w);
                for (auto [i1a, i1b] : slot1) {
                    const PartInfo &A1 = tab.parts[static_cast<size_t>(i1a)],
                                   &B1 = tab.parts[static_cast<size_t>(i1b)];
                    auto num1 = vertex_product(A1, B1, vac, vac, v1, qp);
                    if (num1.zero) continue;
                    auto num2 = vertex_product(A2, B2, A1, B1, v2, qp);
                    if (num2.zero) continue;
                    auto den1v = vertex_product(A1, B1, A1, B1, d1, qp);
                    lhs += c3 * c2 * num1.value * num2.value / den1v.value;
                }
            }
    }

    // X-function reconstruction of the same slice: X-hat with (A,B) =
    // (alpha,beta) for rho=+, (beta,alpha) with negated thI for rho=-.
    auto etas = eta_list(keta);
    QSymPowers spx(ctx, {rho > 0 ? thI : -thI, th1, sigma});
    Complex rhs(0L);
    for (auto [i1a, i1b] : slot1) {
        const PartInfo &La = tab.parts[static_cast<size_t>(i1a)], &Mu = tab.parts[static_cast<size_t>(i1b)];
        auto num1 = vertex_product(La, Mu, vac, vac, v1, qp);
        if (num1.zero) continue;
        auto den1v = vertex_product(La, Mu, La, Mu, d1, qp);
        Complex p1v = num1.value / den1v.value;
        for (auto [i3a, i3b] : slot3) {
            const PartInfo &A3 = tab.parts[static_cast<size_t>(i3a)],
                           &B3 = tab.parts[static_cast<size_t>(i3b)];
            auto num4 = vertex_product(vac, vac, A3, B3, v4, qp);
            if (num4.zero) continue;
            auto den3 = vertex_product(A3, B3, A3, B3, d3, qp);
            Complex p4v = num4.value / den3.value;
            const PartInfo& A = rho > 0 ? A3 : B3;
            const PartInfo& B = rho > 0 ? B3 : A3;
            Complex xh = x_core(La, Mu, A, B, ratio2, spx, etas);
            rhs += p1v * p4v * xh;
        }
    }
    return rel_diff(lhs, rhs);
}

} // namespace qptau
