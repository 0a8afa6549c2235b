#pragma once

#include "qptau/blocks.hpp"

#include <array>

namespace qptau {

// Parameter tuple of the tau function: local exponents, the Fourier
// parameter sigma, and the Fourier conjugate s.
struct ThetaParams {
    Complex th0, tht, th1, thI, sigma, s;

    ThetaParams shifted(const Complex& d0, const Complex& dt, const Complex& d1,
                        const Complex& dI, const Complex& dsig) const {
        ThetaParams p = *this;
        p.th0 = p.th0 + d0;
        p.tht = p.tht + dt;
        p.th1 = p.th1 + d1;
        p.thI = p.thI + dI;
        p.sigma = p.sigma + dsig;
        return p;
    }
};

// C[sigma]: the Barnes-quotient structure constant.
Complex c_structure(const Complex& th1, const Complex& tht, const Complex& thI,
                    const Complex& th0, const Complex& sigma, const QContext& ctx);

// Z[sigma, t]: the instanton sum truncated at |lambda| <= ctx.K.
Complex z_instanton(const Complex& th1, const Complex& tht, const Complex& thI,
                    const Complex& th0, const Complex& sigma, const Complex& t,
                    const QContext& ctx);

// Value of a truncated tau sum together with its truncation diagnostics.
struct TauValue {
    Complex value;
    Real boundary_frac; // largest |n = +-N| term over |value|
    Real series_tail;   // geometric-majorant estimate of the dropped t-weights over |value|

    // Combined estimate: dropped weights plus the window boundary.
    Real tail_estimate() const { return series_tail + boundary_frac; }
    bool under_converged(const Real& tol) const { return tail_estimate() > tol; }
};

// Evaluator for tau[th1 tht; thI th0 | s, sigma, t]: precomputes, for each n
// in the Fourier window, C[sigma+n] and the t-weight coefficients of
// Z[sigma+n, t] up to weight k_table, and then evaluates at any t (and any
// caps K <= k_table, N <= n_table) without recomputing partition sums.
class TauEvaluator {
public:
    TauEvaluator(ThetaParams p, const QContext& ctx, long k_table = -1, long n_table = -1);

    TauValue eval(const Complex& t) const { return eval(t, ctx_.K, ctx_.N); }
    TauValue eval(const Complex& t, long K, long N) const;

    const ThetaParams& params() const { return p_; }
    const QContext& ctx() const { return ctx_; }
    long k_table() const { return ktab_; }
    long n_table() const { return ntab_; }

private:
    ThetaParams p_;
    QContext ctx_;
    long ktab_, ntab_;
    std::vector<Complex> cvals_;              // C[sigma+n], n = -ntab..ntab
    std::vector<std::vector<Complex>> zcoef_; // z_w(sigma+n)
};

// The eight tau functions of the bilinear system. Shifts relative to the
// base parameters:
//   tau1: thI+1/2          tau2: thI-1/2
//   tau3: th0+1/2, sig+1/2 tau4: th0-1/2, sig-1/2
//   tau5: th1-1/2          tau6: th1+1/2
//   tau7: tht-1/2, sig+1/2 tau8: tht+1/2, sig-1/2
struct TauFamily {
    std::vector<TauEvaluator> tau; // tau[0] .. tau[7] = tau_1 .. tau_8
    ThetaParams base;
};
TauFamily tau_family(const ThetaParams& base, const QContext& ctx, long k_table = -1,
                     long n_table = -1);

// The four tau functions of the tau-ratio theorem (distinct family, kept
// under its own name; theta_inf convention unshifted):
//   tau1: base             tau2: thI-1
//   tau3: thI-1/2, th0+1/2, sig+1/2   tau4: thI-1/2, th0-1/2, sig-1/2
struct TauTheorem32Family {
    std::vector<TauEvaluator> tau; // tau[0] .. tau[3]
    ThetaParams base;
};
TauTheorem32Family tau_theorem32_family(const ThetaParams& base, const QContext& ctx,
                                        long k_table = -1, long n_table = -1);

// Rejects parameter sets whose Barnes/Nekrasov denominators come within
// `margin` of a pole anywhere in the Fourier window.
void guard_tau_resonances(const ThetaParams& p, const QContext& ctx,
                          const Real& margin);

} // namespace qptau
