#pragma once

#include "qptau/qpvi.hpp"

#include <optional>

namespace qptau {

// Annulus bounds of the matching problem.
struct RiemannDomain {
    Real R1, R2;
    bool valid() const { return R1 < R2; }
    Real mid() const { return sqrt(R1 * R2); }
};

enum class YKind { Inf, ZeroT, Zero };

struct KFactors {
    Complex k_inf, k_0t, k_0;
};

// Polynomial helpers used by the rational reconstructions.
std::vector<Complex> poly_fit(const std::vector<Complex>& xs, const std::vector<Complex>& vs);
Complex poly_eval(const std::vector<Complex>& c, const Complex& x);

// Matrix-valued rational function N(x)/d(x) with matrix polynomial
// numerator; produced by the A/B reconstructions.
struct RationalMatrix {
    std::vector<Matrix2> num; // coefficient of x^k at index k
    std::vector<Complex> den_roots;
    Matrix2 eval(const Complex& x) const;
};

// The three matrix solutions Y^inf, Y^0t, Y^0 assembled from Fourier sums of
// 5-point blocks. Weight tables are x- and t-independent and are built
// lazily per (kind, row, column); one instance serves every (x, t) request
// within its table caps.
class RiemannProblem {
public:
    RiemannProblem(ThetaParams p, const QContext& ctx, long k_table = -1, long n_table = -1);

    const ThetaParams& params() const { return p_; }
    const QContext& ctx() const { return ctx_; }
    RiemannDomain domain(const Complex& t) const;

    // Region-checked evaluation. `extended` widens the checks from the
    // stated annuli to the series' actual convergence regions (used only by
    // the cross-kind consistency checks).
    Matrix2 Y(YKind kind, const Complex& x, const Complex& t, long K, long N,
              bool extended = false) const;

    KFactors k_factors(int eps, const Complex& t, long K, long N) const;

    Matrix2 B1(const Complex& x) const;
    Matrix2 B2(const Complex& x, const Complex& t) const;

    // pair 1: Y^inf = Y^0t B1; pair 2: Y^0t = Y^0 B2.
    Real connection_residual(int pair, const Complex& x, const Complex& t, long K, long N) const;

    Real det_yinf_residual(const Complex& x, const Complex& t, long K, long N) const;

    Matrix2 A_from(YKind kind, const Complex& x, const Complex& t, long K, long N,
                   bool extended = false) const;
    Matrix2 B_from(YKind kind, const Complex& x, const Complex& t, long K, long N,
                   bool extended = false) const;

    // Reconstruction of A(x,t) = (A2 x^2 + A1 x + A0)/((x-q^{-1})(x-t q^{-2th1-1}))
    // from samples on a circle of radius r (kind picks the series). With
    // `pin_A2` the quadratic coefficient is fixed to diag(q^{-thI}, q^{thI})
    // and only A1, A0 are fitted (used at small radii where x^2 is tiny).
    // `spread` scales the radius of the extra sample point (1 keeps all
    // samples on one circle; annulus-bound series need that).
    RationalMatrix reconstruct_A(YKind kind, const Complex& t, const Real& r, long K, long N,
                                 bool pin_A2, bool extended = false,
                                 double spread = 0.5) const;
    // Fit residual: reconstruction from 3 points vs a 4th sample.
    Real A_fit_residual(YKind kind, const Complex& t, const Real& r, long K, long N,
                        bool extended = false) const;

    // B(x,t) = (x I + B0(t)) / (x - t q^{-2tht-2th1}); B0 extracted at x.
    Matrix2 B0_at(YKind kind, const Complex& x, const Complex& t, long K, long N,
                  bool extended = false) const;
    RationalMatrix reconstruct_B(YKind kind, const Complex& t, const Real& r, long K, long N,
                                 bool extended = false) const;

    // det A(x,t) against its closed rational form.
    Real det_A_residual(const Matrix2& A, const Complex& x, const Complex& t) const;

    // y, z, w from the reconstructed linear data.
    struct LinearData {
        Complex y, z, w;
    };
    LinearData yzw_from_A(const Complex& t, const Real& r, long K, long N) const;

private:
    struct Term {
        Complex pref;                  // vertex norms and q-powers
        std::array<Complex, 3> exps;   // x_p exponents sigma_p^2-theta_p^2-sigma_{p-1}^2
        std::map<std::vector<int>, Complex> coeffs;
    };
    const std::vector<Term>& terms(YKind kind, int ie, int ie2) const;
    Complex entry(YKind kind, int eps, int eps2, const Complex& x, const Complex& t, long K,
                  long N) const;
    void check_region(YKind kind, const Complex& x, const Complex& t, bool extended) const;

    ThetaParams p_;
    QContext ctx_;
    long ktab_, ntab_;
    TauEvaluator tau_; // the 4-point Fourier sum entering the k-factors
    mutable std::optional<std::vector<Term>> cache_[3][2][2];
};

} // namespace qptau
