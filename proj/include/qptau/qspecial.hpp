#pragma once

#include "qptau/complex.hpp"
#include "qptau/qcontext.hpp"
#include "qptau/rational.hpp"

namespace qptau {

// (a;q)_N = prod_{j=0}^{N-1} (1 - a q^j). Exact for exact inputs.
template <class S>
S q_pochhammer_finite(const S& a, const S& q, long N) {
    if (N < 0) throw domain_error("q_pochhammer_finite: N must be >= 0");
    S acc(1L), aq = a;
    for (long j = 0; j < N; ++j) {
        acc = acc * (S(1L) - aq);
        aq = aq * q;
    }
    return acc;
}

// Truncated infinite product with its tail bound.
struct ProductValue {
    Complex value;
    Real tail; // bound on the relative size of the dropped factors
    bool converged(const Real& tol) const { return tail <= tol; }
};

// (a;q)_infty truncated at j < P.
ProductValue q_pochhammer_inf(const Complex& a, const QContext& ctx);

// (a;q,q)_infty = prod_{j,k>=0} (1 - a q^{j+k}) truncated at j+k < P,
// computed as prod_{m<P} (1 - a q^m)^{m+1}.
ProductValue q_double_pochhammer_inf(const Complex& a, const QContext& ctx);

// Gamma_q(u) = (q;q)_inf / (q^u;q)_inf * (1-q)^{1-u}. Poles at u in Z_{<=0}.
Complex gamma_q(const Complex& u, const QContext& ctx);

// G_q(u) = (q^u;q,q)_inf / (q;q,q)_inf * (q;q)_inf^{u-1} * (1-q)^{-(u-1)(u-2)/2}.
Complex barnes_g_q(const Complex& u, const QContext& ctx);

// Theta_q(x) = (x, q/x, q; q)_infty.
Complex big_theta(const Complex& x, const QContext& ctx);

// theta(u) = q^{u(u-1)/2} Theta_q(q^u), principal branch for the q-power.
Complex theta(const Complex& u, const QContext& ctx);

// 2phi1(a, b; c; q, x) = sum_n (a;q)_n (b;q)_n / ((c;q)_n (q;q)_n) x^n,
// truncated after `terms` summands (n = 0..terms-1).
Complex q_2phi1(const Complex& a, const Complex& b, const Complex& c, const Complex& x,
                const QContext& ctx, long terms);

// F(alpha,beta;gamma;x) = Gamma_q(alpha)Gamma_q(beta)/Gamma_q(gamma)
//   * 2phi1(q^alpha, q^beta; q^gamma; q, x), the 2phi1 truncated after
// `terms` summands (n = 0..terms-1).
Complex heine_F(const Complex& alpha, const Complex& beta, const Complex& gamma,
                const Complex& x, const QContext& ctx, long terms);

// True if u is within eps of a nonpositive integer (real part test; the
// imaginary part must also be below eps).
bool near_nonpositive_integer(const Complex& u, const Real& eps);

} // namespace qptau
