#pragma once

#include "qptau/tau.hpp"

#include <string>
#include <vector>

namespace qptau {

// Parameters of the qPVI map, derived from the local exponents.
struct QPviParams {
    Complex a1, a2, a3, a4, b1, b2, b3, b4;
};

QPviParams params_from_thetas(const Complex& th0, const Complex& tht, const Complex& th1,
                              const Complex& thI, const Complex& q);

struct QPviState {
    Complex y, z, t;
};

// One step of the map: the z-equation advances first (it couples y at time t
// with z-bar), then the y-equation; returns the state at qt. The t paired
// with b1, b2 in the y-equation follows the system's display literally.
QPviState qpvi_step(const QPviState& s, const QPviParams& p, const Complex& q);
// Algebraic inverse of qpvi_step.
QPviState qpvi_step_back(const QPviState& s, const QPviParams& p, const Complex& q);

// y(t) = q^{-2 th1 - 1} t tau3 tau4 / (tau1 tau2); th1 read from the family.
Complex y_from_tau(const TauFamily& f, const Complex& t, const QContext& ctx);
Complex y_from_tau(const TauTheorem32Family& f, const Complex& t, const QContext& ctx);

// z(t) from the tau-ratio theorem (underline = t -> t/q):
//   z = (tau1_ tau2 - tau1 tau2_) / (q^{thI} tau1_ tau2 - q^{1-thI} tau1 tau2_).
Complex z_from_tau_thm(const TauTheorem32Family& f, const Complex& t, const QContext& ctx);

// z(t) from the bilinear-system family: z = -q^{tht-th1-1} t tau7_ tau8 / (tau5_ tau6).
Complex z_from_tau_conj(const TauFamily& f, const Complex& t, const QContext& ctx);

// w = q^{-1}(1 - q^{1-2 thI}) Gamma_q(2 thI)/Gamma_q(2-2 thI) tau2/tau1.
Complex w_from_tau(const TauTheorem32Family& f, const Complex& t, const QContext& ctx);

// The eight bilinear relations plus the Fourier-comparison relation; entries
// are |LHS| / (largest single term). Overline = t -> qt, underline = t -> t/q.
std::vector<Real> bilinear_residuals(const TauFamily& f, const Complex& t, const QContext& ctx);
const std::vector<std::string>& bilinear_names();

// Residuals of the two qPVI equations on given data: y, z at t and ybar,
// zbar at qt. r1_alt evaluates the y-equation under the alternative
// convention that pairs qt (not t) with b1, b2.
struct QPviResiduals {
    Real r1, r2, r1_alt;
};
QPviResiduals qpvi_residual(const Complex& y, const Complex& z, const Complex& ybar,
                            const Complex& zbar, const Complex& t, const QPviParams& p);

} // namespace qptau
