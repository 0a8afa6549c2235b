#pragma once

#include "qptau/exponents.hpp"
#include "qptau/nekrasov.hpp"
#include "qptau/qspecial.hpp"

#include <map>
#include <vector>

namespace qptau {

// 2x2 matrix indexed by signs: row/column 0 is "+", 1 is "-".
struct Matrix2 {
    Complex e[2][2];

    static int idx(int sign) { return sign > 0 ? 0 : 1; }
    Complex& at(int r_sign, int c_sign) { return e[idx(r_sign)][idx(c_sign)]; }
    const Complex& at(int r_sign, int c_sign) const { return e[idx(r_sign)][idx(c_sign)]; }

    Complex det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }
    Matrix2 inverse() const; // adjugate; throws singular_error on zero determinant
    friend Matrix2 operator*(const Matrix2& a, const Matrix2& b);
    friend Matrix2 operator-(const Matrix2& a, const Matrix2& b);
    friend Matrix2 operator+(const Matrix2& a, const Matrix2& b);
    friend Matrix2 operator*(const Matrix2& a, const Complex& s);
    Real max_abs() const;
};

// Largest entry of a-b over largest entry magnitude.
Real rel_residual(const Matrix2& a, const Matrix2& b);

// Shared evaluation state for one assignment of symbol values: q-power
// caches and memoized Barnes values keyed by the exact symbolic argument.
class BlockWorkspace {
public:
    BlockWorkspace(const QContext& ctx, std::vector<Complex> sym_values);
    const QContext& ctx() const { return ctx_; }
    const QSymPowers& sp() const { return sp_; }
    Complex gq(const ParamExpr& arg);

private:
    const QContext& ctx_;
    QSymPowers sp_;
    std::map<std::pair<std::array<int16_t, kMaxSym>, long>, Complex> gq_cache_;
};

// Vertex normalization factor built from Barnes functions,
//   N(theta; s_out, s_in) = prod_{e,e'} G_q(1 + e s_out - theta - e' s_in)
//                           / (G_q(1+2 s_out) G_q(1-2 s_in)).
// With `regularized` the single numerator factor that vanishes identically
// (argument == 0 as a symbolic constant) is divided out; this is the N'
// limit for a degenerate vertex. Without it an identically-zero argument
// makes the result 0. A denominator argument at a nonpositive integer
// throws pole_error naming the argument.
Complex vertex_norm(const ParamExpr& theta, const ParamExpr& s_out, const ParamExpr& s_in,
                    bool regularized, BlockWorkspace& ws);

// Public normalization factor at plain values (generic, unregularized).
Complex normalization_N(const Complex& theta3, const Complex& theta2, const Complex& theta1,
                        const QContext& ctx);

// Conformal block with symbolic vertex parameters. Vertices are p = 1..m
// with inserted theta[p-1] at x[p-1]; sigma has size m+1 with sigma[0] and
// sigma[m] the boundary parameters. `regularized` lists vertices p whose
// normalization is the N' limit.
struct BlockSpecX {
    std::vector<ParamExpr> theta;
    std::vector<ParamExpr> sigma;
    std::vector<Complex> x;
    std::vector<int> regularized;
    long weight_cap = 8;

    int m() const { return static_cast<int>(theta.size()); }
};

// Coefficients of the internal-weight expansion: key (W_1..W_{m-1}) holds
// the sum over partition-pair tuples of that weight profile, excluding the
// per-slot ratio factors r_p = q^{2 theta_p} x_p / x_{p+1}.
struct BlockSum {
    std::map<std::vector<int>, Complex> coeffs;
};

BlockSum block_sum(const BlockSpecX& spec, BlockWorkspace& ws);

// Prefactor * weighted sum at the spec's x values.
Complex block_eval(const BlockSpecX& spec, BlockWorkspace& ws);

// Public block with plain numeric parameters (all vertices generic).
struct BlockSpec {
    std::vector<Complex> theta; // theta_1..theta_m
    Complex theta0, theta_top;  // theta_0 and theta_{m+1}
    std::vector<Complex> sigma; // sigma_1..sigma_{m-1}
    std::vector<Complex> x;     // x_1..x_m
};
Complex conformal_block(const BlockSpec& spec, const QContext& ctx);

// Degenerate 4-point blocks in Heine closed form. `Left` is the display
// with the 1/2-insertion outermost (internal sigma = theta_inf + sign/2,
// series variable q^{2 theta1} x2/x1); `Right` has it innermost (internal
// sigma = theta0 + sign/2, series variable q x1/x2). The 2phi1 keeps
// `terms` summands, matching a block truncated at that weight.
enum class DegenerateSide { Left, Right };
Complex degenerate_block_4pt(DegenerateSide side, int sign, const Complex& thI,
                             const Complex& th1, const Complex& th0, const Complex& x1,
                             const Complex& x2, const QContext& ctx, long terms);

// The same block computed from the series engine (N'-regularized vertex).
Complex degenerate_block_4pt_series(DegenerateSide side, int sign, const Complex& thI,
                                    const Complex& th1, const Complex& th0, const Complex& x1,
                                    const Complex& x2, const QContext& ctx, long weight_cap);

// Braiding matrix B[theta1, 1/2; thetaInf, theta0 | x] with x = q^u.
Matrix2 braiding_matrix(const Complex& th1, const Complex& thI, const Complex& th0,
                        const Complex& x, const QContext& ctx);

// Parameter point for the braiding-identity machinery.
struct BraidPoint {
    Complex thI, th1, sigma;
    Complex x1, x2;
    long keta = 12;
};

// X / Y building blocks of the general braiding identity. eps is +1 or -1.
Complex x_func(int eps, const Partition& la, const Partition& mu, const Partition& al,
               const Partition& be, const BraidPoint& pt, const QContext& ctx);
Complex y_func(int eps, const Partition& la, const Partition& mu, const Partition& al,
               const Partition& be, const BraidPoint& pt, const QContext& ctx);

// Relative residual of the general braiding identity at the given partition
// quadruple; eps_prime = +1, -1, or 0 for the max over both columns.
Real braiding_identity_residual(const Partition& la, const Partition& mu, const Partition& al,
                                const Partition& be, const BraidPoint& pt, const QContext& ctx,
                                int eps_prime = 0);

// Residuals of the three row-reduction operator identities (X^eps for both
// eps, Y^+, Y^-): each relates the value at la to the value at bar(la) with
// shifted (theta1, sigma) and a q-shift of x1.
struct ReductionResiduals {
    Real x_plus, x_minus, y_plus, y_minus;
    Real max() const;
};
ReductionResiduals check_lemma_reduction(const Partition& la, const Partition& mu,
                                         const Partition& al, const Partition& be,
                                         const BraidPoint& pt, const QContext& ctx);

// Consistency of the braiding identity's matrix elements with the 6-point
// block: the (|la|+|mu|, |al|+|be|) weight slice of the 6-point sum equals
// the X-function combination summed over states of those weights.
// Returns the relative residual for the slice (a, b).
Real sixpoint_slice_residual(int a, int b, int rho, const Complex& thI, const Complex& th1,
                             const Complex& sigma, const Complex& tht, const Complex& th0,
                             const Complex& thd2, const Complex& thd3, const Complex& x1,
                             const Complex& x2, const QContext& ctx, long keta);

} // namespace qptau
