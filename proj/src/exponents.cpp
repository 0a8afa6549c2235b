#include "qptau/exponents.hpp"

namespace qptau {

QSymPowers::QSymPowers(const QContext& ctx, std::vector<Complex> sym_values)
    : syms_(std::move(sym_values)), qh_(sqrt(ctx.q)), qint_(ctx.q) {
    qsym_.reserve(syms_.size());
    qsym_inv_.reserve(syms_.size());
    for (const Complex& s : syms_) {
        Complex p = pow(ctx.q, s);
        qsym_.push_back(p);
        qsym_inv_.push_back(inverse(p));
    }
}

Complex QSymPowers::value(const ParamExpr& e) const {
    Complex v = Complex(Real(e.half)) / 2L;
    for (size_t i = 0; i < syms_.size(); ++i) {
        int k = e.c[i];
        if (k != 0) v += syms_[i] * static_cast<long>(k);
    }
    return v;
}

Complex QSymPowers::qpow(const ParamExpr& e) const {
    Complex v = qh_(e.half);
    for (size_t i = 0; i < syms_.size(); ++i) {
        int k = e.c[i];
        if (k == 0) continue;
        const Complex& b = k > 0 ? qsym_[i] : qsym_inv_[i];
        for (int r = 0; r < (k > 0 ? k : -k); ++r) v *= b;
    }
    return v;
}

NekArg<Complex> QSymPowers::arg(const ParamExpr& e) const {
    return {qpow(e), e.exact_int()};
}

} // namespace qptau
