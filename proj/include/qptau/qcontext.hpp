#pragma once

#include "qptau/complex.hpp"
#include "qptau/errors.hpp"

namespace qptau {

// Evaluation context: the base q, the working precision, and the three
// truncation orders used throughout (P for infinite products, K for
// partition-weight caps, N for the Fourier window of tau-type sums).
struct QContext {
    Complex q;
    int mantissa_bits = 128;
    long P = 256; // infinite products keep factors with index (sum) < P
    long K = 8;   // partition sums keep total weight <= K
    long N = 6;   // Fourier sums run over n in [-N, N]

    QContext(Complex q_, int bits = 128, long P_ = 256, long K_ = 8, long N_ = 6)
        : q(std::move(q_)), mantissa_bits(bits), P(P_), K(K_), N(N_) {
        if (!(abs(q) < Real(1L))) throw domain_error("QContext: |q| must be < 1");
        if (q.is_zero()) throw domain_error("QContext: q must be nonzero");
        if (P < 0 || K < 0 || N < 0) throw domain_error("QContext: P, K, N must be >= 0");
        if (mantissa_bits < 2) throw domain_error("QContext: mantissa_bits too small");
    }

    static QContext from_decimal(const std::string& q_str, int bits = 128, long P = 256,
                                 long K = 8, long N = 6) {
        Real::PrecGuard g(bits);
        return QContext(Complex(Real::from_string(q_str, bits)), bits, P, K, N);
    }

    QContext with_K(long K_) const { QContext c(*this); c.K = K_; return c; }
    QContext with_N(long N_) const { QContext c(*this); c.N = N_; return c; }
    QContext with_P(long P_) const { QContext c(*this); c.P = P_; return c; }

    // Tail bound for a truncated product prod_{j >= P} (1 - a q^j):
    // |a| |q|^P / (1 - |q|).
    Real product_tail(const Real& abs_a) const {
        Real aq = abs(q);
        return abs_a * pow(aq, P) / (Real(1L) - aq);
    }
};

} // namespace qptau
