#pragma once

#include "qptau/exponents.hpp"
#include "qptau/partitions.hpp"
#include "qptau/rational.hpp"
#include "qptau/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qptau {

template <class S>
struct NekVal {
    S value;
    bool zero = false;
};

namespace detail {
template <class S>
struct exact_field : std::false_type {};
template <>
struct exact_field<Rat> : std::true_type {};
} // namespace detail

// N_{la,mu}(w) = prod_{cells of la} (1 - q^{-leg_la - arm_mu - 1} w)
//             * prod_{cells of mu} (1 - q^{arm_la + leg_mu + 1} w).
// When w is known to be an exact integer power of q, zero factors are
// detected from the integer exponent; in the exact field they are detected
// by comparison. `zero` is set iff some factor vanished exactly.
template <class S>
NekVal<S> nekrasov_factor(const PartInfo& la, const PartInfo& mu, const NekArg<S>& w,
                          const IntPow<S>& qp) {
    S acc(1L);
    auto mul_factor = [&](long e) -> bool {
        if (w.int_exp && e + *w.int_exp == 0) return false;
        S f = S(1L) - qp(e) * w.value;
        if constexpr (detail::exact_field<S>::value) {
            if (f == 0) return false;
        }
        acc = acc * f;
        return true;
    };
    for (int i = 1; i <= la.length(); ++i) {
        int32_t li = la.part(i);
        for (int j = 1; j <= li; ++j) {
            long e = -la.leg(i, j) - mu.arm(i, j) - 1;
            if (!mul_factor(e)) return {S(0L), true};
        }
    }
    for (int i = 1; i <= mu.length(); ++i) {
        int32_t mi = mu.part(i);
        for (int j = 1; j <= mi; ++j) {
            long e = la.arm(i, j) + mu.leg(i, j) + 1;
            if (!mul_factor(e)) return {S(0L), true};
        }
    }
    return {acc, false};
}

template <class S>
S nekrasov(const Partition& la, const Partition& mu, const S& w, const S& q) {
    PartInfo a(la), b(mu);
    IntPow<S> qp(q);
    return nekrasov_factor<S>(a, b, NekArg<S>{w, std::nullopt}, qp).value;
}

// Scalar-typed entry point; exact iff both w and q are exact.
Scalar nekrasov(const Partition& la, const Partition& mu, const Scalar& w, const Scalar& q);

// c_lambda = prod_{cells} (1 - q^{leg + arm + 1}).
template <class S>
S c_lambda(const Partition& la, const S& q) {
    PartInfo a(la);
    IntPow<S> qp(q);
    S acc(1L);
    for (int i = 1; i <= a.length(); ++i)
        for (int j = 1; j <= a.part(i); ++j) acc = acc * (S(1L) - qp(a.leg(i, j) + a.arm(i, j) + 1));
    return acc;
}

// Outcome of one exact identity check.
struct CheckOutcome {
    bool pass = true;
    bool degenerate = false; // a denominator factor vanished at the sample point
    std::string witness;     // set when pass == false
};

// rule1: N_{la,mu}(w) = N_{mu,la}(w^{-1}) w^{|la|+|mu|} f_la / f_mu.
CheckOutcome check_rule1(const Partition& la, const Partition& mu, const Rat& w, const Rat& q);

// rule2: (q^{n(la')} / c_la)^2 = f_la q^{-|la|} / N_{la,la}(1).
CheckOutcome check_rule2(const Partition& la, const Rat& q);

// Transpose symmetry: N_{la',mu'}(u) = N_{mu,la}(u).
CheckOutcome check_transpose(const Partition& la, const Partition& mu, const Rat& u, const Rat& q);

// N_{eta,la}(q^{-1}) != 0  iff  eta = r_n(la) for some n >= 0; both sides
// determined independently and compared.
struct NonvanishingResult {
    bool is_zero = false;
    std::optional<int> n_if_rn;
    bool consistent = false;
};
NonvanishingResult classify_nonvanishing(const Partition& la, const Partition& eta, const Rat& q);

// The six product identities relating N-factors at (la, eta=r_n(la), ...) to
// their bar-reduced forms. `which` is 1..6, numbered by the equation labels.
CheckOutcome check_lemma_a4(int which, const Partition& la, const Partition& mu, int n,
                            const Rat& u, const Rat& q);

// N_{la,mu}(w), |la|+|mu| <= deg bound check: exact interpolation through
// integer sample points; verifies the degree is exactly |la|+|mu|.
CheckOutcome check_degree(const Partition& la, const Partition& mu, const Rat& q);

} // namespace qptau
