#pragma once

#include "qptau/complex.hpp"
#include "qptau/qcontext.hpp"

#include <array>
#include <optional>
#include <vector>

namespace qptau {

inline constexpr int kMaxSym = 12;

// Exact linear form  sum_i c[i]*sym_i + half/2  over a small table of generic
// parameters. Exponents of q inside block/tau sums are carried in this form
// so that arguments which are exact integer powers of q (the N(1) and
// N(q^{-1}) degenerations) are recognized symbolically, never by floating
// comparison.
struct ParamExpr {
    std::array<int16_t, kMaxSym> c{};
    long half = 0;

    static ParamExpr sym(int i, long half_shift2 = 0) {
        ParamExpr e;
        e.c[static_cast<size_t>(i)] = 1;
        e.half = half_shift2;
        return e;
    }
    // constant value half2/2
    static ParamExpr constant(long half2) {
        ParamExpr e;
        e.half = half2;
        return e;
    }

    bool is_const() const {
        for (int16_t k : c)
            if (k != 0) return false;
        return true;
    }
    // Defined iff the form is a constant integer.
    std::optional<long> exact_int() const {
        if (!is_const() || (half % 2) != 0) return std::nullopt;
        return half / 2;
    }

    friend ParamExpr operator+(ParamExpr a, const ParamExpr& b) {
        for (int i = 0; i < kMaxSym; ++i) a.c[static_cast<size_t>(i)] += b.c[static_cast<size_t>(i)];
        a.half += b.half;
        return a;
    }
    friend ParamExpr operator-(ParamExpr a, const ParamExpr& b) {
        for (int i = 0; i < kMaxSym; ++i) a.c[static_cast<size_t>(i)] -= b.c[static_cast<size_t>(i)];
        a.half -= b.half;
        return a;
    }
    friend ParamExpr operator-(ParamExpr a) {
        for (auto& k : a.c) k = static_cast<int16_t>(-k);
        a.half = -a.half;
        return a;
    }
    ParamExpr scaled(int m) const {
        ParamExpr e = *this;
        for (auto& k : e.c) k = static_cast<int16_t>(k * m);
        e.half *= m;
        return e;
    }
    ParamExpr plus_half(long dh) const {
        ParamExpr e = *this;
        e.half += dh;
        return e;
    }
    friend bool operator==(const ParamExpr& a, const ParamExpr& b) {
        return a.c == b.c && a.half == b.half;
    }
};

// Cache of integer powers of a fixed base.
template <class S>
class IntPow {
public:
    explicit IntPow(S base) : base_(std::move(base)) {
        pos_.push_back(S(1L));
    }
    const S& operator()(long k) const {
        if (k >= 0) {
            while (static_cast<long>(pos_.size()) <= k) pos_.push_back(pos_.back() * base_);
            return pos_[static_cast<size_t>(k)];
        }
        long m = -k;
        if (neg_.empty()) neg_.push_back(S(1L) / base_);
        while (static_cast<long>(neg_.size()) < m) neg_.push_back(neg_.back() * neg_.front());
        return neg_[static_cast<size_t>(m - 1)];
    }
    const S& base() const { return base_; }

private:
    S base_;
    mutable std::vector<S> pos_, neg_;
};

// Argument of a Nekrasov factor: a value w, together with k when w == q^k
// exactly (detected from the symbolic exponent).
template <class S>
struct NekArg {
    S value;
    std::optional<long> int_exp;
};

// Evaluates q^{expr} and expr itself for a fixed assignment of symbol values.
// Holds q^{1/2}-power and q^{sym} caches.
class QSymPowers {
public:
    QSymPowers(const QContext& ctx, std::vector<Complex> sym_values);

    const Complex& q() const { return qh_.base() /* unused */; }
    Complex value(const ParamExpr& e) const; // numeric value of the exponent
    Complex qpow(const ParamExpr& e) const;  // q^{value(e)}
    NekArg<Complex> arg(const ParamExpr& e) const;
    const IntPow<Complex>& qint() const { return qint_; }
    const Complex& sym_value(int i) const { return syms_[static_cast<size_t>(i)]; }

private:
    std::vector<Complex> syms_;     // symbol values
    std::vector<Complex> qsym_;     // q^{sym_i}
    std::vector<Complex> qsym_inv_; // q^{-sym_i}
    IntPow<Complex> qh_;            // powers of q^{1/2}
    IntPow<Complex> qint_;          // powers of q
};

} // namespace qptau
