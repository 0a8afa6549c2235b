#include "qptau/nekrasov.hpp"

#include <sstream>

namespace qptau {

namespace {

Rat nek(const Partition& a, const Partition& b, const Rat& w, const Rat& q) {
    return nekrasov<Rat>(a, b, w, q);
}

std::string wit(const std::string& id, std::initializer_list<std::string> parts) {
    std::ostringstream os;
    os << id;
    for (const auto& p : parts) os << " " << p;
    return os.str();
}

// Appends 1^m to la's parts.
Partition with_ones(const Partition& la, int m) {
    std::vector<int32_t> parts = la.parts();
    for (int i = 0; i < m; ++i) parts.push_back(1);
    return Partition(std::move(parts));
}

} // namespace

Scalar nekrasov(const Partition& la, const Partition& mu, const Scalar& w, const Scalar& q) {
    if (w.mode() != q.mode())
        throw mode_error("nekrasov: w and q must be in the same arithmetic mode");
    if (w.is_exact()) return Scalar(nekrasov<Rat>(la, mu, w.rational(), q.rational()));
    return Scalar(nekrasov<Complex>(la, mu, w.complex_value(), q.complex_value()));
}

CheckOutcome check_rule1(const Partition& la, const Partition& mu, const Rat& w, const Rat& q) {
    CheckOutcome out;
    if (w == 0) throw domain_error("check_rule1: w must be nonzero");
    Rat lhs = nek(la, mu, w, q);
    long e = la.f_exponent() - mu.f_exponent();
    Rat f_ratio = pow_int(q, e) * (la.f_sign() * mu.f_sign());
    Rat rhs = nek(mu, la, Rat(1) / w, q) * pow_int(w, la.weight() + mu.weight()) * f_ratio;
    out.pass = (lhs == rhs);
    if (!out.pass) out.witness = wit("rule1", {la.str(), mu.str(), rat_str(w), rat_str(q)});
    return out;
}

CheckOutcome check_rule2(const Partition& la, const Rat& q) {
    CheckOutcome out;
    Rat lhs = pow_int(q, la.n_conj_stat()) / c_lambda<Rat>(la, q);
    lhs = lhs * lhs;
    Rat nll = nek(la, la, Rat(1), q);
    if (nll == 0) {
        out.degenerate = true;
        return out;
    }
    Rat rhs = pow_int(q, la.f_exponent() - la.weight()) * la.f_sign() / nll;
    out.pass = (lhs == rhs);
    if (!out.pass) out.witness = wit("rule2", {la.str(), rat_str(q)});
    return out;
}

CheckOutcome check_transpose(const Partition& la, const Partition& mu, const Rat& u, const Rat& q) {
    CheckOutcome out;
    Rat lhs = nek(la.conjugate(), mu.conjugate(), u, q);
    Rat rhs = nek(mu, la, u, q);
    out.pass = (lhs == rhs);
    if (!out.pass) out.witness = wit("transpose", {la.str(), mu.str(), rat_str(u), rat_str(q)});
    return out;
}

NonvanishingResult classify_nonvanishing(const Partition& la, const Partition& eta, const Rat& q) {
    if (q == 0 || q == 1 || q == -1)
        throw domain_error("classify_nonvanishing: q must not be 0 or a root of unity");
    NonvanishingResult r;
    r.is_zero = (nek(eta, la, Rat(1) / q, q) == 0);
    int bound = static_cast<int>(eta.weight() + la.part(1) + la.length() + 2);
    for (int n = 0; n <= bound; ++n) {
        if (la.r_n(n) == eta) {
            r.n_if_rn = n;
            break;
        }
    }
    r.consistent = (r.is_zero == !r.n_if_rn.has_value());
    return r;
}

CheckOutcome check_lemma_a4(int which, const Partition& la, const Partition& mu, int n,
                            const Rat& u, const Rat& q) {
    if (la.empty()) throw domain_error("check_lemma_a4: la must be nonempty");
    if (n < 0) throw domain_error("check_lemma_a4: n must be >= 0");
    if (which < 1 || which > 6) throw domain_error("check_lemma_a4: which must be 1..6");

    const int ell = la.length();
    const int k = mu.length();
    const Partition eta = la.r_n(n);
    const Partition gamma = mu.conjugate().r_n(n).conjugate();
    const Partition eta_t = (n <= ell - 1) ? eta.bar() : with_ones(la, n - ell + 1);
    const Partition la_bar = la.bar();
    const Partition mu_bar = mu.bar();
    const Rat qinv = Rat(1) / q;

    CheckOutcome out;
    auto degenerate = [&]() {
        out.degenerate = true;
        return out;
    };
    auto finish = [&](const Rat& lhs, const Rat& rhs) {
        out.pass = (lhs == rhs);
        if (!out.pass)
            out.witness = wit("lemma-a4-" + std::to_string(which),
                              {la.str(), mu.str(), std::to_string(n), rat_str(u), rat_str(q)});
        return out;
    };

    // prod_{j=1}^{mu_row} (1 - q^{j-1} u) / (1 - q^{-leg_mu(row,j)+j-2} u),
    // the boundary-strip factor shared by (5) and (6); row is ell or ell+1.
    auto strip = [&](int row) -> std::optional<Rat> {
        Rat acc(1);
        for (int j = 1; j <= mu.part(row); ++j) {
            Rat den = Rat(1) - pow_int(q, -mu.leg(row, j) + j - 2) * u;
            if (den == 0) return std::nullopt;
            acc *= (Rat(1) - pow_int(q, j - 1) * u) / den;
        }
        return acc;
    };
    // prod_{i=1}^{ell-1} (1 - q^{ell-i+arm_mu(i,1)+shift} u)
    auto col = [&](int upto, long shift) {
        Rat acc(1);
        for (int i = 1; i <= upto; ++i) acc *= (Rat(1) - pow_int(q, ell - i + mu.arm(i, 1) + shift) * u);
        return acc;
    };

    switch (which) {
        case 1: {
            Rat d1 = nek(eta, eta, Rat(1), q), d2 = nek(eta_t, eta_t, Rat(1), q);
            if (d1 == 0 || d2 == 0) return degenerate();
            Rat lhs = nek(eta, la, qinv, q) / d1;
            Rat rhs = nek(eta_t, la_bar, qinv, q) / d2 *
                      (Rat(1) - pow_int(q, eta_t.weight() - la.weight()));
            return finish(lhs, rhs);
        }
        case 2: {
            Rat d1 = nek(mu, eta, q * u, q), d2 = nek(mu, eta_t, u, q);
            if (d1 == 0 || d2 == 0) return degenerate();
            Rat lhs = nek(mu, la, u, q) / d1;
            Rat rhs = nek(mu, la_bar, qinv * u, q) / d2 * (Rat(1) - u);
            return finish(lhs, rhs);
        }
        case 3: {
            Rat d1 = nek(mu, eta, q * u, q), d2 = nek(mu_bar, eta, q * q * u, q);
            Rat d3 = Rat(1) - q * u;
            if (d1 == 0 || d2 == 0 || d3 == 0) return degenerate();
            Rat lhs = nek(mu, la, u, q) / d1;
            Rat rhs = nek(mu_bar, la, q * u, q) / d2 *
                      (Rat(1) - pow_int(q, eta.weight() - la.weight() + 1 - k) * u) / d3;
            return finish(lhs, rhs);
        }
        case 4: {
            Rat acc(1);
            for (int j = 1; j <= mu.part(ell + 1); ++j) {
                Rat den = Rat(1) - pow_int(q, -mu.leg(ell + 1, j) + j - 2) * u;
                if (den == 0) return degenerate();
                acc *= (Rat(1) - pow_int(q, j - 1) * u) / den;
            }
            Rat lhs = nek(mu, la, u, q);
            Rat rhs = nek(mu, la_bar, qinv * u, q) * acc * col(ell, 1);
            return finish(lhs, rhs);
        }
        case 5: {
            auto s = strip(ell);
            if (!s) return degenerate();
            Rat lhs = nek(mu, eta, u, q);
            Rat rhs = nek(mu, eta_t, qinv * u, q) * *s * col(ell - 1, 0);
            return finish(lhs, rhs);
        }
        case 6: {
            auto s = strip(ell);
            if (!s) return degenerate();
            Rat lhs = nek(gamma, la, u, q);
            Rat rhs = nek(gamma, la_bar, qinv * u, q) *
                      (Rat(1) - pow_int(q, ell + gamma.weight() - mu.weight() - 1) * u) * *s *
                      col(ell - 1, 0);
            return finish(lhs, rhs);
        }
    }
    return out;
}

CheckOutcome check_degree(const Partition& la, const Partition& mu, const Rat& q) {
    CheckOutcome out;
    const long d = la.weight() + mu.weight();
    // Values at w = 1..d+2; (d+1)-st finite difference must vanish and the
    // d-th must not (leading coefficient = Delta^d / d!).
    std::vector<Rat> v;
    for (long w = 1; w <= d + 2; ++w) v.push_back(nek(la, mu, Rat(w), q));
    for (long level = 1; level <= d + 1; ++level) {
        for (size_t i = 0; i + 1 < v.size(); ++i) v[i] = v[i + 1] - v[i];
        v.pop_back();
        if (level == d && v[0] == 0) {
            out.pass = false;
            out.witness = wit("degree-drop", {la.str(), mu.str()});
            return out;
        }
    }
    out.pass = (v[0] == 0);
    if (!out.pass) out.witness = wit("degree-excess", {la.str(), mu.str()});
    return out;
}

} // namespace qptau
