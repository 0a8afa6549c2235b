#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qptau/partitions.hpp"

using namespace qptau;

namespace {
Partition P(std::vector<int32_t> v) { return Partition(std::move(v)); }
} // namespace

TEST_CASE("conjugate") {
    CHECK(Partition().conjugate() == Partition());
    CHECK(P({3, 1}).conjugate() == P({2, 1, 1}));
    CHECK(P({2, 1}).conjugate() == P({2, 1}));
    for (const auto& la : enumerate_upto(10)) CHECK(la.conjugate().conjugate() == la);
}

TEST_CASE("arm and leg with out-of-diagram cells") {
    Partition la = P({2, 1});
    CHECK(la.arm(1, 1) == 1);
    CHECK(la.leg(1, 1) == 1);
    CHECK(la.arm(1, 2) == 0);
    CHECK(la.leg(1, 2) == 0);
    Partition e;
    CHECK(e.arm(1, 1) == -1);
    CHECK(e.leg(1, 1) == -1);
}

TEST_CASE("statistics and f_lambda") {
    Partition e;
    CHECK(e.n_stat() == 0);
    CHECK(e.n_conj_stat() == 0);
    CHECK(e.f_exponent() == 0);
    CHECK(e.f_sign() == 1);

    Partition a = P({2, 1});
    CHECK(a.n_stat() == 1);
    CHECK(a.n_conj_stat() == 1);
    CHECK(a.f_exponent() == 0);
    CHECK(a.f_sign() == -1);

    Partition b = P({3});
    CHECK(b.n_stat() == 0);
    CHECK(b.n_conj_stat() == 3);
    CHECK(b.f_exponent() == 3);
    CHECK(b.f_sign() == -1);
}

TEST_CASE("n-statistics agree with cell sums") {
    for (const auto& la : enumerate_upto(10)) {
        long legs = 0, arms = 0;
        for (int i = 1; i <= la.length(); ++i)
            for (int j = 1; j <= la.part(i); ++j) {
                legs += la.leg(i, j);
                arms += la.arm(i, j);
            }
        CHECK(la.n_stat() == legs);
        CHECK(la.n_conj_stat() == arms);
    }
}

TEST_CASE("enumerate_upto order, counts, validity") {
    auto k0 = enumerate_upto(0);
    REQUIRE(k0.size() == 1);
    CHECK(k0[0] == Partition());

    auto k2 = enumerate_upto(2);
    REQUIRE(k2.size() == 4);
    CHECK(k2[0] == Partition());
    CHECK(k2[1] == P({1}));
    CHECK(k2[2] == P({2}));
    CHECK(k2[3] == P({1, 1}));

    auto k8 = enumerate_upto(8);
    CHECK(k8.size() == 67); // 1+1+2+3+5+7+11+15+22
    for (size_t i = 0; i + 1 < k8.size(); ++i) {
        CHECK(k8[i] < k8[i + 1]); // strict canonical order implies no duplicates
    }
}

TEST_CASE("bar") {
    CHECK(P({3, 2, 1}).bar() == P({2, 1}));
    CHECK(P({1, 1}).bar() == Partition());
    for (const auto& la : enumerate_upto(8)) CHECK(la.bar().weight() == la.weight() - la.length());
}

TEST_CASE("r_n") {
    Partition la = P({2, 1});
    CHECK(la.r_n(0) == P({1}));
    CHECK(la.r_n(1) == P({3}));
    CHECK(la.r_n(3) == P({3, 2, 1}));
    for (const auto& p : enumerate_upto(8))
        for (int n = 0; n <= 8; ++n)
            CHECK(p.r_n(n).weight() == p.weight() + n - p.part(n + 1));
}
