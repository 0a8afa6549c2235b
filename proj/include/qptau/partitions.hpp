#pragma once

#include "qptau/errors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qptau {

// Integer partition: weakly decreasing positive parts. Cells of the Young
// diagram are (i,j) with 1 <= j <= parts[i-1]. Rows/columns outside the
// diagram read as zero, so arm/leg are defined (possibly negative) for any
// cell in the positive quadrant.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int32_t> parts);

    int length() const { return static_cast<int>(parts_.size()); }
    long weight() const;
    bool empty() const { return parts_.empty(); }
    // 1-based row; zero outside the diagram.
    int32_t part(int i) const {
        return (i >= 1 && i <= length()) ? parts_[static_cast<size_t>(i - 1)] : 0;
    }
    const std::vector<int32_t>& parts() const { return parts_; }

    Partition conjugate() const;
    // conjugate()[j] without building the conjugate.
    int32_t conj_part(int j) const;

    long arm(int i, int j) const { return static_cast<long>(part(i)) - j; }
    long leg(int i, int j) const { return static_cast<long>(conj_part(j)) - i; }

    // n(lambda) = sum of legs over cells = sum_i (i-1) lambda_i.
    long n_stat() const;
    // n(lambda') = sum of arms over cells = sum_i lambda_i (lambda_i - 1) / 2.
    long n_conj_stat() const;
    // f_lambda = (-1)^{|lambda|} q^{n(lambda') - n(lambda)}, kept exact.
    int f_sign() const { return weight() % 2 == 0 ? 1 : -1; }
    long f_exponent() const { return n_conj_stat() - n_stat(); }

    // Drop one box from every row: (l1-1, ..., lk-1), zeros removed.
    Partition bar() const;
    // r_n: add one box to rows 1..n, delete row n+1 (rows beyond length read 0).
    Partition r_n(int n) const;

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
    // (weight, lexicographically decreasing parts) — the enumeration order.
    friend bool operator<(const Partition& a, const Partition& b);

    std::string str() const; // "[3,1]", "[]"

private:
    std::vector<int32_t> parts_;
};

// All partitions of weight <= K, each once, in (weight, lex-descending) order.
std::vector<Partition> enumerate_upto(int K);

// Partition with precomputed conjugate parts; the unit the product kernels
// consume.
struct PartInfo {
    Partition p;
    std::vector<int32_t> conj; // conj[j-1] = p'.part(j), j = 1..p.part(1)
    long w = 0;

    PartInfo() = default;
    explicit PartInfo(Partition part);

    int32_t part(int i) const { return p.part(i); }
    int32_t conj_part(int j) const {
        return (j >= 1 && j <= static_cast<int>(conj.size())) ? conj[static_cast<size_t>(j - 1)] : 0;
    }
    long arm(int i, int j) const { return static_cast<long>(part(i)) - j; }
    long leg(int i, int j) const { return static_cast<long>(conj_part(j)) - i; }
    int length() const { return p.length(); }
};

// Shared table of enumerated partitions with conjugates, plus the list of
// index pairs (a, b) with weight(a) + weight(b) <= K in canonical order.
struct PartitionTable {
    std::vector<PartInfo> parts; // enumerate_upto order
    explicit PartitionTable(int K);
    int count() const { return static_cast<int>(parts.size()); }
};

} // namespace qptau
