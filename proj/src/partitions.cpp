#include "qptau/partitions.hpp"

#include <algorithm>
#include <functional>

namespace qptau {

Partition::Partition(std::vector<int32_t> parts) : parts_(std::move(parts)) {
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw domain_error("Partition: parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw domain_error("Partition: parts must be weakly decreasing");
    }
}

long Partition::weight() const {
    long w = 0;
    for (int32_t p : parts_) w += p;
    return w;
}

int32_t Partition::conj_part(int j) const {
    if (j < 1) return 0;
    int32_t c = 0;
    for (int32_t p : parts_) {
        if (p >= j) ++c;
        else break;
    }
    return c;
}

Partition Partition::conjugate() const {
    if (parts_.empty()) return Partition();
    std::vector<int32_t> c(static_cast<size_t>(parts_[0]));
    for (int j = 1; j <= parts_[0]; ++j) c[static_cast<size_t>(j - 1)] = conj_part(j);
    return Partition(std::move(c));
}

long Partition::n_stat() const {
    long n = 0;
    for (size_t i = 0; i < parts_.size(); ++i) n += static_cast<long>(i) * parts_[i];
    return n;
}

long Partition::n_conj_stat() const {
    long n = 0;
    for (int32_t p : parts_) n += static_cast<long>(p) * (p - 1) / 2;
    return n;
}

Partition Partition::bar() const {
    std::vector<int32_t> b;
    b.reserve(parts_.size());
    for (int32_t p : parts_)
        if (p > 1) b.push_back(p - 1);
    return Partition(std::move(b));
}

Partition Partition::r_n(int n) const {
    if (n < 0) throw domain_error("r_n: n must be >= 0");
    std::vector<int32_t> r;
    for (int i = 1; i <= n; ++i) r.push_back(part(i) + 1); // zeros beyond length become 1
    for (int i = n + 2; i <= length(); ++i) r.push_back(part(i));
    while (!r.empty() && r.back() == 0) r.pop_back();
    return Partition(std::move(r));
}

bool operator<(const Partition& a, const Partition& b) {
    long wa = a.weight(), wb = b.weight();
    if (wa != wb) return wa < wb;
    return a.parts_ > b.parts_; // lexicographically larger first within a weight
}

std::string Partition::str() const {
    std::string s = "[";
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    return s + "]";
}

std::vector<Partition> enumerate_upto(int K) {
    if (K < 0) throw domain_error("enumerate_upto: K must be >= 0");
    std::vector<Partition> out;
    std::vector<int32_t> cur;
    // Descending-lex generation per weight: largest first part first.
    std::function<void(int, int32_t)> gen = [&](int remaining, int32_t maxpart) {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int32_t p = std::min<int32_t>(maxpart, remaining); p >= 1; --p) {
            cur.push_back(p);
            gen(remaining - p, p);
            cur.pop_back();
        }
    };
    for (int w = 0; w <= K; ++w) gen(w, w > 0 ? w : 1);
    return out;
}

PartInfo::PartInfo(Partition part) : p(std::move(part)), w(p.weight()) {
    int width = p.part(1);
    conj.resize(static_cast<size_t>(width));
    for (int j = 1; j <= width; ++j) conj[static_cast<size_t>(j - 1)] = p.conj_part(j);
}

PartitionTable::PartitionTable(int K) {
    auto all = enumerate_upto(K);
    parts.reserve(all.size());
    for (auto& p : all) parts.emplace_back(std::move(p));
}

} // namespace qptau
