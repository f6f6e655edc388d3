#pragma once

#include <cstdint>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace whitney {

/// A multiindex alpha = (a_1,...,a_n) of partial-derivative orders.
struct MultiIndex {
    std::vector<int> entries;

    int order() const { return std::accumulate(entries.begin(), entries.end(), 0); }

    bool operator==(const MultiIndex& other) const { return entries == other.entries; }

    bool leq(const MultiIndex& other) const {
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i] > other.entries[i]) return false;
        return true;
    }

    MultiIndex minus(const MultiIndex& other) const {
        MultiIndex r = *this;
        for (std::size_t i = 0; i < entries.size(); ++i) r.entries[i] -= other.entries[i];
        return r;
    }

    MultiIndex plus(const MultiIndex& other) const {
        MultiIndex r = *this;
        for (std::size_t i = 0; i < entries.size(); ++i) r.entries[i] += other.entries[i];
        return r;
    }
};

inline std::int64_t factorial_i64(int k) {
    if (k < 0 || k > 20) throw std::invalid_argument("factorial_i64: argument outside exact 64-bit range [0,20]");
    std::int64_t r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

/// alpha! = prod_i alpha_i!, exact in 64-bit integers.
inline std::int64_t multi_factorial(const MultiIndex& a) {
    std::int64_t r = 1;
    for (int e : a.entries) r *= factorial_i64(e);
    return r;
}

inline std::int64_t binomial_i64(int nn, int kk) {
    if (kk < 0 || kk > nn) return 0;
    kk = std::min(kk, nn - kk);
    std::int64_t r = 1;
    for (int i = 1; i <= kk; ++i) {
        r = r * (nn - kk + i) / i;
    }
    return r;
}

namespace detail {

inline void enumerate_degree(int n, int degree, std::vector<int>& cur, int pos, int remaining,
                             std::vector<MultiIndex>& out) {
    if (pos == n - 1) {
        cur[pos] = remaining;
        out.push_back(MultiIndex{cur});
        return;
    }
    // lex-descending on leading entries within a degree block
    for (int e = remaining; e >= 0; --e) {
        cur[pos] = e;
        enumerate_degree(n, degree, cur, pos + 1, remaining - e, out);
    }
}

} // namespace detail

/// All multiindices of order <= max_order in graded-lex order (degree-major).
inline std::vector<MultiIndex> enumerate_multiindices(int n, int max_order) {
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    for (int d = 0; d <= max_order; ++d) detail::enumerate_degree(n, d, cur, 0, d, out);
    return out;
}

/// Smoothness order m and ambient dimension n, with the cached monomial
/// basis of the jet space (polynomials of degree <= m-1).
class Config {
public:
    Config(int m, int n) : m_(m), n_(n) {
        if (m < 1 || n < 1) throw std::invalid_argument("Config: require m >= 1 and n >= 1");
        if (m > 20) throw std::invalid_argument("Config: m > 20 exceeds exact integer factorial range");
        if (n > 3 || m > 4)
            std::cerr << "[whitney] warning: (m=" << m << ", n=" << n
                      << ") exceeds the supported desk-scale regime (m <= 4, n <= 3)\n";
        basis_ = enumerate_multiindices(n, m - 1);
        factorials_.reserve(basis_.size());
        for (const auto& a : basis_) factorials_.push_back(multi_factorial(a));
    }

    int m() const { return m_; }
    int n() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }

    const std::vector<MultiIndex>& basis() const { return basis_; }
    const MultiIndex& index(int i) const { return basis_[static_cast<std::size_t>(i)]; }
    std::int64_t index_factorial(int i) const { return factorials_[static_cast<std::size_t>(i)]; }

    /// Position of a multiindex in the graded-lex basis, or -1 if |alpha| > m-1.
    int position(const MultiIndex& a) const {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] == a) return static_cast<int>(i);
        return -1;
    }

    bool operator==(const Config& other) const { return m_ == other.m_ && n_ == other.n_; }

private:
    int m_;
    int n_;
    std::vector<MultiIndex> basis_;
    std::vector<std::int64_t> factorials_;
};

} // namespace whitney
