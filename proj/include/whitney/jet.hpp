#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "whitney/basis.hpp"

namespace whitney {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// A polynomial of degree <= m-1 as coefficients over the global graded-lex
/// monomial basis, P(z) = sum_a c_a z^a. Basepoint-free; basepoints enter
/// only through operations.
struct Jet {
    Vec coeffs;

    static Jet zero(const Config& cfg) { return Jet{Vec::Zero(cfg.dim())}; }
    static Jet one(const Config& cfg) {
        Jet j = zero(cfg);
        j.coeffs[0] = 1.0;
        return j;
    }

    bool all_finite() const { return coeffs.allFinite(); }
};

/// A dense polynomial of arbitrary degree in its own graded-lex basis.
/// Used as the intermediate of full products and as the extended-coefficient
/// input carrying genuine degree-(>= m) test polynomials.
struct Poly {
    int n = 1;
    int degree = 0;
    std::vector<MultiIndex> basis;
    Vec coeffs;

    Poly() = default;
    Poly(int n_, int degree_) : n(n_), degree(degree_) {
        basis = enumerate_multiindices(n, degree);
        coeffs = Vec::Zero(static_cast<Eigen::Index>(basis.size()));
    }

    int position(const MultiIndex& a) const {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == a) return static_cast<int>(i);
        return -1;
    }

    static Poly from_jet(const Config& cfg, const Jet& p) {
        Poly q(cfg.n(), cfg.m() - 1);
        q.coeffs = p.coeffs;
        return q;
    }
};

namespace detail {

// Table of z_i^k for k = 0..max_pow.
inline std::vector<std::vector<double>> power_table(const Vec& z, int max_pow) {
    std::vector<std::vector<double>> pw(static_cast<std::size_t>(z.size()));
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        auto& row = pw[static_cast<std::size_t>(i)];
        row.resize(static_cast<std::size_t>(max_pow) + 1, 1.0);
        for (int k = 1; k <= max_pow; ++k) row[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(k - 1)] * z[i];
    }
    return pw;
}

inline double monomial_at(const std::vector<std::vector<double>>& pw, const MultiIndex& a) {
    double t = 1.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) t *= pw[i][static_cast<std::size_t>(a.entries[i])];
    return t;
}

} // namespace detail

/// P(z) by per-term accumulation over the graded basis with cached powers;
/// deterministic term order.
inline double eval(const Config& cfg, const Jet& p, const Vec& z) {
    auto pw = detail::power_table(z, cfg.m() - 1);
    double acc = 0.0;
    for (int i = 0; i < cfg.dim(); ++i) acc += p.coeffs[i] * detail::monomial_at(pw, cfg.index(i));
    return acc;
}

inline double eval(const Poly& p, const Vec& z) {
    auto pw = detail::power_table(z, p.degree);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.basis.size(); ++i)
        acc += p.coeffs[static_cast<Eigen::Index>(i)] * detail::monomial_at(pw, p.basis[i]);
    return acc;
}

/// d^a P, exact coefficient shift-and-scale. Rejects |a| >= m.
inline Jet partial_derivative(const Config& cfg, const Jet& p, const MultiIndex& a) {
    if (a.order() >= cfg.m()) throw std::invalid_argument("partial_derivative: |alpha| >= m");
    Jet out = Jet::zero(cfg);
    for (int i = 0; i < cfg.dim(); ++i) {
        const MultiIndex& b = cfg.index(i);
        if (!a.leq(b)) continue;
        MultiIndex c = b.minus(a);
        double scale = 1.0;
        for (std::size_t k = 0; k < c.entries.size(); ++k)
            scale *= static_cast<double>(factorial_i64(b.entries[k])) / static_cast<double>(factorial_i64(c.entries[k]));
        out.coeffs[cfg.position(c)] += scale * p.coeffs[i];
    }
    return out;
}

/// Matrix A(x) with A[a,b] = d^a z^b evaluated at x, over the jet basis.
/// Row a of A * coeffs gives d^a P(x).
inline Mat derivative_matrix(const Config& cfg, const Vec& x) {
    const int D = cfg.dim();
    Mat A = Mat::Zero(D, D);
    auto pw = detail::power_table(x, cfg.m() - 1);
    for (int r = 0; r < D; ++r) {
        const MultiIndex& a = cfg.index(r);
        for (int c = 0; c < D; ++c) {
            const MultiIndex& b = cfg.index(c);
            if (!a.leq(b)) continue;
            MultiIndex d = b.minus(a);
            double scale = 1.0;
            for (std::size_t k = 0; k < d.entries.size(); ++k)
                scale *= static_cast<double>(factorial_i64(b.entries[k])) /
                         static_cast<double>(factorial_i64(d.entries[k]));
            A(r, c) = scale * detail::monomial_at(pw, d);
        }
    }
    return A;
}

/// All d^a P(x) over the basis order, as a vector.
inline Vec derivatives_at(const Config& cfg, const Jet& p, const Vec& x) {
    return derivative_matrix(cfg, x) * p.coeffs;
}

/// d^a F(x) for an extended polynomial, exact.
inline double poly_derivative_at(const Poly& f, const MultiIndex& a, const Vec& x) {
    auto pw = detail::power_table(x, f.degree);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.basis.size(); ++i) {
        const MultiIndex& b = f.basis[i];
        if (!a.leq(b)) continue;
        MultiIndex d = b.minus(a);
        double scale = 1.0;
        for (std::size_t k = 0; k < d.entries.size(); ++k)
            scale *= static_cast<double>(factorial_i64(b.entries[k])) / static_cast<double>(factorial_i64(d.entries[k]));
        acc += f.coeffs[static_cast<Eigen::Index>(i)] * scale * detail::monomial_at(pw, d);
    }
    return acc;
}

/// J_x F re-expanded into the global basis: b_a = d^a F(x)/a!, then
/// sum_a b_a (z-x)^a is pushed back to coefficients around 0. Exact.
inline Jet taylor_jet(const Config& cfg, const Poly& f, const Vec& x) {
    const int D = cfg.dim();
    Jet out = Jet::zero(cfg);
    auto pw = detail::power_table(-x, cfg.m() - 1);
    for (int i = 0; i < D; ++i) {
        const MultiIndex& a = cfg.index(i);
        double b_a = poly_derivative_at(f, a, x) / static_cast<double>(cfg.index_factorial(i));
        // (z-x)^a = sum_{g <= a} C(a,g) z^g (-x)^(a-g)
        for (int j = 0; j < D; ++j) {
            const MultiIndex& g = cfg.index(j);
            if (!g.leq(a)) continue;
            MultiIndex d = a.minus(g);
            double w = 1.0;
            for (std::size_t k = 0; k < d.entries.size(); ++k)
                w *= static_cast<double>(binomial_i64(a.entries[k], g.entries[k]));
            out.coeffs[j] += b_a * w * detail::monomial_at(pw, d);
        }
    }
    return out;
}

/// For P already of degree <= m-1 the jet at any basepoint is P itself.
inline Jet taylor_jet(const Config& cfg, const Jet& p, const Vec& /*x*/) { return p; }

/// T_h(P)(z) = P(z-h), exact binomial re-expansion.
inline Jet translate(const Config& cfg, const Jet& p, const Vec& h) {
    const int D = cfg.dim();
    Jet out = Jet::zero(cfg);
    auto pw = detail::power_table(-h, cfg.m() - 1);
    for (int i = 0; i < D; ++i) {
        const MultiIndex& b = cfg.index(i);
        for (int j = 0; j < D; ++j) {
            const MultiIndex& g = cfg.index(j);
            if (!g.leq(b)) continue;
            MultiIndex d = b.minus(g);
            double w = 1.0;
            for (std::size_t k = 0; k < d.entries.size(); ++k)
                w *= static_cast<double>(binomial_i64(b.entries[k], g.entries[k]));
            out.coeffs[j] += p.coeffs[i] * w * detail::monomial_at(pw, d);
        }
    }
    return out;
}

/// tau_{x,delta}(P)(z) = delta^{-m} P(x + delta (z-x)), exact re-expansion.
inline Jet dilate(const Config& cfg, const Jet& p, const Vec& x, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("dilate: require delta > 0");
    const int D = cfg.dim();
    Jet out = Jet::zero(cfg);
    // substitute z_i -> delta z_i + (1-delta) x_i
    Vec shift = (1.0 - delta) * x;
    auto pw = detail::power_table(shift, cfg.m() - 1);
    const double dm = std::pow(delta, -cfg.m());
    for (int i = 0; i < D; ++i) {
        const MultiIndex& b = cfg.index(i);
        for (int j = 0; j < D; ++j) {
            const MultiIndex& g = cfg.index(j);
            if (!g.leq(b)) continue;
            MultiIndex d = b.minus(g);
            double w = 1.0;
            for (std::size_t k = 0; k < d.entries.size(); ++k)
                w *= static_cast<double>(binomial_i64(b.entries[k], g.entries[k]));
            out.coeffs[j] += dm * p.coeffs[i] * w * std::pow(delta, g.order()) * detail::monomial_at(pw, d);
        }
    }
    return out;
}

/// The linear map of translate as a D x D matrix on coefficient vectors.
inline Mat translate_matrix(const Config& cfg, const Vec& h) {
    const int D = cfg.dim();
    Mat M = Mat::Zero(D, D);
    for (int i = 0; i < D; ++i) {
        Jet e = Jet::zero(cfg);
        e.coeffs[i] = 1.0;
        M.col(i) = translate(cfg, e, h).coeffs;
    }
    return M;
}

/// The linear map of dilate as a D x D matrix on coefficient vectors.
inline Mat dilate_matrix(const Config& cfg, const Vec& x, double delta) {
    const int D = cfg.dim();
    Mat M = Mat::Zero(D, D);
    for (int i = 0; i < D; ++i) {
        Jet e = Jet::zero(cfg);
        e.coeffs[i] = 1.0;
        M.col(i) = dilate(cfg, e, x, delta).coeffs;
    }
    return M;
}

/// Full polynomial product (no truncation).
inline Poly poly_product(const Poly& p, const Poly& q) {
    Poly out(p.n, p.degree + q.degree);
    for (std::size_t i = 0; i < p.basis.size(); ++i) {
        if (p.coeffs[static_cast<Eigen::Index>(i)] == 0.0) continue;
        for (std::size_t j = 0; j < q.basis.size(); ++j) {
            if (q.coeffs[static_cast<Eigen::Index>(j)] == 0.0) continue;
            MultiIndex s = p.basis[i].plus(q.basis[j]);
            out.coeffs[out.position(s)] += p.coeffs[static_cast<Eigen::Index>(i)] * q.coeffs[static_cast<Eigen::Index>(j)];
        }
    }
    return out;
}

/// P (.)_x Q = J_x(P*Q): full product followed by Taylor truncation at x.
inline Jet jet_product(const Config& cfg, const Jet& p, const Jet& q, const Vec& x) {
    Poly full = poly_product(Poly::from_jet(cfg, p), Poly::from_jet(cfg, q));
    return taylor_jet(cfg, full, x);
}

} // namespace whitney
