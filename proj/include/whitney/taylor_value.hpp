#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <memory>

#include "whitney/basis.hpp"

namespace whitney {

namespace detail {

/// Shared tables for truncated Taylor arithmetic in n variables to a fixed
/// total order: basis enumeration and the product index map.
struct TaylorTables {
    int n;
    int order;
    std::vector<MultiIndex> basis;
    std::vector<std::int64_t> factorials;
    // mul[i][j] = position of basis[i] + basis[j], or -1 when truncated
    std::vector<std::vector<int>> mul;

    TaylorTables(int n_, int order_) : n(n_), order(order_) {
        basis = enumerate_multiindices(n, order);
        for (const auto& a : basis) factorials.push_back(multi_factorial(a));
        auto position = [&](const MultiIndex& a) {
            for (std::size_t i = 0; i < basis.size(); ++i)
                if (basis[i] == a) return static_cast<int>(i);
            return -1;
        };
        mul.resize(basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) {
            mul[i].resize(basis.size(), -1);
            for (std::size_t j = 0; j < basis.size(); ++j) {
                if (basis[i].order() + basis[j].order() > order) continue;
                mul[i][j] = position(basis[i].plus(basis[j]));
            }
        }
    }
};

inline std::shared_ptr<const TaylorTables> taylor_tables(int n, int order) {
    static std::map<std::pair<int, int>, std::shared_ptr<const TaylorTables>> cache;
    auto key = std::make_pair(n, order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto t = std::make_shared<const TaylorTables>(n, order);
    cache.emplace(key, t);
    return t;
}

} // namespace detail

/// A truncated Taylor expansion of a function at a point: coefficients c_a
/// of sum c_a (z-x)^a over |a| <= order, with arithmetic and univariate
/// composition. d^a f(x) = a! c_a.
class TaylorValue {
public:
    TaylorValue(int n, int order) : tables_(detail::taylor_tables(n, order)) {
        coeffs_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(tables_->basis.size()));
    }

    static TaylorValue constant(int n, int order, double value) {
        TaylorValue t(n, order);
        t.coeffs_[0] = value;
        return t;
    }

    /// the coordinate function z_i expanded at x_i
    static TaylorValue variable(int n, int order, int axis, double x_axis) {
        TaylorValue t(n, order);
        t.coeffs_[0] = x_axis;
        if (order >= 1) {
            MultiIndex e;
            e.entries.assign(static_cast<std::size_t>(n), 0);
            e.entries[static_cast<std::size_t>(axis)] = 1;
            t.coeffs_[t.position(e)] = 1.0;
        }
        return t;
    }

    int n() const { return tables_->n; }
    int order() const { return tables_->order; }
    double value() const { return coeffs_[0]; }
    const Eigen::VectorXd& coeffs() const { return coeffs_; }
    Eigen::VectorXd& coeffs() { return coeffs_; }
    const std::vector<MultiIndex>& basis() const { return tables_->basis; }

    int position(const MultiIndex& a) const {
        for (std::size_t i = 0; i < tables_->basis.size(); ++i)
            if (tables_->basis[i] == a) return static_cast<int>(i);
        return -1;
    }

    /// d^a f at the expansion point
    double derivative(const MultiIndex& a) const {
        int p = position(a);
        if (p < 0) return 0.0;
        return coeffs_[p] * static_cast<double>(multi_factorial(a));
    }

    TaylorValue operator+(const TaylorValue& o) const {
        TaylorValue r = *this;
        r.coeffs_ += o.coeffs_;
        return r;
    }
    TaylorValue operator-(const TaylorValue& o) const {
        TaylorValue r = *this;
        r.coeffs_ -= o.coeffs_;
        return r;
    }
    TaylorValue operator*(double s) const {
        TaylorValue r = *this;
        r.coeffs_ *= s;
        return r;
    }
    TaylorValue& operator+=(const TaylorValue& o) {
        coeffs_ += o.coeffs_;
        return *this;
    }

    TaylorValue operator*(const TaylorValue& o) const {
        TaylorValue r(n(), order());
        const auto& mul = tables_->mul;
        for (std::size_t i = 0; i < tables_->basis.size(); ++i) {
            double ci = coeffs_[static_cast<Eigen::Index>(i)];
            if (ci == 0.0) continue;
            for (std::size_t j = 0; j < tables_->basis.size(); ++j) {
                int k = mul[i][j];
                if (k < 0) continue;
                r.coeffs_[k] += ci * o.coeffs_[static_cast<Eigen::Index>(j)];
            }
        }
        return r;
    }

    /// f(g) for univariate f given the Taylor coefficients of f at g(x):
    /// f_series[k] = f^(k)(g0)/k!; exact because (g - g0) is nilpotent.
    TaylorValue compose_univariate(const std::vector<double>& f_series) const {
        TaylorValue dg = *this;
        dg.coeffs_[0] = 0.0; // g - g0
        TaylorValue acc = TaylorValue::constant(n(), order(), 0.0);
        // Horner over the truncated series
        for (int k = order(); k >= 0; --k) {
            acc = acc * dg;
            acc.coeffs_[0] += f_series[static_cast<std::size_t>(k)];
        }
        return acc;
    }

    TaylorValue reciprocal() const {
        double g0 = value();
        std::vector<double> series(static_cast<std::size_t>(order()) + 1);
        double p = 1.0 / g0;
        for (int k = 0; k <= order(); ++k) {
            series[static_cast<std::size_t>(k)] = (k % 2 == 0 ? 1.0 : -1.0) * p;
            p /= g0;
        }
        return compose_univariate(series);
    }

    TaylorValue sqrt_() const {
        double g0 = value();
        double root = std::sqrt(g0);
        std::vector<double> series(static_cast<std::size_t>(order()) + 1);
        // binomial series for sqrt around g0
        double coeff = root;
        series[0] = coeff;
        double half_falling = 0.5;
        double factorial = 1.0;
        double power = root / g0;
        for (int k = 1; k <= order(); ++k) {
            factorial *= k;
            series[static_cast<std::size_t>(k)] = half_falling * power / factorial;
            half_falling *= (0.5 - k);
            power /= g0;
        }
        return compose_univariate(series);
    }

    TaylorValue exp_() const {
        double e0 = std::exp(value());
        std::vector<double> series(static_cast<std::size_t>(order()) + 1);
        double factorial = 1.0;
        for (int k = 0; k <= order(); ++k) {
            if (k > 0) factorial *= k;
            series[static_cast<std::size_t>(k)] = e0 / factorial;
        }
        return compose_univariate(series);
    }

    TaylorValue operator/(const TaylorValue& o) const { return *this * o.reciprocal(); }

private:
    std::shared_ptr<const detail::TaylorTables> tables_;
    Eigen::VectorXd coeffs_;
};

} // namespace whitney
