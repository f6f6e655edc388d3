#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "whitney/jet.hpp"

namespace whitney {

/// The basepoint-scale pair (x, delta) realized as the Gram matrix of
/// <.,.>_{x,delta} over the global monomial basis together with a whitening
/// factor W, W^T W = gram. In whitened coordinates v = W c the ball
/// B_{x,delta} is the Euclidean unit ball.
class ScaledMetric {
public:
    ScaledMetric(const Config& cfg, const Vec& x, double delta) : cfg_(cfg), x_(x), delta_(delta) {
        if (!(delta > 0.0)) throw std::invalid_argument("ScaledMetric: require delta > 0");
        const int D = cfg.dim();
        // scaled derivative functional rows: u_a = delta^{|a|-m}/sqrt(a!) d^a P(x)
        Mat A = derivative_matrix(cfg, x);
        for (int r = 0; r < D; ++r) {
            double w = std::pow(delta, cfg.index(r).order() - cfg.m()) /
                       std::sqrt(static_cast<double>(cfg.index_factorial(r)));
            A.row(r) *= w;
        }
        gram_ = A.transpose() * A;
        // symmetric eigendecomposition, eigenvalue floor at 1e-14 of the max
        Eigen::SelfAdjointEigenSolver<Mat> es(gram_);
        Vec ev = es.eigenvalues();
        const double floor_val = 1e-14 * ev.maxCoeff();
        Vec sq(D), isq(D);
        for (int i = 0; i < D; ++i) {
            double v = std::max(ev[i], floor_val);
            sq[i] = std::sqrt(v);
            isq[i] = 1.0 / sq[i];
        }
        whitener_ = sq.asDiagonal() * es.eigenvectors().transpose();
        unwhitener_ = es.eigenvectors() * isq.asDiagonal();
    }

    const Config& config() const { return cfg_; }
    const Vec& basepoint() const { return x_; }
    double scale() const { return delta_; }
    const Mat& gram() const { return gram_; }
    const Mat& whitener() const { return whitener_; }
    const Mat& unwhitener() const { return unwhitener_; }

    double inner(const Jet& p, const Jet& q) const { return p.coeffs.dot(gram_ * q.coeffs); }
    double norm(const Jet& p) const { return (whitener_ * p.coeffs).norm(); }

    Vec to_whitened(const Jet& p) const { return whitener_ * p.coeffs; }
    Jet from_whitened(const Vec& v) const { return Jet{unwhitener_ * v}; }

private:
    Config cfg_;
    Vec x_;
    double delta_;
    Mat gram_;
    Mat whitener_;
    Mat unwhitener_;
};

/// <P,Q>_{x,delta} by the explicit derivative formula
/// sum_a (1/a!) delta^{2(|a|-m)} d^a P(x) d^a Q(x).
inline double scaled_inner_product(const Config& cfg, const Jet& p, const Jet& q, const Vec& x, double delta) {
    Vec dp = derivatives_at(cfg, p, x);
    Vec dq = derivatives_at(cfg, q, x);
    double acc = 0.0;
    for (int i = 0; i < cfg.dim(); ++i) {
        double w = std::pow(delta, cfg.index(i).order() - cfg.m());
        acc += (w * dp[i]) * (w * dq[i]) / static_cast<double>(cfg.index_factorial(i));
    }
    return acc;
}

inline double scaled_inner_product(const Jet& p, const Jet& q, const ScaledMetric& metric) {
    return metric.inner(p, q);
}

inline double scaled_norm(const Config& cfg, const Jet& p, const Vec& x, double delta) {
    return std::sqrt(scaled_inner_product(cfg, p, p, x, delta));
}

} // namespace whitney
