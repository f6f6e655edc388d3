#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "whitney/geometry.hpp"
#include "whitney/taylor_value.hpp"

namespace whitney {

struct NormalizationUnderflow : std::runtime_error {
    NormalizationUnderflow() : std::runtime_error("partition normalization below 1: cover violated") {}
};

namespace bump {

/// One-sided profile B(u) = exp(1 - 1/u) on u > 0, flat at u = 0+.
inline double profile(double u) { return u <= 0.0 ? 0.0 : std::exp(1.0 - 1.0 / u); }

/// Smooth step s(u) = B(u) / (B(u) + B(1-u)): 0 for u <= 0, 1 for u >= 1,
/// flat to all orders at both ends.
inline double smoothstep(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double a = profile(u);
    double b = profile(1.0 - u);
    return a / (a + b);
}

/// Taylor jet of the smooth step at u (a TaylorValue of the clamped
/// argument). Plateau regions short-circuit to constants.
inline TaylorValue smoothstep_jet(const TaylorValue& u) {
    const double u0 = u.value();
    const double edge = 1e-7; // deep flat region; all tracked orders vanish
    if (u0 <= edge) return TaylorValue::constant(u.n(), u.order(), 0.0);
    if (u0 >= 1.0 - edge) return TaylorValue::constant(u.n(), u.order(), 1.0);
    auto b_of = [&](const TaylorValue& t) {
        // exp(1 - 1/t)
        TaylorValue inv = t.reciprocal();
        TaylorValue arg = TaylorValue::constant(t.n(), t.order(), 1.0) - inv;
        return arg.exp_();
    };
    TaylorValue a = b_of(u);
    TaylorValue b = b_of(TaylorValue::constant(u.n(), u.order(), 1.0) - u);
    return a / (a + b);
}

/// Radial plateau bump for a ball: 1 on inner_radius, 0 outside
/// outer_radius, smooth-step transition in between; value-level evaluation.
inline double radial(const Vec& x, const Vec& center, double inner_radius, double outer_radius) {
    double rho = (x - center).norm();
    return smoothstep((outer_radius - rho) / (outer_radius - inner_radius));
}

/// Taylor jet of the radial bump at x to the given order.
inline TaylorValue radial_jet(const Vec& x, const Vec& center, double inner_radius, double outer_radius,
                              int order) {
    const int n = static_cast<int>(x.size());
    double rho0 = (x - center).norm();
    // plateau short-circuits keep the sqrt argument away from 0
    double u0 = (outer_radius - rho0) / (outer_radius - inner_radius);
    const double edge = 1e-7;
    if (u0 <= edge) return TaylorValue::constant(n, order, 0.0);
    if (u0 >= 1.0 - edge) return TaylorValue::constant(n, order, 1.0);
    TaylorValue rho2 = TaylorValue::constant(n, order, 0.0);
    for (int i = 0; i < n; ++i) {
        TaylorValue d = TaylorValue::variable(n, order, i, x[i]) - TaylorValue::constant(n, order, center[i]);
        rho2 += d * d;
    }
    TaylorValue rho = rho2.sqrt_();
    TaylorValue u = (TaylorValue::constant(n, order, outer_radius) - rho) * (1.0 / (outer_radius - inner_radius));
    return smoothstep_jet(u);
}

} // namespace bump

/// Partition of unity over a ball cover: theta_B = psi_B / Psi with psi_B a
/// radial plateau bump supported on (6/5)B and identically 1 on B.
class PartitionOfUnity {
public:
    explicit PartitionOfUnity(std::vector<Ball> balls) : balls_(std::move(balls)) {}

    const std::vector<Ball>& balls() const { return balls_; }
    std::size_t size() const { return balls_.size(); }

    double psi(std::size_t i, const Vec& x) const {
        const Ball& b = balls_[i];
        return bump::radial(x, b.center, b.radius, 1.2 * b.radius);
    }

    double theta(std::size_t i, const Vec& x) const {
        double total = 0.0;
        for (std::size_t k = 0; k < balls_.size(); ++k) total += psi(k, x);
        if (total < 1.0 - 1e-9) throw NormalizationUnderflow();
        return psi(i, x) / total;
    }

    /// all theta values at once
    std::vector<double> thetas(const Vec& x) const {
        std::vector<double> out(balls_.size());
        double total = 0.0;
        for (std::size_t k = 0; k < balls_.size(); ++k) {
            out[k] = psi(k, x);
            total += out[k];
        }
        if (total < 1.0 - 1e-9) throw NormalizationUnderflow();
        for (auto& v : out) v /= total;
        return out;
    }

    TaylorValue psi_jet(std::size_t i, const Vec& x, int order) const {
        const Ball& b = balls_[i];
        return bump::radial_jet(x, b.center, b.radius, 1.2 * b.radius, order);
    }

    /// Taylor jets of every theta_B at x; indices of balls with nonzero
    /// support at x are returned in `active`.
    std::vector<TaylorValue> theta_jets(const Vec& x, int order, std::vector<std::size_t>* active = nullptr) const {
        const int n = static_cast<int>(x.size());
        TaylorValue total = TaylorValue::constant(n, order, 0.0);
        std::vector<TaylorValue> psis;
        psis.reserve(balls_.size());
        for (std::size_t k = 0; k < balls_.size(); ++k) {
            psis.push_back(psi_jet(k, x, order));
            total += psis.back();
        }
        if (total.value() < 1.0 - 1e-9) throw NormalizationUnderflow();
        TaylorValue inv = total.reciprocal();
        std::vector<TaylorValue> out;
        out.reserve(balls_.size());
        for (std::size_t k = 0; k < balls_.size(); ++k) {
            out.push_back(psis[k] * inv);
            if (active != nullptr && psis[k].value() > 0.0) active->push_back(k);
        }
        return out;
    }

private:
    std::vector<Ball> balls_;
};

inline PartitionOfUnity build_partition(const std::vector<Ball>& cover) { return PartitionOfUnity(cover); }

} // namespace whitney
