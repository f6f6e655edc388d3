#pragma once

#include <Eigen/Dense>

#include <stdexcept>

#include "whitney/jet.hpp"

namespace whitney {

/// A closed ball in R^n.
struct Ball {
    Vec center;
    double radius = 0.0;

    Ball() = default;
    Ball(Vec c, double r) : center(std::move(c)), radius(r) {
        if (!(radius > 0.0)) throw std::invalid_argument("Ball: require radius > 0");
    }

    double diam() const { return 2.0 * radius; }

    /// lambda B: same center, scaled radius
    Ball dilate(double lambda) const { return Ball(center, lambda * radius); }

    bool contains(const Vec& x) const { return (x - center).norm() <= radius; }
    bool contains(const Ball& other) const {
        return (other.center - center).norm() + other.radius <= radius + 1e-12 * radius;
    }
    bool intersects(const Ball& other) const {
        return (other.center - center).norm() <= radius + other.radius;
    }
    double dist(const Ball& other) const {
        return std::max(0.0, (other.center - center).norm() - radius - other.radius);
    }
};

/// Smallest ball containing all points (Ritter-style two-pass estimate
/// followed by corrective growth; adequate for cover roots).
inline Ball enclosing_ball(const std::vector<Vec>& pts) {
    if (pts.empty()) throw std::invalid_argument("enclosing_ball: empty point set");
    Vec c = pts[0];
    double r = 0.0;
    for (int pass = 0; pass < 3; ++pass) {
        r = 0.0;
        Vec far = pts[0];
        for (const Vec& p : pts) {
            double d = (p - c).norm();
            if (d > r) {
                r = d;
                far = p;
            }
        }
        if (pass < 2 && r > 0.0) c = 0.5 * (c + far);
    }
    for (const Vec& p : pts) r = std::max(r, (p - c).norm());
    return Ball(c, std::max(r, 1e-12) * 1.0000001);
}

} // namespace whitney
