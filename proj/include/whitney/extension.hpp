#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "whitney/geometry.hpp"
#include "whitney/metric.hpp"
#include "whitney/partition.hpp"
#include "whitney/rng.hpp"
#include "whitney/taylor_value.hpp"

namespace whitney {

struct EmptyField : std::runtime_error {
    EmptyField() : std::runtime_error("whitney_extend: empty jet field") {}
};
struct IncompatibleLocals : std::runtime_error {
    explicit IncompatibleLocals(double measured, double bound)
        : std::runtime_error("glue: pairwise jet compatibility " + std::to_string(measured) +
                             " exceeds bound " + std::to_string(bound)) {}
};

/// Jets prescribed on a finite point set.
struct JetField {
    std::vector<Vec> points;
    std::vector<Jet> jets;

    int size() const { return static_cast<int>(points.size()); }
};

/// Largest pairwise Whitney compatibility norm of the field (both basepoint
/// orderings per pair).
inline double whitney_field_bound(const Config& cfg, const JetField& field) {
    double m = 0.0;
    for (int i = 0; i < field.size(); ++i) {
        for (int j = i + 1; j < field.size(); ++j) {
            double d = (field.points[static_cast<std::size_t>(i)] - field.points[static_cast<std::size_t>(j)]).norm();
            Jet diff{field.jets[static_cast<std::size_t>(i)].coeffs - field.jets[static_cast<std::size_t>(j)].coeffs};
            m = std::max(m, scaled_norm(cfg, diff, field.points[static_cast<std::size_t>(i)], d));
            m = std::max(m, scaled_norm(cfg, diff, field.points[static_cast<std::size_t>(j)], d));
        }
    }
    return m;
}

/// An axis-aligned cube given by its level in the dyadic tree over a root
/// cube and integer coordinates.
struct DyadicCube {
    Vec corner; // lower corner
    double side = 0.0;

    Vec center() const { return corner + 0.5 * side * Vec::Ones(corner.size()); }

    double dist_to(const Vec& p) const {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            double lo = corner[i], hi = corner[i] + side;
            double d = p[i] < lo ? lo - p[i] : (p[i] > hi ? p[i] - hi : 0.0);
            acc += d * d;
        }
        return std::sqrt(acc);
    }

    /// is x inside the (9/8)-dilate?
    bool dilate_contains(const Vec& x, double factor = 9.0 / 8.0) const {
        Vec c = center();
        double half = 0.5 * side * factor;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            if (std::abs(x[i] - c[i]) > half + 1e-14 * side) return false;
        return true;
    }
};

/// The classical Whitney extension of a jet field: dyadic cubes shrinking
/// toward the data points carry the nearest prescribed jet, blended by a
/// cube-level partition of unity built from the same plateau profile.
/// Evaluation is lazy: the finitely many cubes active at a query point are
/// found by descending the tree.
class WhitneyExtension {
public:
    WhitneyExtension(Config cfg, JetField field, Vec root_corner, double root_side,
                     double support_factor = 3.0)
        : cfg_(std::move(cfg)), field_(std::move(field)), root_corner_(std::move(root_corner)),
          root_side_(root_side), support_factor_(support_factor) {
        if (field_.size() == 0) throw EmptyField();
        whitney_bound_ = whitney_field_bound(cfg_, field_);
    }

    const Config& config() const { return cfg_; }
    const JetField& field() const { return field_; }
    double whitney_bound() const { return whitney_bound_; }

    double value(const Vec& x) const { return jet_at(x, 0).value(); }

    /// Taylor jet of F at x to the given derivative order (<= m).
    TaylorValue jet_at(const Vec& x, int order) const {
        const int n = cfg_.n();
        // at (or numerically at) a data point the prescribed jet is exact
        int nearest = nearest_point(x);
        double dist = (x - field_.points[static_cast<std::size_t>(nearest)]).norm();
        if (dist <= 1e-13 * root_side_) return polynomial_jet(field_.jets[static_cast<std::size_t>(nearest)], x, order);

        std::vector<DyadicCube> active;
        collect_active(DyadicCube{root_corner_, root_side_}, x, active, 0);
        if (active.empty()) {
            // query outside the refined region: fall back to the nearest jet
            return polynomial_jet(field_.jets[static_cast<std::size_t>(nearest)], x, order);
        }
        TaylorValue total = TaylorValue::constant(n, order, 0.0);
        std::vector<TaylorValue> psis;
        std::vector<int> owner;
        for (const auto& q : active) {
            psis.push_back(cube_bump_jet(q, x, order));
            owner.push_back(nearest_point_to_cube(q));
            total += psis.back();
        }
        if (total.value() <= 0.0) return polynomial_jet(field_.jets[static_cast<std::size_t>(nearest)], x, order);
        TaylorValue inv = total.reciprocal();
        TaylorValue acc = TaylorValue::constant(n, order, 0.0);
        for (std::size_t i = 0; i < psis.size(); ++i) {
            TaylorValue phi = psis[i] * inv;
            acc += phi * polynomial_jet(field_.jets[static_cast<std::size_t>(owner[i])], x, order);
        }
        return acc;
    }

    /// All partial derivatives d^a F(x) for |a| <= m-1, in jet basis order.
    Vec derivatives(const Vec& x) const {
        TaylorValue t = jet_at(x, cfg_.m() - 1);
        Vec out(cfg_.dim());
        for (int i = 0; i < cfg_.dim(); ++i) out[i] = t.derivative(cfg_.index(i));
        return out;
    }

    /// J_x F as a polynomial in the global basis.
    Jet taylor_at(const Vec& x) const {
        TaylorValue t = jet_at(x, cfg_.m() - 1);
        Poly local(cfg_.n(), cfg_.m() - 1);
        for (std::size_t i = 0; i < t.basis().size(); ++i)
            local.coeffs[static_cast<Eigen::Index>(i)] = t.coeffs()[static_cast<Eigen::Index>(i)];
        // local is centered at x: F(z) ~ sum c_a (z-x)^a; recenter to 0
        Jet shifted = translate(cfg_, Jet{local.coeffs}, x);
        return shifted;
    }

private:
    /// jet of the polynomial P (global basis) at x as a TaylorValue
    TaylorValue polynomial_jet(const Jet& p, const Vec& x, int order) const {
        TaylorValue out(cfg_.n(), order);
        // coefficients around x: b_a = d^a P(x) / a!
        Vec derivs = derivatives_at(cfg_, p, x);
        for (std::size_t i = 0; i < out.basis().size(); ++i) {
            const MultiIndex& a = out.basis()[i];
            int pos = cfg_.position(a);
            if (pos < 0) continue; // above jet degree: zero
            out.coeffs()[static_cast<Eigen::Index>(i)] =
                derivs[pos] / static_cast<double>(multi_factorial(a));
        }
        return out;
    }

    int nearest_point(const Vec& x) const {
        int best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (int i = 0; i < field_.size(); ++i) {
            double d = (x - field_.points[static_cast<std::size_t>(i)]).norm();
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        return best;
    }

    int nearest_point_to_cube(const DyadicCube& q) const {
        int best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (int i = 0; i < field_.size(); ++i) {
            double d = q.dist_to(field_.points[static_cast<std::size_t>(i)]);
            if (d < bd - 1e-15 * root_side_) {
                bd = d;
                best = i;
            }
        }
        return best;
    }

    double dist_to_field(const DyadicCube& q) const {
        double bd = std::numeric_limits<double>::infinity();
        for (int i = 0; i < field_.size(); ++i)
            bd = std::min(bd, q.dist_to(field_.points[static_cast<std::size_t>(i)]));
        return bd;
    }

    bool is_leaf(const DyadicCube& q) const { return q.side <= 0.5 * dist_to_field(q); }

    void collect_active(const DyadicCube& q, const Vec& x, std::vector<DyadicCube>& out, int depth) const {
        if (!q.dilate_contains(x, support_factor_ + 1e-12)) return;
        if (depth > 0 && is_leaf(q)) {
            out.push_back(q);
            return;
        }
        if (depth == 0 && is_leaf(q)) {
            // root itself satisfies the stopping rule: treat as single leaf
            out.push_back(q);
            return;
        }
        if (depth > 60) return; // query numerically on top of a data point
        const int n = cfg_.n();
        const double half = 0.5 * q.side;
        const int children = 1 << n;
        for (int mask = 0; mask < children; ++mask) {
            DyadicCube child;
            child.corner = q.corner;
            child.side = half;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) child.corner[i] += half;
            collect_active(child, x, out, depth + 1);
        }
    }

    /// cube plateau bump: 1 on Q, 0 outside (9/8)Q, per-coordinate profile
    TaylorValue cube_bump_jet(const DyadicCube& q, const Vec& x, int order) const {
        const int n = cfg_.n();
        Vec c = q.center();
        const double inner = 0.5 * q.side;
        const double outer = 0.5 * support_factor_ * q.side;
        TaylorValue acc = TaylorValue::constant(n, order, 1.0);
        for (int i = 0; i < n; ++i) {
            double di = std::abs(x[i] - c[i]);
            double u0 = (outer - di) / (outer - inner);
            const double edge = 1e-7;
            if (u0 <= edge) return TaylorValue::constant(n, order, 0.0);
            if (u0 >= 1.0 - edge) continue; // factor is identically 1 near x
            TaylorValue xi = TaylorValue::variable(n, order, i, x[i]);
            TaylorValue dist = (x[i] >= c[i]) ? xi - TaylorValue::constant(n, order, c[i])
                                              : TaylorValue::constant(n, order, c[i]) - xi;
            TaylorValue u = (TaylorValue::constant(n, order, outer) - dist) * (1.0 / (outer - inner));
            acc = acc * bump::smoothstep_jet(u);
        }
        return acc;
    }

    Config cfg_;
    JetField field_;
    Vec root_corner_;
    double root_side_;
    double support_factor_;
    double whitney_bound_ = 0.0;
};

struct ExtendOptions {
    double warn_bound = std::numeric_limits<double>::infinity();
    bool* warned = nullptr;
    double support_factor = 3.0;
};

/// Build the extension over a cube containing the given box.
inline WhitneyExtension whitney_extend(const Config& cfg, const JetField& field, const Vec& box_lo,
                                       const Vec& box_hi, const ExtendOptions& opt = {}) {
    if (field.size() == 0) throw EmptyField();
    double side = (box_hi - box_lo).maxCoeff();
    Vec center = 0.5 * (box_lo + box_hi);
    Vec corner = center - 0.5 * side * Vec::Ones(cfg.n());
    WhitneyExtension ext(cfg, field, corner, side, opt.support_factor);
    if (ext.whitney_bound() > opt.warn_bound && opt.warned != nullptr) *opt.warned = true;
    return ext;
}

/// A local function attached to a cover ball: either a global polynomial
/// (anchor-only balls) or a Whitney extension of a local field.
class LocalFunction {
public:
    explicit LocalFunction(Jet polynomial) : poly_(std::move(polynomial)) {}
    explicit LocalFunction(WhitneyExtension ext) : ext_(std::make_shared<WhitneyExtension>(std::move(ext))) {}

    TaylorValue jet_at(const Config& cfg, const Vec& x, int order) const {
        if (ext_) return ext_->jet_at(x, order);
        TaylorValue out(cfg.n(), order);
        Vec derivs = derivatives_at(cfg, *poly_, x);
        for (std::size_t i = 0; i < out.basis().size(); ++i) {
            int pos = cfg.position(out.basis()[i]);
            if (pos < 0) continue;
            out.coeffs()[static_cast<Eigen::Index>(i)] =
                derivs[pos] / static_cast<double>(multi_factorial(out.basis()[i]));
        }
        return out;
    }

    double value(const Config& cfg, const Vec& x) const { return jet_at(cfg, x, 0).value(); }

    Jet taylor_at(const Config& cfg, const Vec& x) const {
        if (ext_) return ext_->taylor_at(x);
        return *poly_;
    }

private:
    std::optional<Jet> poly_;
    std::shared_ptr<WhitneyExtension> ext_;
};

/// F = sum theta_B F_B over the cover; jets via truncated Taylor products.
class GluedExtension {
public:
    GluedExtension(Config cfg, PartitionOfUnity partition, std::vector<LocalFunction> locals)
        : cfg_(std::move(cfg)), partition_(std::move(partition)), locals_(std::move(locals)) {}

    const PartitionOfUnity& partition() const { return partition_; }

    TaylorValue jet_at(const Vec& x, int order) const {
        const int n = cfg_.n();
        std::vector<std::size_t> active;
        std::vector<TaylorValue> thetas = partition_.theta_jets(x, order, &active);
        TaylorValue acc = TaylorValue::constant(n, order, 0.0);
        for (std::size_t k : active) acc += thetas[k] * locals_[k].jet_at(cfg_, x, order);
        return acc;
    }

    double value(const Vec& x) const { return jet_at(x, 0).value(); }

    Vec derivatives(const Vec& x) const {
        TaylorValue t = jet_at(x, cfg_.m() - 1);
        Vec out(cfg_.dim());
        for (int i = 0; i < cfg_.dim(); ++i) out[i] = t.derivative(cfg_.index(i));
        return out;
    }

private:
    Config cfg_;
    PartitionOfUnity partition_;
    std::vector<LocalFunction> locals_;
};

inline Jet locals_taylor(const Config& cfg, const LocalFunction& f, const Vec& x) {
    return f.taylor_at(cfg, x);
}

struct GlueCheck {
    double local_bound = 0.0;   // max empirical bound M0 over the hypotheses
    double pair_compat = 0.0;   // max pairwise anchor jet incompatibility
};

/// Glue local functions over a cover with anchors z_B: verifies the pairwise
/// jet compatibility |J_{z_B} F_B - J_{z_B'} F_B'|_{z_B, diam B} <= bound
/// for neighboring balls before assembling.
inline GluedExtension glue(const Config& cfg, const std::vector<Ball>& cover,
                           const std::vector<Vec>& anchors, const std::vector<LocalFunction>& locals,
                           double compat_bound, GlueCheck* check = nullptr) {
    PartitionOfUnity pou(cover);
    double worst = 0.0;
    for (std::size_t i = 0; i < cover.size(); ++i) {
        for (std::size_t j = i + 1; j < cover.size(); ++j) {
            if (!cover[i].dilate(1.2).intersects(cover[j].dilate(1.2))) continue;
            Jet ji = locals_taylor(cfg, locals[i], anchors[i]);
            Jet jj = locals_taylor(cfg, locals[j], anchors[j]);
            Jet diff{ji.coeffs - jj.coeffs};
            worst = std::max(worst, scaled_norm(cfg, diff, anchors[i], cover[i].diam()));
        }
    }
    if (check != nullptr) check->pair_compat = worst;
    if (worst > compat_bound) throw IncompatibleLocals(worst, compat_bound);
    return GluedExtension(cfg, std::move(pou), locals);
}

/// Sampled lower bound on the C^{m-1,1} seminorm: max over pairs of the
/// root-sum-square of top-order derivative differences divided by the pair
/// distance. Pairs combine a grid sweep with adversarial near-diagonal pairs
/// clustered at the marked points.
template <typename F>
double empirical_seminorm(const Config& cfg, const F& f, const Vec& box_lo, const Vec& box_hi,
                          const std::vector<Vec>& cluster_points, int pair_budget, Rng& rng) {
    const int n = cfg.n();
    std::vector<int> top;
    for (int i = 0; i < cfg.dim(); ++i)
        if (cfg.index(i).order() == cfg.m() - 1) top.push_back(i);

    auto top_derivs = [&](const Vec& x) {
        Vec all = f.derivatives(x);
        Vec out(static_cast<Eigen::Index>(top.size()));
        for (std::size_t k = 0; k < top.size(); ++k) out[static_cast<Eigen::Index>(k)] = all[top[k]];
        return out;
    };
    auto pair_slope = [&](const Vec& a, const Vec& b) {
        double d = (a - b).norm();
        if (d < 1e-14) return 0.0;
        return (top_derivs(a) - top_derivs(b)).norm() / d;
    };

    double best = 0.0;
    // grid sweep: consecutive pairs along random segments
    int segments = std::max(4, pair_budget / 64);
    for (int s = 0; s < segments; ++s) {
        Vec a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = rng.uniform(box_lo[i], box_hi[i]);
            b[i] = rng.uniform(box_lo[i], box_hi[i]);
        }
        const int steps = 16;
        Vec prev = a;
        for (int k = 1; k <= steps; ++k) {
            Vec cur = a + (static_cast<double>(k) / steps) * (b - a);
            best = std::max(best, pair_slope(prev, cur));
            best = std::max(best, pair_slope(a, cur));
            prev = cur;
        }
    }
    // adversarial near-diagonal pairs near the cluster points
    for (const Vec& y : cluster_points) {
        for (int k = 0; k < 24; ++k) {
            double eps = std::pow(10.0, rng.uniform(-5.0, -0.5)) * (box_hi - box_lo).maxCoeff();
            Vec dir = rng.unit_vector(n);
            Vec a = y + eps * dir;
            Vec b = y + 2.0 * eps * dir;
            for (int i = 0; i < n; ++i) {
                a[i] = std::clamp(a[i], box_lo[i], box_hi[i]);
                b[i] = std::clamp(b[i], box_lo[i], box_hi[i]);
            }
            best = std::max(best, pair_slope(a, b));
            Vec c = y - eps * dir;
            for (int i = 0; i < n; ++i) c[i] = std::clamp(c[i], box_lo[i], box_hi[i]);
            best = std::max(best, pair_slope(a, c));
        }
    }
    return best;
}

} // namespace whitney
