#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "whitney/convex.hpp"
#include "whitney/dataset.hpp"
#include "whitney/geometry.hpp"
#include "whitney/rng.hpp"

namespace whitney {

struct SubsetTooLarge : std::runtime_error {
    explicit SubsetTooLarge(int got, int cap)
        : std::runtime_error("subset of size " + std::to_string(got) + " exceeds cap " + std::to_string(cap)) {}
};

namespace detail {

/// Row of the evaluation functional P -> P(y) over the monomial basis.
inline Vec eval_row(const Config& cfg, const Vec& y) {
    Vec row(cfg.dim());
    auto pw = power_table(y, cfg.m() - 1);
    for (int i = 0; i < cfg.dim(); ++i) row[i] = monomial_at(pw, cfg.index(i));
    return row;
}

} // namespace detail

/// Shared assembly of the jet-field constraint system behind sigma-hat and
/// gamma-hat: participants are x (the ambient jet) and the points of S; each
/// participant y in S carries the interpolation equality P_y(y) = value(y),
/// and every pair (a,b) carries the Whitney compatibility constraint in both
/// basepoint orderings, |P_a - P_b|_{a,|a-b|} <= M and |P_a - P_b|_{b,|a-b|} <= M.
/// If x itself lies in S its equality binds the ambient jet.
inline ConvexJetSet whitney_field_set(const Config& cfg, const ScaledMetric& frame, const Vec& x,
                                      const std::vector<Vec>& s_points, const std::vector<double>& s_values,
                                      double bound, int max_subset = 8) {
    if (static_cast<int>(s_points.size()) > max_subset)
        throw SubsetTooLarge(static_cast<int>(s_points.size()), max_subset);
    const int D = cfg.dim();

    // participant 0 is the ambient jet at x; S points distinct from x follow
    std::vector<Vec> pts{x};
    std::vector<int> value_of{-1}; // index into s_values, -1 = free
    for (std::size_t i = 0; i < s_points.size(); ++i) {
        if ((s_points[i] - x).norm() == 0.0) {
            value_of[0] = static_cast<int>(i);
        } else {
            pts.push_back(s_points[i]);
            value_of.push_back(static_cast<int>(i));
        }
    }
    const int P = static_cast<int>(pts.size());
    ConvexJetSet set(frame, (P - 1) * D);
    const int total = set.stacked_dim();

    for (int i = 0; i < P; ++i) {
        if (value_of[static_cast<std::size_t>(i)] < 0) continue;
        Mat row = Mat::Zero(1, total);
        row.block(0, i * D, 1, D) = detail::eval_row(cfg, pts[static_cast<std::size_t>(i)]).transpose();
        Vec rhs(1);
        rhs[0] = s_values[static_cast<std::size_t>(value_of[static_cast<std::size_t>(i)])];
        set.add_equality_raw(row, rhs);
    }
    for (int i = 0; i < P; ++i) {
        for (int j = i + 1; j < P; ++j) {
            double d = (pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]).norm();
            for (int side = 0; side < 2; ++side) {
                const Vec& base = side == 0 ? pts[static_cast<std::size_t>(i)] : pts[static_cast<std::size_t>(j)];
                ScaledMetric pair_metric(cfg, base, d);
                Mat A = Mat::Zero(D, total);
                A.block(0, i * D, D, D) = pair_metric.whitener();
                A.block(0, j * D, D, D) = -pair_metric.whitener();
                set.add_soc_raw(A, Vec::Zero(D), bound);
            }
        }
    }
    return set;
}

/// sigma-hat(x, S): jets of norm-controlled fields vanishing on S.
inline ConvexJetSet sigma_hat(const Config& cfg, const ScaledMetric& frame, const Vec& x,
                              const std::vector<Vec>& s_points, double bound, int max_subset = 8) {
    std::vector<double> zeros(s_points.size(), 0.0);
    return whitney_field_set(cfg, frame, x, s_points, zeros, bound, max_subset);
}

/// gamma-hat(x, S, f): as sigma-hat with interpolation equalities P_y(y) = f(y).
inline ConvexJetSet gamma_hat(const Config& cfg, const ScaledMetric& frame, const Vec& x,
                              const std::vector<Vec>& s_points, const std::vector<double>& s_values,
                              double bound, int max_subset = 8) {
    return whitney_field_set(cfg, frame, x, s_points, s_values, bound, max_subset);
}

/// An intersection of member sets queried per direction: the support
/// function is the min over members (an upper bound, exact when the member
/// enumeration is complete), the gauge is the max over members (exact).
class IntersectionSet {
public:
    std::vector<ConvexJetSet> members;
    bool outer_approximation = false;

    SupportValue support(const Vec& u, const SolverOptions& opt = {}) const {
        SupportValue out;
        out.status = SolveStatus::Unbounded;
        for (const auto& m : members) {
            SupportValue sv = m.support(u, opt);
            if (sv.status == SolveStatus::Infeasible || sv.status == SolveStatus::Indeterminate) return sv;
            if (sv.status == SolveStatus::Unbounded) continue;
            if (out.status != SolveStatus::Optimal || sv.value < out.value) out = sv;
        }
        return out;
    }

    double gauge(const Vec& point_whitened, double rel_tol = 1e-6, const SolverOptions& opt = {}) const {
        double g = 0.0;
        for (const auto& m : members) g = std::max(g, m.gauge(point_whitened, rel_tol, opt));
        return g;
    }

    SolveStatus membership(const Vec& point_whitened, const SolverOptions& opt = {}) const {
        for (const auto& m : members)
            if (m.membership(point_whitened, opt) != SolveStatus::Feasible) return SolveStatus::Infeasible;
        return SolveStatus::Feasible;
    }
};

namespace detail {

inline void enumerate_subsets(int n_pts, int max_size, std::vector<std::vector<int>>& out, long budget) {
    std::vector<int> cur;
    // lexicographic subsets of each size
    auto rec = [&](auto&& self, int start, int remaining) -> bool {
        if (static_cast<long>(out.size()) > budget) return false;
        if (remaining == 0) {
            out.push_back(cur);
            return true;
        }
        for (int i = start; i <= n_pts - remaining; ++i) {
            cur.push_back(i);
            bool ok = self(self, i + 1, remaining - 1);
            cur.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    for (int size = 1; size <= std::min(max_size, n_pts); ++size)
        if (!rec(rec, 0, size)) return;
}

} // namespace detail

/// sigma_ell-hat(x) = intersection over S subset E, #S <= (D+1)^ell of
/// sigma-hat(x,S). Enumeration is exact up to subset_budget subsets; beyond
/// that a seeded random family is drawn and the result is flagged as an
/// outer approximation.
inline IntersectionSet sigma_ell_hat(const Config& cfg, const ScaledMetric& frame, const Vec& x,
                                     const std::vector<Vec>& e_points, int ell, long subset_budget,
                                     Rng& rng, double bound = 1.0) {
    IntersectionSet out;
    const int n_pts = static_cast<int>(e_points.size());
    long cap = 1;
    for (int i = 0; i < ell; ++i) {
        cap *= (cfg.dim() + 1);
        if (cap > n_pts) {
            cap = n_pts;
            break;
        }
    }
    const int max_size = static_cast<int>(std::min<long>(cap, n_pts));
    std::vector<std::vector<int>> subsets;
    detail::enumerate_subsets(n_pts, max_size, subsets, subset_budget);
    if (static_cast<long>(subsets.size()) > subset_budget) {
        subsets.clear();
        out.outer_approximation = true;
        for (long k = 0; k < subset_budget; ++k) {
            int size = rng.uniform_int(1, max_size);
            std::vector<int> s;
            while (static_cast<int>(s.size()) < size) {
                int cand = rng.uniform_int(0, n_pts - 1);
                if (std::find(s.begin(), s.end(), cand) == s.end()) s.push_back(cand);
            }
            std::sort(s.begin(), s.end());
            subsets.push_back(std::move(s));
        }
    }
    for (const auto& s : subsets) {
        std::vector<Vec> pts;
        pts.reserve(s.size());
        for (int i : s) pts.push_back(e_points[static_cast<std::size_t>(i)]);
        out.members.push_back(sigma_hat(cfg, frame, x, pts, bound, max_size));
    }
    return out;
}

/// gamma_ell-hat(x, f, M), same enumeration policy.
inline IntersectionSet gamma_ell_hat(const Config& cfg, const ScaledMetric& frame, const Vec& x,
                                     const Dataset& data, double bound, int ell, long subset_budget,
                                     Rng& rng) {
    IntersectionSet out;
    const int n_pts = data.size();
    long cap = 1;
    for (int i = 0; i < ell; ++i) {
        cap *= (cfg.dim() + 1);
        if (cap > n_pts) {
            cap = n_pts;
            break;
        }
    }
    const int max_size = static_cast<int>(std::min<long>(cap, n_pts));
    std::vector<std::vector<int>> subsets;
    detail::enumerate_subsets(n_pts, max_size, subsets, subset_budget);
    if (static_cast<long>(subsets.size()) > subset_budget) {
        subsets.clear();
        out.outer_approximation = true;
        for (long k = 0; k < subset_budget; ++k) {
            int size = rng.uniform_int(1, max_size);
            std::vector<int> s;
            while (static_cast<int>(s.size()) < size) {
                int cand = rng.uniform_int(0, n_pts - 1);
                if (std::find(s.begin(), s.end(), cand) == s.end()) s.push_back(cand);
            }
            std::sort(s.begin(), s.end());
            subsets.push_back(std::move(s));
        }
    }
    for (const auto& s : subsets) {
        std::vector<Vec> pts;
        std::vector<double> vals;
        for (int i : s) {
            pts.push_back(data.points[static_cast<std::size_t>(i)]);
            vals.push_back(data.values[static_cast<std::size_t>(i)]);
        }
        out.members.push_back(gamma_hat(cfg, frame, x, pts, vals, bound, max_size));
    }
    return out;
}

/// Joint feasibility of gamma_ell-hat: one shared ambient jet with an
/// independent auxiliary field per member subset. The joint convex program
/// subsumes the Helly argument for nonemptiness.
inline bool gamma_ell_nonempty(const IntersectionSet& gamma, const SolverOptions& opt = {}) {
    if (gamma.members.empty()) return true;
    const int D = gamma.members[0].ambient_dim();
    int total = D;
    std::vector<int> offsets;
    for (const auto& m : gamma.members) {
        offsets.push_back(total);
        total += m.aux_dim();
    }
    SocSystem sys(total);
    for (std::size_t k = 0; k < gamma.members.size(); ++k) {
        SocSystem sub = gamma.members[k].build_system();
        const int aux = gamma.members[k].aux_dim();
        auto lift = [&](const Mat& A) {
            Mat out_rows = Mat::Zero(A.rows(), total);
            out_rows.leftCols(D) = A.leftCols(D);
            if (aux > 0) out_rows.middleCols(offsets[k], aux) = A.rightCols(aux);
            return out_rows;
        };
        for (const auto& c : sub.constraints()) sys.add_constraint(SocConstraint{lift(c.A), c.b, c.radius});
        if (sub.has_equalities()) sys.add_equality(lift(sub.equality_matrix()), sub.equality_rhs());
    }
    Vec v = Vec::Zero(total);
    return sys.find_feasible(v, opt).feasible;
}

struct WhitneyCoefficient {
    SolveStatus status = SolveStatus::Indeterminate;
    double value = 0.0; // lower-bound estimate of w_x(Omega)
    int samples = 0;
};

/// Sampled lower bound on the Whitney coefficient of Omega at x: for delta
/// on the grid, boundary points P of Omega cap B_{x,delta} and unit jets Q
/// are multiplied and the least r with P (.)_x Q in r delta^m Omega is found
/// by bisection on membership.
inline WhitneyCoefficient whitney_coefficient_estimate(const Config& cfg, const ConvexJetSet& omega,
                                                       const Vec& x, const std::vector<double>& delta_grid,
                                                       int sample_count, Rng& rng,
                                                       const SolverOptions& opt = {}) {
    WhitneyCoefficient out;
    const int D = cfg.dim();
    for (double delta : delta_grid) {
        ScaledMetric metric(cfg, x, delta);
        ConvexJetSet framed = omega.with_frame(metric);
        ConvexJetSet slice = framed.intersect_ball(1.0);
        const double dm = std::pow(delta, cfg.m());
        for (int s = 0; s < sample_count; ++s) {
            Vec u = rng.unit_vector(D);
            SupportValue sv = slice.support(u, opt);
            if (sv.status == SolveStatus::Infeasible) {
                out.status = SolveStatus::Infeasible;
                return out;
            }
            if (sv.status != SolveStatus::Optimal) continue;
            Jet p = metric.from_whitened(sv.argmax);
            Jet q = metric.from_whitened(rng.unit_vector(D));
            Jet prod = jet_product(cfg, p, q, x);
            Vec target = metric.to_whitened(prod) / dm;
            double g = framed.gauge(target, 1e-4, opt);
            if (std::isfinite(g)) {
                out.value = std::max(out.value, g);
                ++out.samples;
            }
        }
    }
    out.status = SolveStatus::Optimal;
    return out;
}

struct ContainmentResult {
    SolveStatus status = SolveStatus::Indeterminate;
    double measured_c = 0.0;
    bool pass = false;
};

/// Quasicontinuity of the surrogate sets: on a direction net,
/// gamma_ell(x,f,M) lies in gamma_{ell-1}(x,f,M) + C M B_{x,delta} and
/// sigma-hat(x) lies in sigma-hat(y) + C B_{x,delta}; the measured constant
/// is regression-tested against the recorded baseline.
inline ContainmentResult quasicontinuity_check(const Config& cfg, const Dataset& data, const Vec& x,
                                               const Vec& y, double delta, int ell, double bound,
                                               double baseline_c, long subset_budget, Rng& rng,
                                               int net_count = 32, const SolverOptions& opt = {}) {
    if ((x - y).norm() > delta) throw std::invalid_argument("quasicontinuity_check: require |x-y| <= delta");
    if (ell < 1) throw std::invalid_argument("quasicontinuity_check: require ell >= 1");
    ContainmentResult out;
    const int D = cfg.dim();
    ScaledMetric frame(cfg, x, delta);
    IntersectionSet g_ell = gamma_ell_hat(cfg, frame, x, data, bound, ell, subset_budget, rng);
    IntersectionSet g_prev = gamma_ell_hat(cfg, frame, x, data, bound, ell - 1, subset_budget, rng);
    ConvexJetSet sx = sigma_hat(cfg, frame, x, data.points, 1.0, data.size());
    ConvexJetSet sy = sigma_hat(cfg, frame, y, data.points, 1.0, data.size());

    double worst = 0.0;
    auto net = sphere_net(D, net_count);
    for (const Vec& u : net) {
        SupportValue a = g_ell.support(u, opt);
        SupportValue b = g_prev.support(u, opt);
        if (a.status == SolveStatus::Optimal && b.status == SolveStatus::Optimal)
            worst = std::max(worst, (a.value - b.value) / bound);
        else if (a.status == SolveStatus::Optimal && b.status != SolveStatus::Unbounded)
            return out; // Indeterminate

        SupportValue hx = sx.support(u, opt);
        SupportValue hy = sy.support(u, opt);
        if (hx.status == SolveStatus::Optimal && hy.status == SolveStatus::Optimal)
            worst = std::max(worst, hx.value - hy.value);
        else if (hx.status == SolveStatus::Optimal && hy.status != SolveStatus::Unbounded)
            return out;
    }
    out.status = SolveStatus::Optimal;
    out.measured_c = std::max(0.0, worst);
    out.pass = out.measured_c <= baseline_c * 1.1;
    return out;
}

/// Localization: sigma-hat(z, E cap B) cap B_{z,diam B} is contained in
/// C-hat * sigma-hat(z, E), support-wise on a net; fixture regression.
inline ContainmentResult localization_check(const Config& cfg, const std::vector<Vec>& e_points,
                                            const Ball& b, const Vec& z, double baseline_c,
                                            int net_count = 32, const SolverOptions& opt = {}) {
    if ((z - b.center).norm() > 0.5 * b.radius + 1e-12)
        throw std::invalid_argument("localization_check: require z in (1/2)B");
    ContainmentResult out;
    const int D = cfg.dim();
    std::vector<Vec> local;
    for (const Vec& p : e_points)
        if (b.contains(p)) local.push_back(p);

    ScaledMetric frame(cfg, z, b.diam());
    ConvexJetSet lhs = sigma_hat(cfg, frame, z, local, 1.0, std::max<int>(8, static_cast<int>(local.size())))
                           .intersect_ball(1.0);
    ConvexJetSet rhs = sigma_hat(cfg, frame, z, e_points, 1.0, std::max<int>(8, static_cast<int>(e_points.size())));

    double worst = 0.0;
    auto net = sphere_net(D, net_count);
    for (const Vec& u : net) {
        SupportValue a = lhs.support(u, opt);
        SupportValue c = rhs.support(u, opt);
        if (a.status != SolveStatus::Optimal || c.status != SolveStatus::Optimal) return out;
        if (c.value < 1e-12) {
            if (a.value > 1e-9) return out;
            continue;
        }
        worst = std::max(worst, a.value / c.value);
    }
    out.status = SolveStatus::Optimal;
    out.measured_c = worst;
    out.pass = out.measured_c <= baseline_c * 1.1;
    return out;
}

} // namespace whitney
