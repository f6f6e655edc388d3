#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <algorithm>
#include <memory>
#include <optional>
#include <vector>

#include "whitney/jet.hpp"

namespace whitney {

/// One second-order-cone constraint ||A v + b|| <= radius on the stacked
/// decision vector.
struct SocConstraint {
    Mat A;
    Vec b;
    double radius = 0.0;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Unbounded, Indeterminate };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Feasible: return "feasible";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::Indeterminate: return "indeterminate";
    }
    return "?";
}

struct SolveResult {
    SolveStatus status = SolveStatus::Indeterminate;
    double value = 0.0;
    Vec point;   // feasible argmax within the level-set gap
    Vec ray;     // recession direction certificate when Unbounded
    long iterations = 0;
};

struct SolverOptions {
    double gap_tol = 1e-8;       // level-set bracket tolerance, relative to 1+|value|
    double feas_tol = 1e-9;      // max allowed constraint violation
    double stall_tol = 1e-13;    // per-cycle movement below which projections stalled
    int stall_window = 200;      // cycles without relative residual improvement => stalled
    long max_iter = 50000;       // cyclic-projection cycles per feasibility solve
    long probe_iter = 400;       // cycle cap for level-set probes inside the bisection
    double relaxation = 1.8;     // over-relaxation factor for cyclic projections, in (0,2)
    bool polish = true;          // Newton refinement on the active constraint manifold
    double unbounded_cap = 1e12; // objective growth beyond which the problem is declared unbounded
};

/// A stacked SOC feasibility/optimization system: SOC constraints plus
/// affine equalities E v = g. Projection operators are precomputed.
class SocSystem {
public:
    explicit SocSystem(int dim) : dim_(dim) {}

    int dim() const { return dim_; }

    void add_constraint(SocConstraint c) {
        ConstraintData d;
        d.A = std::move(c.A);
        d.b = std::move(c.b);
        d.radius = c.radius;
        d.At = d.A.transpose();
        Eigen::SelfAdjointEigenSolver<Mat> es(d.A * d.At);
        d.evecs = es.eigenvectors();
        d.evals = es.eigenvalues().cwiseMax(0.0);
        constraints_.push_back(std::move(d));
    }

    void add_equality(const Mat& rows, const Vec& rhs) {
        Eigen::Index old = eq_.rows();
        Mat ne(old + rows.rows(), dim_);
        Vec ng(old + rows.rows());
        if (old > 0) {
            ne.topRows(old) = eq_;
            ng.head(old) = eqg_;
        }
        ne.bottomRows(rows.rows()) = rows;
        ng.tail(rows.rows()) = rhs;
        eq_ = std::move(ne);
        eqg_ = std::move(ng);
        eq_solver_ = std::make_shared<Eigen::CompleteOrthogonalDecomposition<Mat>>(eq_);
    }

    std::size_t constraint_count() const { return constraints_.size(); }
    bool has_equalities() const { return eq_.rows() > 0; }
    const Mat& equality_matrix() const { return eq_; }
    const Vec& equality_rhs() const { return eqg_; }
    const std::vector<SocConstraint> constraints() const {
        std::vector<SocConstraint> out;
        out.reserve(constraints_.size());
        for (const auto& d : constraints_) out.push_back(SocConstraint{d.A, d.b, d.radius});
        return out;
    }

    /// Max constraint violation at v (SOC excess and equality residual).
    double residual(const Vec& v) const {
        double r = 0.0;
        for (const auto& c : constraints_) r = std::max(r, (c.A * v + c.b).norm() - c.radius);
        if (eq_.rows() > 0) r = std::max(r, (eq_ * v - eqg_).lpNorm<Eigen::Infinity>());
        return r;
    }

    void project_equalities(Vec& v) const {
        if (eq_.rows() == 0) return;
        v -= eq_solver_->solve(eq_ * v - eqg_);
    }

    /// Euclidean projection onto ||A v + b|| <= radius. The multiplier
    /// equation (I + mu A A^T) y = y0 is solved in the cached eigenbasis of
    /// A A^T and mu is located by safeguarded bisection on ||y(mu)|| = radius.
    void project_constraint(std::size_t idx, Vec& v) const {
        const ConstraintData& c = constraints_[idx];
        Vec y0 = c.A * v + c.b;
        double norm0 = y0.norm();
        if (norm0 <= c.radius) return;
        if (c.radius <= 1e-13 * (1.0 + norm0)) {
            // degenerate cone: affine set A v = -b, least-squares projection
            Vec yh = c.evecs.transpose() * y0;
            for (Eigen::Index i = 0; i < yh.size(); ++i)
                yh[i] = (c.evals[i] > 1e-14 * c.evals.maxCoeff()) ? yh[i] / c.evals[i] : 0.0;
            v -= c.At * (c.evecs * yh);
            return;
        }
        Vec yh = c.evecs.transpose() * y0;
        auto norm_at = [&](double mu) {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < yh.size(); ++i) {
                double t = yh[i] / (1.0 + mu * c.evals[i]);
                acc += t * t;
            }
            return std::sqrt(acc);
        };
        double lo = 0.0, hi = 1.0;
        for (int k = 0; k < 200 && norm_at(hi) > c.radius; ++k) hi *= 2.0;
        for (int k = 0; k < 120; ++k) {
            double mid = 0.5 * (lo + hi);
            (norm_at(mid) > c.radius ? lo : hi) = mid;
        }
        double mu = 0.5 * (lo + hi);
        Vec y = yh;
        for (Eigen::Index i = 0; i < y.size(); ++i) y[i] /= (1.0 + mu * c.evals[i]);
        v -= mu * (c.At * (c.evecs * y));
    }

    struct FeasResult {
        bool feasible = false;
        bool stalled = false;
        long cycles = 0;
    };

    /// Cyclic projections from `v`, optionally intersected with the
    /// halfspace {objective . v >= level}. Declared stalled (infeasible at
    /// this level) when the residual stops improving over a trailing window.
    FeasResult find_feasible(Vec& v, const SolverOptions& opt, const Vec* objective = nullptr,
                             double level = 0.0, long iter_cap = 0) const {
        FeasResult res;
        if (iter_cap <= 0) iter_cap = opt.max_iter;
        const double lam = opt.relaxation;
        double obj_norm2 = (objective != nullptr) ? objective->squaredNorm() : 0.0;
        double best_residual = std::numeric_limits<double>::infinity();
        int no_progress = 0;
        Vec relaxed(v.size());
        for (long cycle = 0; cycle < iter_cap; ++cycle) {
            Vec prev = v;
            project_equalities(v);
            for (std::size_t i = 0; i < constraints_.size(); ++i) {
                relaxed = v;
                project_constraint(i, relaxed);
                v += lam * (relaxed - v);
            }
            if (objective != nullptr && obj_norm2 > 0.0) {
                double d = objective->dot(v);
                if (d < level) v += (lam * (level - d) / obj_norm2) * (*objective);
            }
            res.cycles = cycle + 1;
            double r = residual(v);
            if (objective != nullptr) r = std::max(r, level - objective->dot(v));
            if (r <= opt.feas_tol) {
                res.feasible = true;
                return res;
            }
            if (r < best_residual * (1.0 - 1e-4)) {
                best_residual = r;
                no_progress = 0;
            } else if (++no_progress >= opt.stall_window) {
                res.stalled = true;
                return res;
            }
            if ((v - prev).norm() <= opt.stall_tol * (1.0 + v.norm())) {
                res.stalled = true;
                return res;
            }
        }
        res.stalled = true;
        return res;
    }

    /// Active-set Newton refinement of max c.v from a near-optimal point:
    /// solves the KKT system on the current working set, drops constraints
    /// with negative multipliers, adds violated ones, and accepts only a
    /// feasible point with a non-worse objective.
    bool polish(Vec& v, const Vec& c, const SolverOptions& opt) const {
        const int N = dim_;
        const int ne = static_cast<int>(eq_.rows());
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < constraints_.size(); ++i) {
            double nn = (constraints_[i].A * v + constraints_[i].b).norm();
            if (nn >= constraints_[i].radius * (1.0 - 3e-2) - 1e-9) active.push_back(i);
        }
        if (active.empty() && ne == 0) return false;

        Vec w = v;
        const int max_rounds = 3 * static_cast<int>(constraints_.size()) + 8;
        for (int round = 0; round < max_rounds; ++round) {
            const int na = static_cast<int>(active.size());
            if (na == 0 && ne == 0) return false;
            Vec mu = Vec::Zero(na), nu = Vec::Zero(ne);
            {
                Mat G(N, na + ne);
                for (int k = 0; k < na; ++k) {
                    const auto& cd = constraints_[active[static_cast<std::size_t>(k)]];
                    Vec y = cd.A * w + cd.b;
                    double nn = std::max(y.norm(), 1e-14);
                    G.col(k) = cd.At * (y / nn);
                }
                if (ne > 0) G.rightCols(ne) = eq_.transpose();
                Vec lam = G.completeOrthogonalDecomposition().solve(c);
                mu = lam.head(na).cwiseMax(0.0);
                if (ne > 0) nu = lam.tail(ne);
            }

            auto eval_res = [&](const Vec& vv, const Vec& m, const Vec& n) {
                Vec F(N + na + ne);
                Vec F1 = c;
                for (int k = 0; k < na; ++k) {
                    const auto& cd = constraints_[active[static_cast<std::size_t>(k)]];
                    Vec y = cd.A * vv + cd.b;
                    double nn = std::max(y.norm(), 1e-14);
                    F1 -= m[k] * (cd.At * (y / nn));
                    F[N + k] = nn - cd.radius;
                }
                if (ne > 0) F1 -= eq_.transpose() * n;
                F.head(N) = F1;
                if (ne > 0) F.tail(ne) = eq_ * vv - eqg_;
                return F;
            };

            Vec F = eval_res(w, mu, nu);
            bool converged = false;
            for (int it = 0; it < 40 && !converged; ++it) {
                if (F.norm() <= 1e-12 * (1.0 + c.norm())) {
                    converged = true;
                    break;
                }
                Mat J = Mat::Zero(N + na + ne, N + na + ne);
                for (int k = 0; k < na; ++k) {
                    const auto& cd = constraints_[active[static_cast<std::size_t>(k)]];
                    Vec y = cd.A * w + cd.b;
                    double nn = std::max(y.norm(), 1e-14);
                    Vec g = cd.At * (y / nn);
                    Mat H = (cd.At * cd.A - g * g.transpose()) / nn;
                    J.topLeftCorner(N, N) -= mu[k] * H;
                    J.block(0, N + k, N, 1) = -g;
                    J.block(N + k, 0, 1, N) = g.transpose();
                }
                if (ne > 0) {
                    J.block(0, N + na, N, ne) = -eq_.transpose();
                    J.block(N + na, 0, ne, N) = eq_;
                }
                Vec step = J.completeOrthogonalDecomposition().solve(-F);
                double t = 1.0;
                bool improved = false;
                for (int ls = 0; ls < 24; ++ls) {
                    Vec w2 = w + t * step.head(N);
                    Vec mu2 = mu + t * step.segment(N, na);
                    Vec nu2 = ne > 0 ? Vec(nu + t * step.tail(ne)) : nu;
                    Vec F2 = eval_res(w2, mu2, nu2);
                    if (F2.norm() < F.norm() * (1.0 - 1e-4 * t)) {
                        w = w2;
                        mu = mu2;
                        nu = nu2;
                        F = F2;
                        improved = true;
                        break;
                    }
                    t *= 0.5;
                }
                if (!improved) break;
                if (F.norm() <= 1e-12 * (1.0 + c.norm())) converged = true;
            }
            if (!converged && F.norm() > 1e-10 * (1.0 + c.norm())) {
                // flat face with no stationary point: walk along the tangent
                // component of the objective to the first crossing of an
                // inactive constraint and grow the working set
                Mat G(N, na + ne);
                for (int k = 0; k < na; ++k) {
                    const auto& cd = constraints_[active[static_cast<std::size_t>(k)]];
                    Vec y = cd.A * w + cd.b;
                    double nn = std::max(y.norm(), 1e-14);
                    G.col(k) = cd.At * (y / nn);
                }
                if (ne > 0) G.rightCols(ne) = eq_.transpose();
                Vec tangent = c - G * G.completeOrthogonalDecomposition().solve(c);
                if (tangent.norm() <= 1e-11 * (1.0 + c.norm())) return false;
                Vec d = tangent / tangent.norm();
                double t_hit = std::numeric_limits<double>::infinity();
                std::size_t hit_idx = 0;
                for (std::size_t i = 0; i < constraints_.size(); ++i) {
                    if (std::find(active.begin(), active.end(), i) != active.end()) continue;
                    const auto& cd = constraints_[i];
                    Vec y0 = cd.A * w + cd.b;
                    Vec ad = cd.A * d;
                    double qa = ad.squaredNorm();
                    double qb = 2.0 * y0.dot(ad);
                    double qc = y0.squaredNorm() - cd.radius * cd.radius;
                    if (qa < 1e-16) continue;
                    double disc = qb * qb - 4.0 * qa * qc;
                    if (disc < 0.0) continue;
                    double root = (-qb + std::sqrt(disc)) / (2.0 * qa);
                    if (root > 1e-12 && root < t_hit) {
                        t_hit = root;
                        hit_idx = i;
                    }
                }
                if (!std::isfinite(t_hit)) return false; // unbounded face
                double trust = 0.5 * (1.0 + w.norm());
                double step_len = std::min(t_hit, trust);
                w += step_len * d;
                for (int pull = 0; pull < 50; ++pull) {
                    bool clean = true;
                    project_equalities(w);
                    for (std::size_t k : active) {
                        Vec y = constraints_[k].A * w + constraints_[k].b;
                        if (y.norm() > constraints_[k].radius + opt.feas_tol) {
                            project_constraint(k, w);
                            clean = false;
                        }
                    }
                    if (clean) break;
                }
                if (step_len == t_hit) active.push_back(hit_idx);
                continue;
            }

            // working-set update: drop the most negative multiplier, then
            // add newly violated constraints
            bool changed = false;
            if (na > 0) {
                int worst = -1;
                double worst_mu = -1e-9;
                for (int k = 0; k < na; ++k)
                    if (mu[k] < worst_mu) {
                        worst_mu = mu[k];
                        worst = k;
                    }
                if (worst >= 0) {
                    active.erase(active.begin() + worst);
                    changed = true;
                }
            }
            for (std::size_t i = 0; i < constraints_.size() && !changed; ++i) {
                if (std::find(active.begin(), active.end(), i) != active.end()) continue;
                double excess = (constraints_[i].A * w + constraints_[i].b).norm() - constraints_[i].radius;
                if (excess > opt.feas_tol) {
                    active.push_back(i);
                    changed = true;
                }
            }
            if (changed) continue;

            if (residual(w) <= std::max(10.0 * opt.feas_tol, 1e-9) && c.dot(w) >= c.dot(v) - 1e-12) {
                v = w;
                return true;
            }
            return false;
        }
        return false;
    }

private:
    struct ConstraintData {
        Mat A;
        Mat At;
        Vec b;
        double radius = 0.0;
        Mat evecs; // eigenbasis of A A^T
        Vec evals;
    };

    int dim_;
    std::vector<ConstraintData> constraints_;
    Mat eq_ = Mat(0, 0);
    Vec eqg_ = Vec(0);
    std::shared_ptr<Eigen::CompleteOrthogonalDecomposition<Mat>> eq_solver_;
};

/// Maximize objective . v over the system: bisection on the objective level
/// set combined with cyclic projections. Returns a feasible argmax within
/// gap_tol * (1 + |value|).
inline SolveResult solve_linear_over_soc(const Vec& objective, const SocSystem& sys,
                                         const SolverOptions& opt = {},
                                         const Vec* warm_start = nullptr) {
    SolveResult out;
    Vec v = (warm_start != nullptr) ? *warm_start : Vec::Zero(sys.dim());
    auto fr = sys.find_feasible(v, opt);
    out.iterations += fr.cycles;
    if (!fr.feasible) {
        out.status = SolveStatus::Infeasible;
        return out;
    }
    if (objective.norm() == 0.0) {
        out.status = SolveStatus::Optimal;
        out.value = 0.0;
        out.point = v;
        return out;
    }

    Vec best = v;
    double t_lo = objective.dot(v);
    const Vec start_point = v;
    // outer rounds: level growth, bisection, and Newton polish; a polish
    // that escapes a collapsed bracket re-enters the next round
    for (int round = 0; round < 8; ++round) {
        const double round_start = t_lo;
        double t_hi = t_lo;
        bool have_hi = false;
        double step = std::max(1.0, std::abs(t_lo));
        while (!have_hi) {
            double t_test = t_lo + step;
            Vec w = best;
            auto r = sys.find_feasible(w, opt, &objective, t_test, opt.probe_iter);
            out.iterations += r.cycles;
            if (r.feasible) {
                best = w;
                t_lo = objective.dot(w);
                step *= 2.0;
                if (t_lo > opt.unbounded_cap * (1.0 + std::abs(objective.dot(start_point)))) {
                    out.status = SolveStatus::Unbounded;
                    Vec ray = best - start_point;
                    out.ray = ray.norm() > 0 ? Vec(ray / ray.norm()) : objective;
                    out.point = best;
                    out.value = t_lo;
                    return out;
                }
            } else {
                t_hi = t_test;
                have_hi = true;
            }
        }
        while (t_hi - t_lo > opt.gap_tol * (1.0 + std::abs(t_lo))) {
            double mid = 0.5 * (t_lo + t_hi);
            Vec w = best;
            auto r = sys.find_feasible(w, opt, &objective, mid, opt.probe_iter);
            out.iterations += r.cycles;
            if (r.feasible) {
                best = w;
                t_lo = objective.dot(w);
            } else {
                t_hi = mid;
            }
        }
        if (opt.polish) {
            Vec w = best;
            if (sys.polish(w, objective, opt)) {
                best = w;
                t_lo = objective.dot(w);
            }
        }
        if (t_lo - round_start <= 0.5 * opt.gap_tol * (1.0 + std::abs(t_lo)) && round > 0) break;
        if (!opt.polish) break;
    }
    out.status = SolveStatus::Optimal;
    out.value = t_lo;
    out.point = best;
    return out;
}

} // namespace whitney
