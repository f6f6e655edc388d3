#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "whitney/metric.hpp"
#include "whitney/rng.hpp"
#include "whitney/soc.hpp"

namespace whitney {

struct SupportValue {
    SolveStatus status = SolveStatus::Indeterminate;
    double value = 0.0;
    Vec argmax; // ambient point in whitened coordinates, when Optimal
};

/// A symmetric (or affine) convex body in jet space: the projection onto the
/// ambient jet block of an SOC-constrained region over stacked raw
/// coefficient vectors [ambient; aux]. Queries run in the whitened
/// coordinates of the designated frame metric, in which B_{x,delta} of the
/// frame is the Euclidean unit ball.
class ConvexJetSet {
public:
    ConvexJetSet(ScaledMetric frame, int dim_aux = 0)
        : frame_(std::make_shared<ScaledMetric>(std::move(frame))), dim_aux_(dim_aux) {}

    int ambient_dim() const { return frame_->config().dim(); }
    int aux_dim() const { return dim_aux_; }
    int stacked_dim() const { return ambient_dim() + dim_aux_; }
    const ScaledMetric& frame() const { return *frame_; }

    /// SOC constraint on the stacked raw vector.
    void add_soc_raw(Mat A, Vec b, double radius) {
        symmetric_ = symmetric_ && (b.lpNorm<Eigen::Infinity>() == 0.0);
        constraints_.push_back(SocConstraint{std::move(A), std::move(b), radius});
    }

    /// Affine equalities on the stacked raw vector.
    void add_equality_raw(const Mat& rows, const Vec& rhs) {
        symmetric_ = symmetric_ && (rhs.lpNorm<Eigen::Infinity>() == 0.0);
        eq_rows_.push_back(rows);
        eq_rhs_.push_back(rhs);
    }

    bool symmetric() const { return symmetric_; }

    /// Solver-ready system over the stacked raw vector; each SOC constraint
    /// is rescaled to unit radius so violations read relatively.
    SocSystem build_system() const {
        SocSystem sys(stacked_dim());
        for (const auto& c : constraints_) {
            double s = c.radius > 1e-300 ? c.radius : std::max(1.0, c.A.norm());
            sys.add_constraint(SocConstraint{c.A / s, c.b / s, c.radius / s});
        }
        for (std::size_t i = 0; i < eq_rows_.size(); ++i) {
            double s = std::max(1.0, eq_rows_[i].norm());
            sys.add_equality(eq_rows_[i] / s, eq_rhs_[i] / s);
        }
        return sys;
    }

    /// h_Omega(u) = sup <u, v> over the projected set, u in whitened coords.
    SupportValue support(const Vec& u, const SolverOptions& opt = {}) const {
        Vec obj = Vec::Zero(stacked_dim());
        obj.head(ambient_dim()) = frame_->whitener().transpose() * u;
        SocSystem sys = build_system();
        SolveResult r = solve_linear_over_soc(obj, sys, opt);
        SupportValue sv;
        sv.status = r.status;
        sv.value = r.value;
        if (r.status == SolveStatus::Optimal)
            sv.argmax = frame_->whitener() * r.point.head(ambient_dim());
        return sv;
    }

    /// Feasibility of the region with the ambient block pinned to the given
    /// whitened point.
    SolveStatus membership(const Vec& point_whitened, const SolverOptions& opt = {}) const {
        SocSystem sys = build_system();
        const int D = ambient_dim();
        Mat rows = Mat::Zero(D, stacked_dim());
        rows.leftCols(D) = Mat::Identity(D, D);
        sys.add_equality(rows, frame_->unwhitener() * point_whitened);
        Vec v = Vec::Zero(stacked_dim());
        v.head(D) = frame_->unwhitener() * point_whitened;
        auto fr = sys.find_feasible(v, opt);
        return fr.feasible ? SolveStatus::Feasible : SolveStatus::Infeasible;
    }

    /// Least r >= 0 with p in r*Omega (gauge of p), for symmetric Omega
    /// containing 0. Bisection on membership; +inf if no finite r found.
    double gauge(const Vec& point_whitened, double rel_tol = 1e-6, const SolverOptions& opt = {}) const {
        if (point_whitened.norm() < 1e-14) return 0.0;
        double hi = 1.0;
        int grow = 0;
        while (membership(point_whitened / hi, opt) != SolveStatus::Feasible) {
            hi *= 2.0;
            if (++grow > 60) return std::numeric_limits<double>::infinity();
        }
        double lo = 0.0;
        while (hi - lo > rel_tol * (1.0 + hi)) {
            double mid = 0.5 * (lo + hi);
            if (mid <= 0.0) break;
            (membership(point_whitened / mid, opt) == SolveStatus::Feasible ? hi : lo) = mid;
        }
        return hi;
    }

    ConvexJetSet intersect_ball(double r) const {
        ConvexJetSet out = *this;
        Mat A = Mat::Zero(ambient_dim(), stacked_dim());
        A.leftCols(ambient_dim()) = frame_->whitener();
        out.add_soc_raw(A, Vec::Zero(ambient_dim()), r);
        return out;
    }

    /// Intersect with a subspace of the whitened ambient space: rows span
    /// the orthogonal complement, so the equality reads rows * v = 0.
    ConvexJetSet intersect_subspace_complement(const Mat& complement_rows_whitened) const {
        ConvexJetSet out = *this;
        if (complement_rows_whitened.rows() == 0) return out;
        Mat rows = Mat::Zero(complement_rows_whitened.rows(), stacked_dim());
        rows.leftCols(ambient_dim()) = complement_rows_whitened * frame_->whitener();
        out.add_equality_raw(rows, Vec::Zero(complement_rows_whitened.rows()));
        return out;
    }

    /// Minkowski sum with lambda * (frame unit ball): a fresh ambient block v
    /// with ||v - old_ambient||_frame <= lambda; the old region moves to aux.
    ConvexJetSet minkowski_ball(double lambda) const {
        const int D = ambient_dim();
        ConvexJetSet out(*frame_, dim_aux_ + D);
        for (const auto& c : constraints_) {
            Mat A = Mat::Zero(c.A.rows(), out.stacked_dim());
            A.rightCols(stacked_dim()) = c.A;
            out.add_soc_raw(A, c.b, c.radius);
        }
        for (std::size_t i = 0; i < eq_rows_.size(); ++i) {
            Mat rows = Mat::Zero(eq_rows_[i].rows(), out.stacked_dim());
            rows.rightCols(stacked_dim()) = eq_rows_[i];
            out.add_equality_raw(rows, eq_rhs_[i]);
        }
        Mat A = Mat::Zero(D, out.stacked_dim());
        A.leftCols(D) = frame_->whitener();
        A.block(0, D, D, D) = -frame_->whitener();
        out.add_soc_raw(A, Vec::Zero(D), lambda);
        return out;
    }

    /// Image under an invertible map U on whitened ambient coordinates.
    ConvexJetSet transform_whitened(const Mat& U) const {
        Mat Linv = frame_->unwhitener() * U.inverse() * frame_->whitener();
        return transform_raw_inverse(Linv);
    }

    /// Image under an invertible linear map on raw coefficients, given its
    /// inverse (e.g. dilate/translate matrices, inverted exactly).
    ConvexJetSet transform_raw_inverse(const Mat& Linv) const {
        ConvexJetSet out(*frame_, dim_aux_);
        out.symmetric_ = symmetric_;
        const int D = ambient_dim();
        for (const auto& c : constraints_) {
            Mat A = c.A;
            A.leftCols(D) = c.A.leftCols(D) * Linv;
            out.constraints_.push_back(SocConstraint{std::move(A), c.b, c.radius});
        }
        for (std::size_t i = 0; i < eq_rows_.size(); ++i) {
            Mat rows = eq_rows_[i];
            rows.leftCols(D) = eq_rows_[i].leftCols(D) * Linv;
            out.eq_rows_.push_back(std::move(rows));
            out.eq_rhs_.push_back(eq_rhs_[i]);
        }
        return out;
    }

    ConvexJetSet scaled(double s) const {
        Mat Linv = Mat::Identity(ambient_dim(), ambient_dim()) / s;
        return transform_raw_inverse(Linv);
    }

    /// Same raw constraint system viewed through a different frame metric.
    ConvexJetSet with_frame(const ScaledMetric& new_frame) const {
        ConvexJetSet out(new_frame, dim_aux_);
        out.symmetric_ = symmetric_;
        out.constraints_ = constraints_;
        out.eq_rows_ = eq_rows_;
        out.eq_rhs_ = eq_rhs_;
        return out;
    }

    /// Unit-ball body r * B of the frame metric.
    static ConvexJetSet ball(const ScaledMetric& frame, double r) {
        ConvexJetSet out(frame, 0);
        return out.intersect_ball(r);
    }

    /// Ellipsoid {v : <S v, v> <= 1} in whitened frame coordinates.
    static ConvexJetSet ellipsoid(const ScaledMetric& frame, const Mat& shape) {
        Eigen::SelfAdjointEigenSolver<Mat> es(shape);
        Mat half = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                   es.eigenvectors().transpose();
        ConvexJetSet out(frame, 0);
        Mat A = Mat::Zero(shape.rows(), out.stacked_dim());
        A.leftCols(out.ambient_dim()) = half * frame.whitener();
        out.add_soc_raw(A, Vec::Zero(shape.rows()), 1.0);
        return out;
    }

private:
    std::shared_ptr<ScaledMetric> frame_;
    int dim_aux_ = 0;
    bool symmetric_ = true;
    std::vector<SocConstraint> constraints_;
    std::vector<Mat> eq_rows_;
    std::vector<Vec> eq_rhs_;
};

/// Reusable support-query handle: the solver system is assembled once and
/// consecutive directions warm-start from the previous argmax.
class SupportOracle {
public:
    explicit SupportOracle(const ConvexJetSet& set, SolverOptions opt = {})
        : frame_(set.frame()), sys_(set.build_system()), amb_(set.ambient_dim()), opt_(opt) {}

    SupportValue support(const Vec& u) {
        Vec obj = Vec::Zero(sys_.dim());
        obj.head(amb_) = frame_.whitener().transpose() * u;
        SolveResult r = solve_linear_over_soc(obj, sys_, opt_, have_warm_ ? &warm_ : nullptr);
        SupportValue sv;
        sv.status = r.status;
        sv.value = r.value;
        if (r.status == SolveStatus::Optimal) {
            sv.argmax = frame_.whitener() * r.point.head(amb_);
            warm_ = r.point;
            have_warm_ = true;
        }
        return sv;
    }

private:
    ScaledMetric frame_;
    SocSystem sys_;
    int amb_;
    SolverOptions opt_;
    Vec warm_;
    bool have_warm_ = false;
};

/// Ellipsoid E_A = {v : <A v, v> <= 1} with closed-form support
/// h(u) = sqrt(<A^+ u, u>) on the non-degenerate subspace.
struct Ellipsoid {
    Mat shape;

    SupportValue support(const Vec& u) const {
        Eigen::SelfAdjointEigenSolver<Mat> es(shape);
        Vec ev = es.eigenvalues();
        Vec uh = es.eigenvectors().transpose() * u;
        const double tol = 1e-12 * std::max(1.0, ev.maxCoeff());
        double acc = 0.0;
        SupportValue sv;
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            if (ev[i] <= tol) {
                if (std::abs(uh[i]) > 1e-10 * (1.0 + u.norm())) {
                    sv.status = SolveStatus::Unbounded;
                    return sv;
                }
            } else {
                acc += uh[i] * uh[i] / ev[i];
            }
        }
        sv.status = SolveStatus::Optimal;
        sv.value = std::sqrt(acc);
        return sv;
    }
};

/// h_{O1+O2}(u) = h_{O1}(u) + h_{O2}(u); exact reduction, two support calls.
inline SupportValue minkowski_sum_support(const ConvexJetSet& o1, const ConvexJetSet& o2, const Vec& u,
                                          const SolverOptions& opt = {}) {
    SupportValue a = o1.support(u, opt);
    if (a.status != SolveStatus::Optimal) return a;
    SupportValue b = o2.support(u, opt);
    if (b.status != SolveStatus::Optimal) return b;
    SupportValue out;
    out.status = SolveStatus::Optimal;
    out.value = a.value + b.value;
    return out;
}

struct HausdorffEstimate {
    SolveStatus status = SolveStatus::Indeterminate;
    double value = 0.0;
    int net_size = 0;
};

/// max over the net of |h1 - h2|: a lower bound on d_H for symmetric convex
/// sets, reported with the net density.
inline HausdorffEstimate hausdorff_estimate(const ConvexJetSet& o1, const ConvexJetSet& o2,
                                            const std::vector<Vec>& net, const SolverOptions& opt = {}) {
    HausdorffEstimate est;
    est.net_size = static_cast<int>(net.size());
    for (const Vec& u : net) {
        SupportValue a = o1.support(u, opt);
        SupportValue b = o2.support(u, opt);
        if (a.status != SolveStatus::Optimal || b.status != SolveStatus::Optimal) {
            est.status = SolveStatus::Indeterminate;
            return est;
        }
        est.value = std::max(est.value, std::abs(a.value - b.value));
    }
    est.status = SolveStatus::Optimal;
    return est;
}

struct FactCheck {
    bool holds = true;
    Vec counterexample; // sampled point (fact 1) or direction (fact 2)
};

/// fact 1: K subset T implies (A+K) cap T subset (A cap 2T) + K, checked on
/// sampled extreme points of (A+K) cap T via membership queries.
inline FactCheck check_fact1(const ConvexJetSet& a, const ConvexJetSet& k, const ConvexJetSet& t,
                             int samples, Rng& rng, const SolverOptions& opt = {}) {
    FactCheck out;
    const int D = a.ambient_dim();
    const ScaledMetric& frame = a.frame();

    struct LhsSample {
        Vec x;       // whitened ambient point of (A+K) cap T
        Vec a_stack; // witness decomposition blocks (raw)
        Vec k_stack;
    };
    // (A+K) cap T as one stacked system over [v; p; q]: v = p+q, p in A, q in K, v in T
    auto build_lhs_point = [&](const Vec& u) -> std::optional<LhsSample> {
        // maximize <u, v>
        const int n_a = a.stacked_dim(), n_k = k.stacked_dim(), n_t = t.stacked_dim();
        const int total = D + n_a + n_k + n_t;
        SocSystem sys(total);
        auto emplace = [&](const ConvexJetSet& s, int offset) {
            SocSystem sub = s.build_system();
            for (const auto& c : sub.constraints()) {
                Mat A = Mat::Zero(c.A.rows(), total);
                A.middleCols(offset, s.stacked_dim()) = c.A;
                sys.add_constraint(SocConstraint{A, c.b, c.radius});
            }
            if (sub.has_equalities()) {
                Mat rows = Mat::Zero(sub.equality_matrix().rows(), total);
                rows.middleCols(offset, s.stacked_dim()) = sub.equality_matrix();
                sys.add_equality(rows, sub.equality_rhs());
            }
        };
        emplace(a, D);
        emplace(k, D + n_a);
        emplace(t, D + n_a + n_k);
        // v = p + q over raw ambient blocks
        Mat sum = Mat::Zero(D, total);
        sum.leftCols(D) = Mat::Identity(D, D);
        sum.middleCols(D, D) = -Mat::Identity(D, D);
        sum.middleCols(D + n_a, D) = -Mat::Identity(D, D);
        sys.add_equality(sum, Vec::Zero(D));
        // v equals the T ambient block
        Mat tie = Mat::Zero(D, total);
        tie.leftCols(D) = Mat::Identity(D, D);
        tie.middleCols(D + n_a + n_k, D) = -Mat::Identity(D, D);
        sys.add_equality(tie, Vec::Zero(D));

        Vec obj = Vec::Zero(total);
        obj.head(D) = frame.whitener().transpose() * u;
        SolveResult r = solve_linear_over_soc(obj, sys, opt);
        if (r.status != SolveStatus::Optimal) return std::nullopt;
        LhsSample s;
        s.x = frame.whitener() * r.point.head(D);
        s.a_stack = r.point.segment(D, n_a);
        s.k_stack = r.point.segment(D + n_a, n_k);
        return s;
    };

    // membership of x in (A cap 2T) + K, inflated by the documented solver
    // slack so boundary-tight sample points do not stall the projections
    const double infl = 1.0 + 1e-4;
    auto member_rhs = [&](const LhsSample& sample) -> bool {
        const Vec& x = sample.x;
        const int n_a = a.stacked_dim(), n_k = k.stacked_dim(), n_t = t.stacked_dim();
        const int total = n_a + n_k + n_t;
        SocSystem sys(total);
        ConvexJetSet t2 = t.scaled(2.0 * infl);
        ConvexJetSet k_infl = k.scaled(infl);
        ConvexJetSet a_infl = a.scaled(infl);
        auto emplace = [&](const ConvexJetSet& s, int offset) {
            SocSystem sub = s.build_system();
            for (const auto& c : sub.constraints()) {
                Mat A = Mat::Zero(c.A.rows(), total);
                A.middleCols(offset, s.stacked_dim()) = c.A;
                sys.add_constraint(SocConstraint{A, c.b, c.radius});
            }
            if (sub.has_equalities()) {
                Mat rows = Mat::Zero(sub.equality_matrix().rows(), total);
                rows.middleCols(offset, s.stacked_dim()) = sub.equality_matrix();
                sys.add_equality(rows, sub.equality_rhs());
            }
        };
        emplace(a_infl, 0);
        emplace(k_infl, n_a);
        emplace(t2, n_a + n_k);
        // p in 2T via tying the T-copy ambient to p
        Mat tie = Mat::Zero(D, total);
        tie.leftCols(D) = Mat::Identity(D, D);
        tie.middleCols(n_a + n_k, D) = -Mat::Identity(D, D);
        sys.add_equality(tie, Vec::Zero(D));
        // p + q = x
        Mat sum = Mat::Zero(D, total);
        sum.leftCols(D) = Mat::Identity(D, D);
        sum.middleCols(n_a, D) = Mat::Identity(D, D);
        sys.add_equality(sum, frame.unwhitener() * x);
        // the lhs decomposition is a near-feasible witness; start there
        Vec v = Vec::Zero(total);
        v.head(n_a) = sample.a_stack;
        v.segment(n_a, n_k) = sample.k_stack;
        v.segment(n_a + n_k, D) = sample.a_stack.head(D);
        auto fr = sys.find_feasible(v, opt);
        return fr.feasible;
    };

    for (int s = 0; s < samples; ++s) {
        Vec u = rng.unit_vector(D);
        auto sample = build_lhs_point(u);
        if (!sample) continue;
        if (!member_rhs(*sample)) {
            out.holds = false;
            out.counterexample = sample->x;
            return out;
        }
    }
    return out;
}

/// fact 2 in its directional functional form:
/// h_K(u) <= h_T(u) + h_K(u)/3  implies  h_K(u) <= 2 h_T(u), per direction.
inline FactCheck check_fact2(const ConvexJetSet& k, const ConvexJetSet& t, const std::vector<Vec>& net,
                             const SolverOptions& opt = {}) {
    FactCheck out;
    for (const Vec& u : net) {
        SupportValue hk = k.support(u, opt);
        SupportValue ht = t.support(u, opt);
        if (hk.status != SolveStatus::Optimal || ht.status != SolveStatus::Optimal) continue;
        const double slack = 1e-6 * (1.0 + std::abs(hk.value) + std::abs(ht.value));
        if (hk.value <= ht.value + hk.value / 3.0 + slack) {
            if (hk.value > 2.0 * ht.value + slack) {
                out.holds = false;
                out.counterexample = u;
                return out;
            }
        }
    }
    return out;
}

} // namespace whitney
