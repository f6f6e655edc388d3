#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <vector>

#include "whitney/convex.hpp"
#include "whitney/subspace.hpp"

namespace whitney {

struct NetOptions {
    int per_dim = 64; // directions per sphere dimension
};

struct TransversalityReport {
    SolveStatus status = SolveStatus::Indeterminate;
    double r_min = std::numeric_limits<double>::infinity();
    double condition1_margin = 0.0; // min over V-perp net of h_{Omega cap B}(u)
    double condition2_max = 0.0;    // max over V net of h_{Omega cap V}(u)
    int net1_size = 0;
    int net2_size = 0;

    bool transverse_at(double R) const { return status == SolveStatus::Optimal && r_min <= R; }
};

/// Quantitative transversality of a symmetric convex body to a subspace in
/// the whitened frame: condition (1) asks every unit u in V-perp to satisfy
/// h_{Omega cap B}(u) >= 1/R; condition (2) asks h_{Omega cap V}(u) <= R on
/// the unit sphere of V. Solver failures surface as Indeterminate.
inline TransversalityReport transversality_report(const ConvexJetSet& omega, const Subspace& v,
                                                  const NetOptions& net = {}, const SolverOptions& opt = {}) {
    TransversalityReport rep;
    const int D = omega.ambient_dim();
    if (v.ambient_dim() != D) throw std::invalid_argument("transversality_report: dimension mismatch");

    double margin1 = std::numeric_limits<double>::infinity();
    if (v.complement().rows() > 0) {
        SupportOracle slice(omega.intersect_ball(1.0), opt);
        auto dirs = sphere_net(static_cast<int>(v.complement().rows()),
                               net.per_dim * static_cast<int>(v.complement().rows()));
        rep.net1_size = static_cast<int>(dirs.size());
        for (const Vec& d : dirs) {
            Vec u = v.complement().transpose() * d;
            SupportValue sv = slice.support(u);
            if (sv.status != SolveStatus::Optimal) {
                rep.status = SolveStatus::Indeterminate;
                return rep;
            }
            margin1 = std::min(margin1, sv.value);
        }
    }

    double cond2 = 0.0;
    if (v.dim() > 0) {
        SupportOracle slice(omega.intersect_subspace_complement(v.complement()), opt);
        auto dirs = sphere_net(v.dim(), net.per_dim * v.dim());
        rep.net2_size = static_cast<int>(dirs.size());
        for (const Vec& d : dirs) {
            Vec u = v.basis().transpose() * d;
            SupportValue sv = slice.support(u);
            if (sv.status == SolveStatus::Unbounded) {
                // unbounded slice: not R-transverse for any finite R
                rep.status = SolveStatus::Optimal;
                rep.condition2_max = std::numeric_limits<double>::infinity();
                rep.r_min = std::numeric_limits<double>::infinity();
                rep.condition1_margin = margin1;
                return rep;
            }
            if (sv.status != SolveStatus::Optimal) {
                rep.status = SolveStatus::Indeterminate;
                return rep;
            }
            cond2 = std::max(cond2, sv.value);
        }
    }

    rep.status = SolveStatus::Optimal;
    rep.condition1_margin = margin1;
    rep.condition2_max = cond2;
    double r1 = (margin1 > 0.0) ? 1.0 / margin1 : std::numeric_limits<double>::infinity();
    rep.r_min = std::max({r1, cond2, 1.0});
    return rep;
}

inline bool is_transverse(const ConvexJetSet& omega, const Subspace& v, double R,
                          const NetOptions& net = {}, const SolverOptions& opt = {},
                          TransversalityReport* out = nullptr) {
    TransversalityReport rep = transversality_report(omega, v, net, opt);
    if (out != nullptr) *out = rep;
    return rep.transverse_at(R);
}

/// Stability under Minkowski inflation: if Omega is R-transverse to V then
/// Omega + lambda B is (R + 3 R^2 lambda)-transverse. R is taken from the
/// measured report inflated by the documented net factor.
inline bool stability_I_check(const ConvexJetSet& omega, const Subspace& v, double lambda,
                              const NetOptions& net = {}, const SolverOptions& opt = {},
                              double net_slack = 0.1) {
    TransversalityReport base = transversality_report(omega, v, net, opt);
    if (base.status != SolveStatus::Optimal || !std::isfinite(base.r_min)) return false;
    double R = base.r_min * (1.0 + net_slack);
    TransversalityReport sum = transversality_report(omega.minkowski_ball(lambda), v, net, opt);
    if (sum.status != SolveStatus::Optimal) return false;
    return sum.r_min <= (R + 3.0 * R * R * lambda) * (1.0 + net_slack);
}

/// Stability under Hausdorff perturbation: the caller certifies
/// d_H(Omega1 cap Rt B, Omega2 cap Rt B) <= 1/(4R) with Rt >= 4R by
/// construction; the check asserts Omega2 is 4R-transverse.
inline bool stability_II_check(const ConvexJetSet& omega1, const ConvexJetSet& omega2, const Subspace& v,
                               double R, const NetOptions& net = {}, const SolverOptions& opt = {},
                               double net_slack = 0.1) {
    TransversalityReport base = transversality_report(omega1, v, net, opt);
    if (base.status != SolveStatus::Optimal || base.r_min > R * (1.0 + net_slack)) return false;
    TransversalityReport rep = transversality_report(omega2, v, net, opt);
    if (rep.status != SolveStatus::Optimal) return false;
    return rep.r_min <= 4.0 * R * (1.0 + net_slack);
}

/// Stability under near-identity unitaries: ||U - id||_op <= 1/(16 R^2)
/// implies U(Omega) is 4R-transverse to V and Omega is 4R-transverse to U(V).
inline bool stability_III_check(const ConvexJetSet& omega, const Subspace& v, double R, const Mat& U,
                                const NetOptions& net = {}, const SolverOptions& opt = {},
                                double net_slack = 0.1) {
    TransversalityReport base = transversality_report(omega, v, net, opt);
    if (base.status != SolveStatus::Optimal || base.r_min > R * (1.0 + net_slack)) return false;
    ConvexJetSet uo = omega.transform_whitened(U);
    TransversalityReport r1 = transversality_report(uo, v, net, opt);
    if (r1.status != SolveStatus::Optimal || r1.r_min > 4.0 * R * (1.0 + net_slack)) return false;
    Subspace uv = Subspace::from_span(v.basis() * U.transpose(), v.ambient_dim());
    TransversalityReport r2 = transversality_report(omega, uv, net, opt);
    return r2.status == SolveStatus::Optimal && r2.r_min <= 4.0 * R * (1.0 + net_slack);
}

/// Exact rescaling behaviour of transversality: translation and dilation
/// leave the minimal R unchanged; a scale change within a factor kappa costs
/// at most kappa^m.
inline bool rescaling_check(const Config& cfg, const ConvexJetSet& omega, const Mat& v_raw_rows,
                            const Vec& x, double delta, const Vec& h, double r, double kappa,
                            const NetOptions& net = {}, const SolverOptions& opt = {},
                            double net_slack = 0.1) {
    ScaledMetric base_metric(cfg, x, delta);
    Subspace v = subspace_from_raw(base_metric, v_raw_rows);
    TransversalityReport rep0 = transversality_report(omega.with_frame(base_metric), v, net, opt);
    if (rep0.status != SolveStatus::Optimal || !std::isfinite(rep0.r_min)) return false;
    const double R = rep0.r_min;
    const double tol = 1.0 + net_slack;

    // translation: T_h Omega is (x+h, delta, R)-transverse to T_h V
    {
        ScaledMetric mt(cfg, x + h, delta);
        Mat linv = translate_matrix(cfg, -h);
        ConvexJetSet to = omega.with_frame(mt).transform_raw_inverse(linv);
        Mat v_raw_t(v_raw_rows.rows(), v_raw_rows.cols());
        for (Eigen::Index i = 0; i < v_raw_rows.rows(); ++i)
            v_raw_t.row(i) = translate(cfg, Jet{Vec(v_raw_rows.row(i).transpose())}, h).coeffs.transpose();
        TransversalityReport rep = transversality_report(to, subspace_from_raw(mt, v_raw_t), net, opt);
        if (rep.status != SolveStatus::Optimal || rep.r_min > R * tol) return false;
    }
    // dilation: tau_{x,r} Omega is (x, delta/r, R)-transverse to tau_{x,r} V
    {
        ScaledMetric mt(cfg, x, delta / r);
        Mat linv = dilate_matrix(cfg, x, 1.0 / r);
        ConvexJetSet to = omega.with_frame(mt).transform_raw_inverse(linv);
        Mat v_raw_t(v_raw_rows.rows(), v_raw_rows.cols());
        for (Eigen::Index i = 0; i < v_raw_rows.rows(); ++i)
            v_raw_t.row(i) = dilate(cfg, Jet{Vec(v_raw_rows.row(i).transpose())}, x, r).coeffs.transpose();
        TransversalityReport rep = transversality_report(to, subspace_from_raw(mt, v_raw_t), net, opt);
        if (rep.status != SolveStatus::Optimal || rep.r_min > R * tol) return false;
    }
    // scale comparability: delta' in [delta/kappa, kappa delta]
    {
        double dprime = delta * std::pow(kappa, 0.5); // a representative point inside the band
        ScaledMetric mt(cfg, x, dprime);
        TransversalityReport rep =
            transversality_report(omega.with_frame(mt), subspace_from_raw(mt, v_raw_rows), net, opt);
        if (rep.status != SolveStatus::Optimal || rep.r_min > std::pow(kappa, cfg.m()) * R * tol) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Ideals and DTI subspaces
// ---------------------------------------------------------------------------

struct NotAnIdeal : std::runtime_error {
    NotAnIdeal() : std::runtime_error("dti_complement: input subspace is not a product ideal") {}
};
struct DegenerateElimination : std::runtime_error {
    DegenerateElimination() : std::runtime_error("dti_complement: elimination pivot below 1e-12") {}
};
struct EmptyCandidates : std::runtime_error {
    EmptyCandidates() : std::runtime_error("label_search: empty candidate list") {}
};

/// Is span(raw rows) closed under P -> P (.)_x z^a for all basis monomials?
inline bool is_ideal(const Config& cfg, const Mat& raw_rows, const Vec& x, double residual_tol = 1e-9) {
    if (raw_rows.rows() == 0) return true;
    Subspace w = Subspace::from_span(raw_rows, cfg.dim());
    for (Eigen::Index i = 0; i < raw_rows.rows(); ++i) {
        Jet p{Vec(raw_rows.row(i).transpose())};
        for (int a = 0; a < cfg.dim(); ++a) {
            Jet mono = Jet::zero(cfg);
            mono.coeffs[a] = 1.0;
            Jet prod = jet_product(cfg, p, mono, x);
            if (prod.coeffs.norm() <= 1e-12 * (1.0 + p.coeffs.norm())) continue;
            Mat row = prod.coeffs.transpose();
            if (w.containment_residual(row) > residual_tol) return false;
        }
    }
    return true;
}

/// Derivative-closure residual: max over i of the part of d_i(V) outside V.
inline double translation_invariance_residual(const Config& cfg, const Mat& raw_rows) {
    if (raw_rows.rows() == 0) return 0.0;
    Subspace v = Subspace::from_span(raw_rows, cfg.dim());
    double worst = 0.0;
    for (int i = 0; i < cfg.n(); ++i) {
        MultiIndex e;
        e.entries.assign(static_cast<std::size_t>(cfg.n()), 0);
        e.entries[static_cast<std::size_t>(i)] = 1;
        for (Eigen::Index r = 0; r < raw_rows.rows(); ++r) {
            Jet d = partial_derivative(cfg, Jet{Vec(raw_rows.row(r).transpose())}, e);
            if (d.coeffs.norm() <= 1e-12 * (1.0 + raw_rows.row(r).norm())) continue;
            worst = std::max(worst, v.containment_residual(d.coeffs.transpose()));
        }
    }
    return worst;
}

/// Homogeneous-decomposition residual at 0: the part of each basis vector's
/// homogeneous components lying outside V.
inline double dilation_invariance_residual(const Config& cfg, const Mat& raw_rows) {
    if (raw_rows.rows() == 0) return 0.0;
    Subspace v = Subspace::from_span(raw_rows, cfg.dim());
    double worst = 0.0;
    for (Eigen::Index r = 0; r < raw_rows.rows(); ++r) {
        for (int k = 0; k <= cfg.m() - 1; ++k) {
            Vec comp = Vec::Zero(cfg.dim());
            for (int i = 0; i < cfg.dim(); ++i)
                if (cfg.index(i).order() == k) comp[i] = raw_rows(r, i);
            if (comp.norm() <= 1e-12 * (1.0 + raw_rows.row(r).norm())) continue;
            worst = std::max(worst, v.containment_residual(comp.transpose()));
        }
    }
    return worst;
}

/// A subspace flagged with translation/dilation invariance witnesses.
struct DtiSubspace {
    Mat raw_basis; // k x D rows, raw coefficients
    bool translation_invariant = false;
    bool dilation_invariant = false;
    double ti_residual = 0.0;
    double di_residual = 0.0;

    bool dti() const { return translation_invariant && dilation_invariant; }
    int dim() const { return static_cast<int>(raw_basis.rows()); }

    static DtiSubspace from_raw(const Config& cfg, const Mat& raw_rows, double tol = 1e-10) {
        DtiSubspace d;
        Subspace s = Subspace::from_span(raw_rows, cfg.dim());
        // store an orthonormalized raw row basis
        d.raw_basis = s.basis();
        d.ti_residual = translation_invariance_residual(cfg, d.raw_basis);
        d.di_residual = dilation_invariance_residual(cfg, d.raw_basis);
        d.translation_invariant = d.ti_residual <= tol;
        d.dilation_invariant = d.di_residual <= tol;
        return d;
    }

    /// Sample check that tau_{x,delta} V = V.
    double dilation_sample_residual(const Config& cfg, Rng& rng, int draws = 20) const {
        if (raw_basis.rows() == 0) return 0.0;
        Subspace v = Subspace::from_span(raw_basis, cfg.dim());
        double worst = 0.0;
        for (int k = 0; k < draws; ++k) {
            Vec x = rng.normal_vector(cfg.n());
            double delta = std::exp(rng.uniform(-1.5, 1.5));
            Mat rows(raw_basis.rows(), raw_basis.cols());
            for (Eigen::Index r = 0; r < raw_basis.rows(); ++r)
                rows.row(r) = dilate(cfg, Jet{Vec(raw_basis.row(r).transpose())}, x, delta).coeffs.transpose();
            worst = std::max(worst, v.containment_residual(rows));
        }
        return worst;
    }
};

/// Translation invariance of V is equivalent to the <.,.>_{x,delta}
/// orthocomplement of V being a product ideal at x. Both directions checked.
inline bool dual_ideal_correspondence(const Config& cfg, const Mat& v_raw_rows, const ScaledMetric& metric) {
    bool ti = translation_invariance_residual(cfg, v_raw_rows) <= 1e-9;
    Subspace v_wh = subspace_from_raw(metric, v_raw_rows);
    Mat comp_raw(v_wh.complement().rows(), cfg.dim());
    for (Eigen::Index i = 0; i < v_wh.complement().rows(); ++i)
        comp_raw.row(i) = (metric.unwhitener() * v_wh.complement().row(i).transpose()).transpose();
    bool ideal = is_ideal(cfg, comp_raw, metric.basepoint());
    return ti == ideal;
}

/// The constructive DTI complement of an ideal I at 0: block Gaussian
/// elimination extracts the graded leading parts, I_* = lim tau_{0,delta} I
/// is their span, and V = I_*-perp in the standard inner product.
inline DtiSubspace dti_complement(const Config& cfg, const Mat& ideal_rows, double pivot_tol = 1e-12) {
    const int D = cfg.dim();
    if (ideal_rows.rows() > 0 && !is_ideal(cfg, ideal_rows, Vec::Zero(cfg.n()))) throw NotAnIdeal();

    // graded row echelon: repeatedly pull the lowest-degree homogeneous parts
    std::vector<Vec> work;
    for (Eigen::Index i = 0; i < ideal_rows.rows(); ++i) work.push_back(ideal_rows.row(i).transpose());
    std::vector<Vec> leading; // independent homogeneous leading parts
    auto valuation = [&](const Vec& v) {
        for (int k = 0; k <= cfg.m() - 1; ++k) {
            double nn = 0.0;
            for (int i = 0; i < D; ++i)
                if (cfg.index(i).order() == k) nn += v[i] * v[i];
            if (std::sqrt(nn) > 1e-13 * std::max(1.0, v.norm())) return k;
        }
        return cfg.m(); // numerically zero
    };
    auto homogeneous_part = [&](const Vec& v, int k) {
        Vec out = Vec::Zero(D);
        for (int i = 0; i < D; ++i)
            if (cfg.index(i).order() == k) out[i] = v[i];
        return out;
    };

    for (int k = 0; k <= cfg.m() - 1; ++k) {
        // collect vectors with valuation k and eliminate their degree-k parts
        std::vector<Vec> block;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < work.size(); ++i)
            if (valuation(work[i]) == k) {
                block.push_back(work[i]);
                idx.push_back(i);
            }
        std::vector<Vec> pivots; // degree-k parts kept so far in this block
        for (std::size_t bi = 0; bi < block.size(); ++bi) {
            Vec v = block[bi];
            Vec lead = homogeneous_part(v, k);
            // reduce against existing pivots (orthogonal elimination)
            for (const Vec& p : pivots) {
                Vec pl = homogeneous_part(p, k);
                double c = lead.dot(pl) / pl.squaredNorm();
                v -= c * p;
                lead = homogeneous_part(v, k);
            }
            double scale = block[bi].norm();
            if (lead.norm() > std::max(pivot_tol, pivot_tol * scale)) {
                pivots.push_back(v);
                leading.push_back(lead);
            } else if (v.norm() > std::max(pivot_tol, pivot_tol * scale)) {
                // degree-k part cancelled: vector re-enters at higher valuation
                if (valuation(v) >= cfg.m()) throw DegenerateElimination();
                work.push_back(v);
            }
            // numerically zero vectors are dropped
        }
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) work.erase(work.begin() + static_cast<long>(*it));
    }

    Mat istar(static_cast<Eigen::Index>(leading.size()), D);
    for (std::size_t i = 0; i < leading.size(); ++i) istar.row(static_cast<Eigen::Index>(i)) = leading[i].transpose();

    // complement of I_* in the standard inner product <.,.>_{0,1}
    ScaledMetric std_metric(cfg, Vec::Zero(cfg.n()), 1.0);
    Subspace istar_wh = subspace_from_raw(std_metric, istar);
    Mat v_raw(istar_wh.complement().rows(), D);
    for (Eigen::Index i = 0; i < istar_wh.complement().rows(); ++i)
        v_raw.row(i) = (std_metric.unwhitener() * istar_wh.complement().row(i).transpose()).transpose();

    DtiSubspace out = DtiSubspace::from_raw(cfg, v_raw);
    // complementarity: V + I = P and V cap I = {0}
    auto rank_of = [](const Mat& rows) {
        if (rows.rows() == 0) return 0;
        Eigen::JacobiSVD<Mat> svd(rows);
        int rank = 0;
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()[i] > 1e-10 * std::max(1.0, svd.singularValues()[0])) ++rank;
        return rank;
    };
    Mat joint(out.raw_basis.rows() + ideal_rows.rows(), D);
    joint.topRows(out.raw_basis.rows()) = out.raw_basis;
    joint.bottomRows(ideal_rows.rows()) = ideal_rows;
    if (rank_of(joint) != D || out.dim() + rank_of(ideal_rows) != D) throw DegenerateElimination();
    return out;
}

/// DTI candidates. For n = 1 the full chain of degree-truncation subspaces
/// (provably exhaustive, re-verified numerically). For n >= 2 a seeded
/// generator family of derivative-closed homogeneous sums, flagged as
/// possibly incomplete.
struct DtiEnumeration {
    std::vector<DtiSubspace> subspaces;
    bool complete = false;
};

inline DtiEnumeration enumerate_dti(const Config& cfg, Rng& rng, int seeded_lines = 4) {
    DtiEnumeration out;
    const int D = cfg.dim();
    auto push_unique = [&](const Mat& raw_rows) {
        DtiSubspace d = DtiSubspace::from_raw(cfg, raw_rows);
        if (!d.dti()) return;
        Subspace s = Subspace::from_span(d.raw_basis, D);
        for (const auto& have : out.subspaces)
            if (Subspace::from_span(have.raw_basis, D).same_as(s)) return;
        out.subspaces.push_back(std::move(d));
    };

    push_unique(Mat(0, D));
    if (cfg.n() == 1) {
        // chain {0} < <1> < <1,z> < ... < P
        for (int k = 1; k <= D; ++k) {
            Mat rows = Mat::Zero(k, D);
            for (int i = 0; i < k; ++i) rows(i, i) = 1.0;
            push_unique(rows);
        }
        out.complete = true;
        return out;
    }

    // derivative closure of a homogeneous seed vector
    auto closure = [&](const Vec& seed) {
        std::vector<Vec> vs{seed};
        for (std::size_t i = 0; i < vs.size(); ++i) {
            for (int d = 0; d < cfg.n(); ++d) {
                MultiIndex e;
                e.entries.assign(static_cast<std::size_t>(cfg.n()), 0);
                e.entries[static_cast<std::size_t>(d)] = 1;
                Jet dv = partial_derivative(cfg, Jet{vs[i]}, e);
                if (dv.coeffs.norm() > 1e-12) vs.push_back(dv.coeffs);
            }
            if (vs.size() > 4 * static_cast<std::size_t>(D)) break;
        }
        Mat rows(static_cast<Eigen::Index>(vs.size()), D);
        for (std::size_t i = 0; i < vs.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
        return rows;
    };

    // full truncation chain by degree
    for (int k = 0; k <= cfg.m() - 1; ++k) {
        std::vector<Vec> vs;
        for (int i = 0; i < D; ++i)
            if (cfg.index(i).order() <= k) {
                Vec e = Vec::Zero(D);
                e[i] = 1.0;
                vs.push_back(e);
            }
        Mat rows(static_cast<Eigen::Index>(vs.size()), D);
        for (std::size_t i = 0; i < vs.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
        push_unique(rows);
    }
    // single-monomial closures
    for (int i = 0; i < D; ++i) {
        Vec e = Vec::Zero(D);
        e[i] = 1.0;
        push_unique(closure(e));
    }
    // homogeneous two-monomial combinations (x+y, x-y, ...)
    for (int i = 0; i < D; ++i) {
        for (int j = i + 1; j < D; ++j) {
            if (cfg.index(i).order() != cfg.index(j).order()) continue;
            for (double sign : {1.0, -1.0}) {
                Vec v = Vec::Zero(D);
                v[i] = 1.0;
                v[j] = sign;
                push_unique(closure(v));
            }
        }
    }
    // seeded homogeneous lines (e.g. <1, a x + b y>)
    for (int k = 1; k <= cfg.m() - 1; ++k) {
        for (int s = 0; s < seeded_lines; ++s) {
            Vec v = Vec::Zero(D);
            for (int i = 0; i < D; ++i)
                if (cfg.index(i).order() == k) v[i] = rng.normal();
            if (v.norm() < 1e-12) continue;
            push_unique(closure(v / v.norm()));
        }
    }
    out.complete = false;
    return out;
}

/// Evaluate every candidate and return the transversality minimizer; ties
/// broken by candidate order.
inline std::pair<DtiSubspace, TransversalityReport> label_search(const ConvexJetSet& omega,
                                                                 const ScaledMetric& metric,
                                                                 const std::vector<DtiSubspace>& candidates,
                                                                 const NetOptions& net = {},
                                                                 const SolverOptions& opt = {}) {
    if (candidates.empty()) throw EmptyCandidates();
    std::size_t best = 0;
    TransversalityReport best_rep;
    bool have = false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        Subspace v = subspace_from_raw(metric, candidates[i].raw_basis);
        TransversalityReport rep = transversality_report(omega.with_frame(metric), v, net, opt);
        if (!have || (rep.status == SolveStatus::Optimal && rep.r_min < best_rep.r_min)) {
            if (rep.status == SolveStatus::Optimal || !have) {
                best = i;
                best_rep = rep;
                have = rep.status == SolveStatus::Optimal;
            }
        }
    }
    return {candidates[best], best_rep};
}

} // namespace whitney
