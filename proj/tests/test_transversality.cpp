#include <catch2/catch_amalgamated.hpp>

#include <unsupported/Eigen/MatrixFunctions>

#include "whitney/transversality.hpp"
#include "whitney/whitney_sets.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace whitney;

namespace {

ScaledMetric standard_frame(int m, int n) { return ScaledMetric(Config(m, n), Vec::Zero(n), 1.0); }

Mat random_spd(int d, Rng& rng, double ridge = 0.3) {
    Mat b(d, d);
    for (int i = 0; i < d; ++i) b.row(i) = rng.normal_vector(d).transpose();
    return b * b.transpose() + ridge * Mat::Identity(d, d);
}

Subspace random_subspace(int d, int k, Rng& rng) {
    Mat rows(k, d);
    for (int i = 0; i < k; ++i) rows.row(i) = rng.normal_vector(d).transpose();
    return Subspace::from_span(rows, d);
}

} // namespace

TEST_CASE("transversality of the unit ball is 1 for every subspace") {
    ScaledMetric frame = standard_frame(2, 2);
    const int D = 3;
    ConvexJetSet ball = ConvexJetSet::ball(frame, 1.0);
    Rng rng(301);
    for (int k = 0; k <= D; ++k) {
        Subspace v = k == 0 ? Subspace::zero(D) : (k == D ? Subspace::full(D) : random_subspace(D, k, rng));
        TransversalityReport rep = transversality_report(ball, v, NetOptions{16});
        REQUIRE(rep.status == SolveStatus::Optimal);
        CHECK(std::abs(rep.r_min - 1.0) <= 1e-5);
    }
}

TEST_CASE("2d ellipse with semiaxes 2 and 1/2 has minimal R equal 2") {
    ScaledMetric frame = standard_frame(2, 1);
    Mat shape = Mat::Zero(2, 2);
    shape(0, 0) = 0.25; // semiaxis 2 along e1
    shape(1, 1) = 4.0;  // semiaxis 1/2 along e2
    ConvexJetSet ellipse = ConvexJetSet::ellipsoid(frame, shape);
    Mat vrow = Mat::Zero(1, 2);
    vrow(0, 0) = 1.0;
    Subspace v = Subspace::from_span(vrow, 2);
    TransversalityReport rep = transversality_report(ellipse, v);
    REQUIRE(rep.status == SolveStatus::Optimal);
    CHECK(std::abs(rep.r_min - 2.0) <= 1e-4);
    CHECK(std::abs(rep.condition2_max - 2.0) <= 1e-4);
    CHECK(std::abs(1.0 / rep.condition1_margin - 2.0) <= 1e-4);

    // monotone in R
    CHECK_FALSE(rep.transverse_at(1.9));
    CHECK(rep.transverse_at(2.1));
    CHECK(rep.transverse_at(10.0));
}

TEST_CASE("minimal R is invariant under simultaneous orthogonal maps") {
    Rng rng(302);
    // D = 2: both condition nets are exact (two-point spheres)
    ScaledMetric frame = standard_frame(2, 1);
    for (int t = 0; t < 8; ++t) {
        ConvexJetSet e = ConvexJetSet::ellipsoid(frame, random_spd(2, rng));
        Subspace v = random_subspace(2, 1, rng);
        double theta = rng.uniform(0.0, 2.0 * M_PI);
        Mat u(2, 2);
        u << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
        TransversalityReport r0 = transversality_report(e, v);
        TransversalityReport r1 =
            transversality_report(e.transform_whitened(u), Subspace::from_span(v.basis() * u.transpose(), 2));
        REQUIRE(r0.status == SolveStatus::Optimal);
        REQUIRE(r1.status == SolveStatus::Optimal);
        CHECK(std::abs(r0.r_min - r1.r_min) <= 1e-6 * (1.0 + r0.r_min));
    }
    // D = 3: net-resolution agreement
    ScaledMetric frame3 = standard_frame(2, 2);
    for (int t = 0; t < 3; ++t) {
        ConvexJetSet e = ConvexJetSet::ellipsoid(frame3, random_spd(3, rng));
        Subspace v = random_subspace(3, 1, rng);
        Vec axis = rng.unit_vector(3);
        double theta = rng.uniform(0.0, 2.0 * M_PI);
        Mat w = Mat::Zero(3, 3);
        w(0, 1) = -axis[2]; w(0, 2) = axis[1];
        w(1, 0) = axis[2];  w(1, 2) = -axis[0];
        w(2, 0) = -axis[1]; w(2, 1) = axis[0];
        Mat u = (theta * w).exp();
        TransversalityReport r0 = transversality_report(e, v, NetOptions{16});
        TransversalityReport r1 = transversality_report(e.transform_whitened(u),
                                                        Subspace::from_span(v.basis() * u.transpose(), 3),
                                                        NetOptions{16});
        CHECK(std::abs(r0.r_min - r1.r_min) <= 0.1 * (1.0 + std::min(r0.r_min, r1.r_min)));
    }
}

TEST_CASE("stability I holds on the ellipse example and random draws") {
    ScaledMetric frame = standard_frame(2, 1);
    Mat shape = Mat::Zero(2, 2);
    shape(0, 0) = 0.25;
    shape(1, 1) = 4.0;
    ConvexJetSet ellipse = ConvexJetSet::ellipsoid(frame, shape);
    Mat vrow = Mat::Zero(1, 2);
    vrow(0, 0) = 1.0;
    Subspace v = Subspace::from_span(vrow, 2);

    // lambda = 0: identity case (sum degenerates to the set itself)
    TransversalityReport base = transversality_report(ellipse, v);
    TransversalityReport same = transversality_report(ellipse.minkowski_ball(1e-9), v);
    CHECK(std::abs(base.r_min - same.r_min) <= 1e-4);

    // lambda = 0.1 with R = 2: the sum is transverse at R + 3 R^2 lambda = 3.2
    TransversalityReport sum = transversality_report(ellipse.minkowski_ball(0.1), v);
    REQUIRE(sum.status == SolveStatus::Optimal);
    CHECK(sum.r_min <= 3.2 + 1e-4);

    Rng rng(303);
    for (int t = 0; t < 20; ++t) {
        ConvexJetSet e = ConvexJetSet::ellipsoid(frame, random_spd(2, rng));
        Subspace vv = random_subspace(2, 1, rng);
        double lambda = rng.uniform(0.01, 0.5);
        CHECK(stability_I_check(e, vv, lambda, NetOptions{32}));
    }
}

TEST_CASE("stability II holds for identical and perturbed sets") {
    ScaledMetric frame = standard_frame(2, 1);
    Rng rng(304);
    for (int t = 0; t < 12; ++t) {
        ConvexJetSet e = ConvexJetSet::ellipsoid(frame, random_spd(2, rng));
        Subspace v = random_subspace(2, 1, rng);
        TransversalityReport base = transversality_report(e, v);
        REQUIRE(base.status == SolveStatus::Optimal);
        double r = base.r_min * 1.1;

        // identical sets: zero Hausdorff distance
        CHECK(stability_II_check(e, e, v, r));
        // scaling perturbation (1+eps) with eps chosen inside the budget
        double sup_norm = std::max(transversality_report(e, Subspace::zero(2)).condition2_max, 1.0);
        (void)sup_norm;
        double eps = 0.05 / (4.0 * r);
        CHECK(stability_II_check(e, e.scaled(1.0 + eps), v, r));
        // Minkowski perturbation with certified d_H <= 1/(4R)
        CHECK(stability_II_check(e, e.minkowski_ball(1.0 / (4.0 * r)), v, r));
    }
}

TEST_CASE("stability III holds for small rotations") {
    ScaledMetric frame = standard_frame(2, 1);
    Rng rng(305);
    for (int t = 0; t < 12; ++t) {
        ConvexJetSet e = ConvexJetSet::ellipsoid(frame, random_spd(2, rng));
        Subspace v = random_subspace(2, 1, rng);
        TransversalityReport base = transversality_report(e, v);
        REQUIRE(base.status == SolveStatus::Optimal);
        double r = base.r_min * 1.1;

        // U = id preserves the report exactly
        CHECK(stability_III_check(e, v, r, Mat::Identity(2, 2)));
        // ||U - id|| <= 1/(16 R^2)
        double theta = 0.9 / (16.0 * r * r);
        Mat u(2, 2);
        u << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
        CHECK((u - Mat::Identity(2, 2)).operatorNorm() <= 1.0 / (16.0 * r * r));
        CHECK(stability_III_check(e, v, r, u));
    }
}

TEST_CASE("rescaling identities preserve transversality") {
    Config cfg(2, 1);
    Rng rng(306);
    for (int t = 0; t < 6; ++t) {
        Vec x = rng.normal_vector(1);
        double delta = std::exp(rng.uniform(-0.5, 0.5));
        ScaledMetric metric(cfg, x, delta);
        ConvexJetSet e = ConvexJetSet::ellipsoid(metric, random_spd(2, rng));
        Mat v_raw(1, 2);
        v_raw.row(0) = rng.normal_vector(2).transpose();
        Vec h = rng.normal_vector(1);
        double r = std::exp(rng.uniform(-0.5, 0.5));
        double kappa = std::exp(rng.uniform(0.0, std::log(2.0)));
        CHECK(rescaling_check(cfg, e, v_raw, x, delta, h, r, kappa));
    }
}

TEST_CASE("product ideal checks on truncation examples") {
    Config c21(2, 1);
    Vec zero1 = Vec::Zero(1);
    CHECK(is_ideal(c21, Mat(0, 2), zero1));

    Mat span_z(1, 2);
    span_z << 0.0, 1.0;
    CHECK(is_ideal(c21, span_z, zero1));

    Mat span_1(1, 2);
    span_1 << 1.0, 0.0;
    CHECK_FALSE(is_ideal(c21, span_1, zero1));
}

TEST_CASE("translation invariance equals ideal complement in both directions") {
    Config c31(3, 1);
    ScaledMetric frame(c31, Vec::Zero(1), 1.0);

    // V = P: complement {0} is an ideal and V is translation-invariant
    CHECK(dual_ideal_correspondence(c31, Mat::Identity(3, 3), frame));

    // V = span{1, z} with m = 3: complement span{z^2} is an ideal
    Mat v12 = Mat::Zero(2, 3);
    v12(0, 0) = 1.0;
    v12(1, 1) = 1.0;
    CHECK(translation_invariance_residual(c31, v12) <= 1e-10);
    CHECK(dual_ideal_correspondence(c31, v12, frame));

    // random subspaces: the equivalence holds with both sides false
    Rng rng(307);
    for (int t = 0; t < 40; ++t) {
        Config cfg(rng.uniform_int(2, 3), rng.uniform_int(1, 2));
        ScaledMetric fr(cfg, rng.normal_vector(cfg.n()), std::exp(rng.uniform(-0.5, 0.5)));
        Mat rows(rng.uniform_int(1, cfg.dim() - 1), cfg.dim());
        for (Eigen::Index i = 0; i < rows.rows(); ++i) rows.row(i) = rng.normal_vector(cfg.dim()).transpose();
        CHECK(dual_ideal_correspondence(cfg, rows, fr));
    }
}

TEST_CASE("dti complement on the n=1 chain and edge ideals") {
    Config c21(2, 1);
    Mat span_z(1, 2);
    span_z << 0.0, 1.0;
    DtiSubspace v = dti_complement(c21, span_z);
    REQUIRE(v.dim() == 1);
    CHECK(v.dti());
    CHECK(std::abs(std::abs(v.raw_basis(0, 0)) - 1.0) <= 1e-12);
    CHECK(std::abs(v.raw_basis(0, 1)) <= 1e-12);

    DtiSubspace full = dti_complement(c21, Mat(0, 2));
    CHECK(full.dim() == 2);
    CHECK(full.dti());

    DtiSubspace none = dti_complement(c21, Mat::Identity(2, 2));
    CHECK(none.dim() == 0);

    CHECK_THROWS_AS(dti_complement(c21, [] {
                        Mat m(1, 2);
                        m << 1.0, 0.0; // span{1} is not an ideal
                        return m;
                    }()),
                    NotAnIdeal);
}

TEST_CASE("dti complement of random ideals in n=2 m=2") {
    Config c22(2, 2); // D = 3, basis {1, x, y}
    Rng rng(308);
    for (int t = 0; t < 50; ++t) {
        // any subspace of span{x, y} is a product ideal here
        int k = rng.uniform_int(1, 2);
        Mat rows = Mat::Zero(k, 3);
        for (int i = 0; i < k; ++i) {
            rows(i, 1) = rng.normal();
            rows(i, 2) = rng.normal();
        }
        if (rows.norm() < 1e-6) continue;
        REQUIRE(is_ideal(c22, rows, Vec::Zero(2)));
        DtiSubspace v = dti_complement(c22, rows);
        CHECK(v.dti());
        // complementary: dimensions add to D and the joint span has full rank
        Mat joint(v.dim() + k, 3);
        joint.topRows(v.dim()) = v.raw_basis;
        joint.bottomRows(k) = rows;
        Eigen::JacobiSVD<Mat> svd(joint);
        CHECK(svd.singularValues().minCoeff() > 1e-9);
    }
}

TEST_CASE("dti enumeration: n=1 chain is exhaustive") {
    Rng rng(309);
    Config c31(3, 1);
    DtiEnumeration e = enumerate_dti(c31, rng);
    CHECK(e.complete);
    REQUIRE(e.subspaces.size() == 4); // {0}, <1>, <1,z>, P
    std::vector<int> dims;
    for (const auto& s : e.subspaces) dims.push_back(s.dim());
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<int>{0, 1, 2, 3});
    for (const auto& s : e.subspaces) {
        CHECK(s.dti());
        CHECK(s.dilation_sample_residual(c31, rng) <= 1e-9);
    }

    // exhaustiveness cross-check: every 1-dim invariant subspace lies in the chain
    for (int t = 0; t < 50; ++t) {
        Mat row(1, 3);
        row.row(0) = rng.normal_vector(3).transpose();
        DtiSubspace cand = DtiSubspace::from_raw(c31, row);
        if (!cand.dti()) continue;
        bool found = false;
        for (const auto& s : e.subspaces)
            if (s.dim() == 1 && Subspace::from_span(s.raw_basis, 3).same_as(Subspace::from_span(cand.raw_basis, 3)))
                found = true;
        CHECK(found);
    }
}

TEST_CASE("dti enumeration: n=2 m=2 includes the expected generators") {
    Rng rng(310);
    Config c22(2, 2);
    DtiEnumeration e = enumerate_dti(c22, rng);
    CHECK_FALSE(e.complete);
    for (const auto& s : e.subspaces) CHECK(s.dti());

    auto contains = [&](const Mat& raw) {
        Subspace target = Subspace::from_span(raw, 3);
        for (const auto& s : e.subspaces)
            if (Subspace::from_span(s.raw_basis, 3).same_as(target)) return true;
        return false;
    };
    CHECK(contains(Mat(0, 3)));                  // {0}
    CHECK(contains(Mat::Identity(3, 3)));        // P
    Mat one(1, 3);
    one << 1, 0, 0;
    CHECK(contains(one)); // <1>
    Mat oxy(2, 3);
    oxy << 1, 0, 0, 0, 1, 1;
    CHECK(contains(oxy)); // <1, x+y>
    Mat oxyfull(3, 3);
    oxyfull << 1, 0, 0, 0, 1, 0, 0, 0, 1;
    CHECK(contains(oxyfull)); // <1, x, y>
}

TEST_CASE("label search picks the aligned subspace for a thin ellipsoid") {
    Config c21(2, 1);
    ScaledMetric frame(c21, Vec::Zero(1), 1.0);
    Rng rng(311);
    DtiEnumeration cands = enumerate_dti(c21, rng);

    // unit ball: every candidate reports R = 1; ties break to candidate order
    auto [v_ball, rep_ball] = label_search(ConvexJetSet::ball(frame, 1.0), frame, cands.subspaces);
    CHECK(std::abs(rep_ball.r_min - 1.0) <= 1e-5);
    CHECK(v_ball.dim() == cands.subspaces.front().dim());

    // thin ellipsoid aligned with span{1}: long axis along the constant jet
    Mat shape = Mat::Zero(2, 2);
    shape(0, 0) = 1e-4; // very long along coordinate 0
    shape(1, 1) = 1e4;  // very short along coordinate 1
    // whitened frame at (0,1) is coordinate-aligned here
    auto [v_thin, rep_thin] = label_search(ConvexJetSet::ellipsoid(frame, shape), frame, cands.subspaces);
    REQUIRE(rep_thin.status == SolveStatus::Optimal);
    CHECK(v_thin.dim() == 1);
    Subspace got = subspace_from_raw(frame, v_thin.raw_basis);
    CHECK(std::abs(got.basis()(0, 0)) > 0.99);

    CHECK_THROWS_AS(label_search(ConvexJetSet::ball(frame, 1.0), frame, {}), EmptyCandidates);
}

TEST_CASE("label search on a three-point sigma-hat surrogate") {
    Config c21(2, 1);
    Vec x0 = Vec::Zero(1);
    ScaledMetric frame(c21, x0, 1.0);
    std::vector<Vec> pts;
    for (double p : {0.0, 0.45, 1.0}) {
        Vec v(1);
        v << p;
        pts.push_back(v);
    }
    ConvexJetSet sh = sigma_hat(c21, frame, x0, pts, 1.0);
    Rng rng(312);
    DtiEnumeration cands = enumerate_dti(c21, rng);
    auto [v, rep] = label_search(sh, frame, cands.subspaces);
    REQUIRE(rep.status == SolveStatus::Optimal);
    CHECK(std::isfinite(rep.r_min));
    INFO("label fixture r_min = " << rep.r_min << " dim = " << v.dim());
    CHECK(rep.r_min <= fixtures::kLabelSearchThreePointRMin * 1.1);
    CHECK(rep.r_min >= fixtures::kLabelSearchThreePointRMin / 1.1);
}
