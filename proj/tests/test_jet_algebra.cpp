#include <catch2/catch_amalgamated.hpp>

#include "whitney/jet.hpp"
#include "whitney/metric.hpp"
#include "whitney/rng.hpp"

#include "oracles.hpp"

using namespace whitney;

namespace {

Vec vec1(double a) {
    Vec v(1);
    v << a;
    return v;
}

Config random_config(Rng& rng, int max_m = 4, int max_n = 3) {
    return Config(rng.uniform_int(1, max_m), rng.uniform_int(1, max_n));
}

} // namespace

TEST_CASE("eval - constants / identity monomial / summation oracle") {
    Config c21(2, 1);
    CHECK(eval(c21, Jet::one(c21), vec1(123.0)) == 1.0);

    Jet z = Jet::zero(c21);
    z.coeffs[1] = 1.0; // P(z) = z
    CHECK(eval(c21, z, vec1(3.0)) == 3.0);

    Rng rng(101);
    for (int t = 0; t < 50; ++t) {
        Config cfg(3, rng.uniform_int(1, 3)); // degree-2 polynomials
        Jet p = oracle::random_jet(cfg, rng);
        Vec zq = 0.7 * Vec::Ones(cfg.n());
        double got = eval(cfg, p, zq);
        double want = oracle::eval(oracle::from_jet(cfg, p), zq);
        CHECK(std::abs(got - want) <= 1e-12 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("partial_derivative - power rule / identity / symbolic oracle") {
    Config c31(3, 1);
    Jet z2 = Jet::zero(c31);
    z2.coeffs[2] = 1.0; // z^2
    Jet d = partial_derivative(c31, z2, MultiIndex{{1}});
    CHECK(d.coeffs[0] == 0.0);
    CHECK(d.coeffs[1] == 2.0);
    CHECK(d.coeffs[2] == 0.0);

    Rng rng(102);
    for (int t = 0; t < 50; ++t) {
        Config cfg = random_config(rng);
        Jet p = oracle::random_jet(cfg, rng);
        MultiIndex zero_idx{std::vector<int>(static_cast<std::size_t>(cfg.n()), 0)};
        CHECK((partial_derivative(cfg, p, zero_idx).coeffs - p.coeffs).norm() == 0.0);

        // random admissible alpha
        MultiIndex a = cfg.index(rng.uniform_int(0, cfg.dim() - 1));
        Jet got = partial_derivative(cfg, p, a);
        auto want = oracle::differentiate(oracle::from_jet(cfg, p), a);
        CHECK(oracle::max_abs_diff(cfg, got, want) == 0.0);
    }

    CHECK_THROWS(partial_derivative(c31, z2, MultiIndex{{3}}));
}

TEST_CASE("taylor_jet - quadratic recentering / identity on P / symbolic oracle") {
    Config c21(2, 1);
    Poly f(1, 2);
    f.coeffs[f.position(MultiIndex{{2}})] = 1.0; // F(z) = z^2
    Jet j = taylor_jet(c21, f, vec1(1.0));
    CHECK(std::abs(j.coeffs[0] - (-1.0)) < 1e-14);
    CHECK(std::abs(j.coeffs[1] - 2.0) < 1e-14);

    Rng rng(103);
    for (int t = 0; t < 50; ++t) {
        Config cfg = random_config(rng, 3, 2);
        Jet p = oracle::random_jet(cfg, rng);
        Vec x = rng.normal_vector(cfg.n());
        CHECK((taylor_jet(cfg, p, x).coeffs - p.coeffs).norm() == 0.0);
    }

    for (int t = 0; t < 40; ++t) {
        Config cfg(3, 1);
        Poly g = oracle::random_poly(1, 4, rng);
        Vec x = vec1(0.7);
        Jet got = taylor_jet(cfg, g, x);
        auto want = oracle::taylor_at(cfg, oracle::from_poly(g), x);
        CHECK(oracle::max_abs_diff(cfg, got, want) <= 1e-10);
    }
    for (int t = 0; t < 40; ++t) {
        Config cfg(2, 2);
        Poly g = oracle::random_poly(2, 3, rng);
        Vec x = rng.normal_vector(2);
        Jet got = taylor_jet(cfg, g, x);
        auto want = oracle::taylor_at(cfg, oracle::from_poly(g), x);
        CHECK(oracle::max_abs_diff(cfg, got, want) <= 1e-10);
    }
}

TEST_CASE("translate - constants / linear shift / composition law") {
    Config c21(2, 1);
    CHECK((translate(c21, Jet::one(c21), vec1(5.0)).coeffs - Jet::one(c21).coeffs).norm() == 0.0);

    Jet z = Jet::zero(c21);
    z.coeffs[1] = 1.0;
    Jet t2 = translate(c21, z, vec1(2.0)); // z - 2
    CHECK(t2.coeffs[0] == -2.0);
    CHECK(t2.coeffs[1] == 1.0);

    Rng rng(104);
    for (int t = 0; t < 200; ++t) {
        Config cfg = random_config(rng);
        Jet p = oracle::random_jet(cfg, rng);
        Vec h1 = rng.normal_vector(cfg.n());
        Vec h2 = rng.normal_vector(cfg.n());
        Jet lhs = translate(cfg, translate(cfg, p, h2), h1);
        Jet rhs = translate(cfg, p, h1 + h2);
        CHECK((lhs.coeffs - rhs.coeffs).lpNorm<Eigen::Infinity>() <=
              1e-9 * (1.0 + rhs.coeffs.lpNorm<Eigen::Infinity>()));
    }
}

TEST_CASE("dilate - monomial scaling / unit scale / composition law") {
    Config c31(3, 1);
    for (int k = 0; k <= 2; ++k) {
        Jet zk = Jet::zero(c31);
        zk.coeffs[k] = 1.0;
        Jet d = dilate(c31, zk, vec1(0.0), 0.5);
        for (int i = 0; i < 3; ++i) {
            double want = (i == k) ? std::pow(0.5, k - 3) : 0.0;
            CHECK(std::abs(d.coeffs[i] - want) <= 1e-12 * (1.0 + std::abs(want)));
        }
    }

    Rng rng(105);
    for (int t = 0; t < 200; ++t) {
        Config cfg = random_config(rng);
        Jet p = oracle::random_jet(cfg, rng);
        Vec x = rng.normal_vector(cfg.n());
        CHECK((dilate(cfg, p, x, 1.0).coeffs - p.coeffs).lpNorm<Eigen::Infinity>() <= 1e-12);

        double d1 = std::exp(rng.uniform(-1.0, 1.0));
        double d2 = std::exp(rng.uniform(-1.0, 1.0));
        Jet lhs = dilate(cfg, dilate(cfg, p, x, d2), x, d1);
        Jet rhs = dilate(cfg, p, x, d1 * d2);
        CHECK((lhs.coeffs - rhs.coeffs).lpNorm<Eigen::Infinity>() <=
              1e-9 * (1.0 + rhs.coeffs.lpNorm<Eigen::Infinity>()));
    }
    CHECK_THROWS(dilate(c31, Jet::one(c31), vec1(0.0), -1.0));
}

TEST_CASE("scaled_inner_product - unit jet / constant norm / derivative oracle") {
    Config c21(2, 1);
    CHECK(std::abs(scaled_inner_product(c21, Jet::one(c21), Jet::one(c21), vec1(0.0), 1.0) - 1.0) < 1e-14);

    Rng rng(106);
    for (int t = 0; t < 50; ++t) {
        Config cfg = random_config(rng);
        Vec x = rng.normal_vector(cfg.n());
        double delta = std::exp(rng.uniform(-1.5, 1.5));
        double n1 = scaled_norm(cfg, Jet::one(cfg), x, delta);
        CHECK(std::abs(n1 - std::pow(delta, -cfg.m())) <= 1e-10 * std::pow(delta, -cfg.m()));

        Jet p = oracle::random_jet(cfg, rng);
        Jet q = oracle::random_jet(cfg, rng);
        double got = scaled_inner_product(cfg, p, q, x, delta);
        double want = oracle::scaled_inner(cfg, oracle::from_jet(cfg, p), oracle::from_jet(cfg, q), x, delta);
        CHECK(std::abs(got - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("scaled metric - gram matches formula / whitening round trip") {
    Rng rng(107);
    for (int t = 0; t < 30; ++t) {
        Config cfg = random_config(rng);
        Vec x = rng.normal_vector(cfg.n());
        double delta = std::exp(rng.uniform(-1.0, 1.0));
        ScaledMetric metric(cfg, x, delta);
        Jet p = oracle::random_jet(cfg, rng);
        Jet q = oracle::random_jet(cfg, rng);
        double via_gram = metric.inner(p, q);
        double via_formula = scaled_inner_product(cfg, p, q, x, delta);
        CHECK(std::abs(via_gram - via_formula) <= 1e-10 * (1.0 + std::abs(via_formula)));

        Vec v = metric.to_whitened(p);
        Jet back = metric.from_whitened(v);
        CHECK((back.coeffs - p.coeffs).norm() <= 1e-10 * (1.0 + p.coeffs.norm()));
        CHECK(std::abs(v.norm() - metric.norm(p)) <= 1e-10 * (1.0 + v.norm()));
    }
}

TEST_CASE("jet_product - truncation / recentring / symbolic oracle") {
    Config c21(2, 1);
    Jet onep = Jet::one(c21), onem = Jet::one(c21);
    onep.coeffs[1] = 1.0;  // 1 + z
    onem.coeffs[1] = -1.0; // 1 - z
    Jet prod = jet_product(c21, onep, onem, vec1(0.0));
    CHECK(std::abs(prod.coeffs[0] - 1.0) < 1e-14);
    CHECK(std::abs(prod.coeffs[1]) < 1e-14);

    Jet z = Jet::zero(c21);
    z.coeffs[1] = 1.0;
    Jet zz = jet_product(c21, z, z, vec1(1.0)); // J_1(z^2) = 2z - 1
    CHECK(std::abs(zz.coeffs[0] + 1.0) < 1e-14);
    CHECK(std::abs(zz.coeffs[1] - 2.0) < 1e-14);

    Rng rng(108);
    for (int t = 0; t < 60; ++t) {
        Config cfg = random_config(rng, 3, 2);
        Jet p = oracle::random_jet(cfg, rng);
        Jet q = oracle::random_jet(cfg, rng);
        Vec x = rng.normal_vector(cfg.n());
        Jet got = jet_product(cfg, p, q, x);
        auto want = oracle::taylor_at(cfg, oracle::multiply(oracle::from_jet(cfg, p), oracle::from_jet(cfg, q)), x);
        CHECK(oracle::max_abs_diff(cfg, got, want) <= 1e-9 * (1.0 + got.coeffs.lpNorm<Eigen::Infinity>()));

        // 1 is the multiplicative identity
        Jet pid = jet_product(cfg, p, Jet::one(cfg), x);
        CHECK((pid.coeffs - p.coeffs).lpNorm<Eigen::Infinity>() <= 1e-10 * (1.0 + p.coeffs.lpNorm<Eigen::Infinity>()));
    }
}

TEST_CASE("operator identity suite (a)-(c) on random draws") {
    Rng rng(109);
    const int draws = 1000;
    for (int t = 0; t < draws; ++t) {
        Config cfg = random_config(rng);
        Jet p = oracle::random_jet(cfg, rng);
        Jet q = oracle::random_jet(cfg, rng);
        Vec x = rng.normal_vector(cfg.n());
        Vec h = rng.normal_vector(cfg.n());
        double delta = std::exp(rng.uniform(-1.0, 1.0));
        double rho = std::exp(rng.uniform(-1.0, 1.0));
        auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(b)); };

        // (a)(iii) T_h tau_{x,delta} = tau_{x+h,delta} T_h
        {
            Jet lhs = translate(cfg, dilate(cfg, p, x, delta), h);
            Jet rhs = dilate(cfg, translate(cfg, p, h), x + h, delta);
            CHECK((lhs.coeffs - rhs.coeffs).lpNorm<Eigen::Infinity>() <=
                  1e-9 * (1.0 + rhs.coeffs.lpNorm<Eigen::Infinity>()));
        }
        // (b)(i) <tau_{x,rho}P, tau_{x,rho}Q>_{x,delta} = <P,Q>_{x,delta rho}
        CHECK(close(scaled_inner_product(cfg, dilate(cfg, p, x, rho), dilate(cfg, q, x, rho), x, delta),
                    scaled_inner_product(cfg, p, q, x, delta * rho)));
        // (b)(ii)-(iii) as the norm identity |tau_{x,rho}P|_{x,delta} = |P|_{x,delta rho}
        CHECK(close(scaled_norm(cfg, dilate(cfg, p, x, rho), x, delta), scaled_norm(cfg, p, x, delta * rho)));
        // (c)(i) <T_h P, T_h Q>_{x,delta} = <P,Q>_{x-h,delta}
        CHECK(close(scaled_inner_product(cfg, translate(cfg, p, h), translate(cfg, q, h), x, delta),
                    scaled_inner_product(cfg, p, q, x - h, delta)));
        // (c)(ii)-(iii) as the norm identity |T_h P|_{x,delta} = |P|_{x-h,delta}
        CHECK(close(scaled_norm(cfg, translate(cfg, p, h), x, delta), scaled_norm(cfg, p, x - h, delta)));
    }
}

TEST_CASE("scale comparison inequality for rho <= delta") {
    Rng rng(110);
    for (int t = 0; t < 1000; ++t) {
        Config cfg = random_config(rng);
        Jet p = oracle::random_jet(cfg, rng);
        Vec x = rng.normal_vector(cfg.n());
        double a = std::exp(rng.uniform(-1.5, 1.5));
        double b = std::exp(rng.uniform(-1.5, 1.5));
        double rho = std::min(a, b), delta = std::max(a, b);
        double n_rho = scaled_norm(cfg, p, x, rho);
        double n_delta = scaled_norm(cfg, p, x, delta);
        double ratio = rho / delta;
        CHECK(std::pow(ratio, cfg.m()) * n_rho <= n_delta * (1.0 + 1e-9));
        CHECK(n_delta <= ratio * n_rho * (1.0 + 1e-9));
    }
}

TEST_CASE("product vs translation/dilation compatibility") {
    Rng rng(111);
    for (int t = 0; t < 1000; ++t) {
        Config cfg = random_config(rng);
        Jet p = oracle::random_jet(cfg, rng);
        Jet q = oracle::random_jet(cfg, rng);
        Vec x = rng.normal_vector(cfg.n());
        Vec h = rng.normal_vector(cfg.n());
        double delta = std::exp(rng.uniform(-1.0, 1.0));

        Jet lhs1 = dilate(cfg, jet_product(cfg, p, q, x), x, delta);
        Jet rhs1 = jet_product(cfg, dilate(cfg, p, x, delta), dilate(cfg, q, x, delta), x);
        rhs1.coeffs *= std::pow(delta, cfg.m());
        CHECK((lhs1.coeffs - rhs1.coeffs).lpNorm<Eigen::Infinity>() <=
              1e-9 * (1.0 + rhs1.coeffs.lpNorm<Eigen::Infinity>()));

        Jet lhs2 = translate(cfg, jet_product(cfg, p, q, x), h);
        Jet rhs2 = jet_product(cfg, translate(cfg, p, h), translate(cfg, q, h), x + h);
        CHECK((lhs2.coeffs - rhs2.coeffs).lpNorm<Eigen::Infinity>() <=
              1e-9 * (1.0 + rhs2.coeffs.lpNorm<Eigen::Infinity>()));
    }
}

TEST_CASE("degenerate Taylor case - jets of a polynomial agree at all basepoints") {
    Rng rng(112);
    for (int t = 0; t < 100; ++t) {
        Config cfg = random_config(rng);
        Jet p = oracle::random_jet(cfg, rng);
        Poly as_poly = Poly::from_jet(cfg, p);
        Vec x = rng.normal_vector(cfg.n());
        Vec y = rng.normal_vector(cfg.n());
        Jet jx = taylor_jet(cfg, as_poly, x);
        Jet jy = taylor_jet(cfg, as_poly, y);
        CHECK((jx.coeffs - jy.coeffs).lpNorm<Eigen::Infinity>() <=
              1e-9 * (1.0 + p.coeffs.lpNorm<Eigen::Infinity>()));
        CHECK((jx.coeffs - p.coeffs).lpNorm<Eigen::Infinity>() <=
              1e-9 * (1.0 + p.coeffs.lpNorm<Eigen::Infinity>()));
    }
}

// Measured norm-comparison constants on a fixed seeded corpus (m <= 3,
// n <= 2); the recorded baselines live in fixtures.hpp.
#include "fixtures.hpp"

TEST_CASE("norm comparison and product continuity constants stay near baseline") {
    Rng rng(113);
    double worst_i = 0.0, worst_ii = 0.0, worst_iii = 0.0;
    for (int t = 0; t < 400; ++t) {
        Config cfg(rng.uniform_int(1, 3), rng.uniform_int(1, 2));
        Jet p = oracle::random_jet(cfg, rng);
        Jet q = oracle::random_jet(cfg, rng);
        if (p.coeffs.norm() < 1e-9 || q.coeffs.norm() < 1e-9) continue;
        Vec x = rng.normal_vector(cfg.n());
        double rho = std::exp(rng.uniform(-1.0, 0.5));
        double delta = rho * std::exp(rng.uniform(0.0, 1.0));
        Vec y = x + rho * rng.unit_vector(cfg.n()) * rng.uniform();

        // (i) |P|_{y,rho} <= C |P|_{x,rho}
        worst_i = std::max(worst_i, scaled_norm(cfg, p, y, rho) / scaled_norm(cfg, p, x, rho));
        // (ii) |P .x Q|_{x,rho} <= C delta^m |P|_{x,delta} |Q|_{x,rho}
        double lhs2 = scaled_norm(cfg, jet_product(cfg, p, q, x), x, rho);
        double rhs2 = std::pow(delta, cfg.m()) * scaled_norm(cfg, p, x, delta) * scaled_norm(cfg, q, x, rho);
        worst_ii = std::max(worst_ii, lhs2 / rhs2);
        // (iii) |(P .y Q) - (P .x Q)|_{x,rho} <= C delta^m |P|_{x,delta} |Q|_{x,delta}
        Jet diff{jet_product(cfg, p, q, y).coeffs - jet_product(cfg, p, q, x).coeffs};
        double lhs3 = scaled_norm(cfg, diff, x, rho);
        double rhs3 = std::pow(delta, cfg.m()) * scaled_norm(cfg, p, x, delta) * scaled_norm(cfg, q, x, delta);
        worst_iii = std::max(worst_iii, lhs3 / rhs3);
    }
    INFO("measured: I=" << worst_i << " II=" << worst_ii << " III=" << worst_iii);
    CHECK(worst_i <= fixtures::kNormComparisonI * 1.1);
    CHECK(worst_ii <= fixtures::kProductBoundII * 1.1);
    CHECK(worst_iii <= fixtures::kProductContinuityIII * 1.1);
    CHECK(worst_i > 1.0); // sanity: the corpus actually exercises the bound
}
