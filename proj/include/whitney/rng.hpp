#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace whitney {

/// Seeded generator wrapping mt19937_64 with platform-deterministic
/// derived draws (avoids unspecified std distribution algorithms).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// uniform in [0,1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// standard normal via Box-Muller on deterministic uniforms
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do { u1 = uniform(); } while (u1 <= 0.0);
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    Eigen::VectorXd normal_vector(int dim) {
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v[i] = normal();
        return v;
    }

    Eigen::VectorXd unit_vector(int dim) {
        Eigen::VectorXd v = normal_vector(dim);
        double n = v.norm();
        while (n < 1e-12) {
            v = normal_vector(dim);
            n = v.norm();
        }
        return v / n;
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

namespace detail {

inline double halton(std::uint64_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
        index /= static_cast<std::uint64_t>(base);
    }
    return r;
}

constexpr int kHaltonPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

} // namespace detail

/// Deterministic low-discrepancy direction net on the unit sphere of R^dim:
/// Halton points pushed through Box-Muller, plus the coordinate axes.
/// dim = 1 collapses to {+1, -1}.
inline std::vector<Eigen::VectorXd> sphere_net(int dim, int count) {
    std::vector<Eigen::VectorXd> net;
    if (dim <= 0) return net;
    if (dim == 1) {
        Eigen::VectorXd plus(1), minus(1);
        plus[0] = 1.0;
        minus[0] = -1.0;
        net.push_back(plus);
        net.push_back(minus);
        return net;
    }
    for (int i = 0; i < dim; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
        e[i] = 1.0;
        net.push_back(e);
        net.push_back(-e);
    }
    const int pairs = (dim + 1) / 2;
    std::uint64_t idx = 1;
    while (static_cast<int>(net.size()) < count) {
        Eigen::VectorXd v(dim);
        for (int p = 0; p < pairs; ++p) {
            double u1 = detail::halton(idx, detail::kHaltonPrimes[(2 * p) % 20]);
            double u2 = detail::halton(idx, detail::kHaltonPrimes[(2 * p + 1) % 20]);
            u1 = std::max(u1, 1e-12);
            double r = std::sqrt(-2.0 * std::log(u1));
            double a = r * std::cos(2.0 * M_PI * u2);
            double b = r * std::sin(2.0 * M_PI * u2);
            v[2 * p] = a;
            if (2 * p + 1 < dim) v[2 * p + 1] = b;
        }
        ++idx;
        double nn = v.norm();
        if (nn < 1e-9) continue;
        net.push_back(v / nn);
    }
    return net;
}

} // namespace whitney
