#pragma once

#include <Eigen/Dense>

#include <vector>

#include "whitney/metric.hpp"

namespace whitney {

/// A subspace of the whitened jet space, carried as an orthonormal row
/// basis with the complement cached.
class Subspace {
public:
    /// Orthonormalize the given rows (any spanning set) with rank detection.
    static Subspace from_span(const Mat& rows, int ambient_dim, double rank_tol = 1e-10) {
        Subspace s;
        s.ambient_ = ambient_dim;
        if (rows.rows() == 0) {
            s.basis_ = Mat(0, ambient_dim);
        } else {
            Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
            Vec sv = svd.singularValues();
            int rank = 0;
            for (Eigen::Index i = 0; i < sv.size(); ++i)
                if (sv[i] > rank_tol * std::max(1.0, sv[0])) ++rank;
            s.basis_ = svd.matrixV().leftCols(rank).transpose();
        }
        s.complement_ = complement_of(s.basis_, ambient_dim);
        return s;
    }

    static Subspace zero(int ambient_dim) { return from_span(Mat(0, ambient_dim), ambient_dim); }

    static Subspace full(int ambient_dim) {
        return from_span(Mat::Identity(ambient_dim, ambient_dim), ambient_dim);
    }

    int dim() const { return static_cast<int>(basis_.rows()); }
    int ambient_dim() const { return ambient_; }
    const Mat& basis() const { return basis_; }
    const Mat& complement() const { return complement_; }

    Mat projector() const { return basis_.transpose() * basis_; }

    /// Largest residual of projecting the rows of `vectors` onto the space,
    /// relative to each row norm.
    double containment_residual(const Mat& vectors) const {
        double worst = 0.0;
        Mat p = projector();
        for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
            Vec v = vectors.row(i).transpose();
            double n = v.norm();
            if (n < 1e-300) continue;
            worst = std::max(worst, (v - p * v).norm() / n);
        }
        return worst;
    }

    bool same_as(const Subspace& other, double tol = 1e-9) const {
        if (dim() != other.dim()) return false;
        return (projector() - other.projector()).norm() <= tol * (1.0 + std::sqrt(static_cast<double>(dim())));
    }

private:
    static Mat complement_of(const Mat& basis, int ambient) {
        if (basis.rows() == 0) return Mat::Identity(ambient, ambient);
        if (basis.rows() == ambient) return Mat(0, ambient);
        Eigen::JacobiSVD<Mat> svd(basis, Eigen::ComputeFullV);
        return svd.matrixV().rightCols(ambient - basis.rows()).transpose();
    }

    int ambient_ = 0;
    Mat basis_ = Mat(0, 0);
    Mat complement_ = Mat(0, 0);
};

/// Whitened-frame subspace spanned by raw coefficient vectors.
inline Subspace subspace_from_raw(const ScaledMetric& frame, const Mat& raw_rows) {
    Mat wh(raw_rows.rows(), raw_rows.cols());
    for (Eigen::Index i = 0; i < raw_rows.rows(); ++i)
        wh.row(i) = (frame.whitener() * raw_rows.row(i).transpose()).transpose();
    return Subspace::from_span(wh, frame.config().dim());
}

/// Raw coefficient row basis of a whitened-frame subspace.
inline Mat raw_basis_of(const ScaledMetric& frame, const Subspace& s) {
    Mat raw(s.dim(), s.ambient_dim());
    for (int i = 0; i < s.dim(); ++i)
        raw.row(i) = (frame.unwhitener() * s.basis().row(i).transpose()).transpose();
    return raw;
}

} // namespace whitney
