#pragma once

#include "inscribe/core.hpp"

namespace inscribe {

/// An ordered tuple of n pairwise-distinct labeled points in R^k, stored as
/// the columns of a k x n matrix.  Indices are 0-based throughout the API;
/// names like s124 in the solver layer refer to 1-based point labels.
template <typename Scalar>
class Configuration {
  public:
    explicit Configuration(Matrix<Scalar> points) : pts_(std::move(points)) {
        if (pts_.cols() < 2) throw size_error("configuration needs at least 2 points");
        if (pts_.rows() < 1) throw size_error("configuration needs ambient dimension >= 1");
        if (!pts_.allFinite()) throw degenerate_error("configuration has non-finite coordinates");
        for (Eigen::Index i = 0; i < pts_.cols(); ++i)
            for (Eigen::Index j = i + 1; j < pts_.cols(); ++j)
                if ((pts_.col(i) - pts_.col(j)).norm() == Scalar(0))
                    throw degenerate_error("coincident points in configuration");
    }

    int dimension() const { return static_cast<int>(pts_.rows()); }
    int size() const { return static_cast<int>(pts_.cols()); }
    Vector<Scalar> point(int i) const { return pts_.col(check(i)); }
    const Matrix<Scalar>& points() const { return pts_; }

  private:
    int check(int i) const {
        if (i < 0 || i >= size()) throw size_error("point index out of range");
        return i;
    }
    Matrix<Scalar> pts_;
};

using ConfigurationD = Configuration<double>;

/// Unit vector from p_j toward p_i: (p_i - p_j)/|p_i - p_j|.
template <typename Scalar>
Vector<Scalar> direction(const Configuration<Scalar>& c, int i, int j) {
    if (i == j) throw size_error("direction needs distinct indices");
    const Vector<Scalar> d = c.point(i) - c.point(j);
    const Scalar n = d.norm();
    if (n < Scalar(kCoincidenceThreshold))
        throw degenerate_error("direction of a collided pair");
    return d / n;
}

/// Distance ratio |p_i - p_j| / |p_i - p_k|.
template <typename Scalar>
Scalar ratio(const Configuration<Scalar>& c, int i, int j, int k) {
    if (i == j || j == k || i == k) throw size_error("ratio needs pairwise distinct indices");
    const Scalar den = (c.point(i) - c.point(k)).norm();
    if (den < Scalar(kCoincidenceThreshold))
        throw degenerate_error("ratio with collided denominator pair");
    return (c.point(i) - c.point(j)).norm() / den;
}

/// Generator of the Z/4 relabeling action: (p1,p2,p3,p4) -> (p2,p3,p4,p1).
template <typename Scalar>
Configuration<Scalar> cyclic_relabel(const Configuration<Scalar>& c) {
    if (c.size() != 4) throw size_error("cyclic_relabel is defined for 4-point configurations");
    Matrix<Scalar> out(c.dimension(), 4);
    for (int i = 0; i < 4; ++i) out.col(i) = c.point((i + 1) % 4);
    return Configuration<Scalar>(std::move(out));
}

}  // namespace inscribe
