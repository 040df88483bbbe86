#pragma once

#include "inscribe/config.hpp"
#include "inscribe/core.hpp"

namespace inscribe {

/// Target pairwise distances d_ij of a k-simplex, defined up to common scale.
/// d is (k+1)x(k+1), symmetric, zero diagonal, positive off-diagonal.
template <typename Scalar>
class SimplexDistanceRatio {
  public:
    SimplexDistanceRatio(int k, Matrix<Scalar> d) : k_(k), d_(std::move(d)) {
        if (k < 1 || k > 8) throw size_error("simplex dimension must be in 1..8");
        if (d_.rows() != k + 1 || d_.cols() != k + 1)
            throw size_error("distance matrix must be (k+1) x (k+1)");
        for (int i = 0; i <= k; ++i) {
            if (d_(i, i) != Scalar(0)) throw degenerate_error("distance matrix diagonal must be zero");
            for (int j = i + 1; j <= k; ++j) {
                if (d_(i, j) != d_(j, i)) throw degenerate_error("distance matrix must be symmetric");
                if (!(d_(i, j) > Scalar(0))) throw degenerate_error("off-diagonal distances must be positive");
            }
        }
    }

    static SimplexDistanceRatio regular(int k) {
        Matrix<Scalar> d = Matrix<Scalar>::Ones(k + 1, k + 1);
        d.diagonal().setZero();
        return SimplexDistanceRatio(k, std::move(d));
    }

    /// Planar triangle with the given side lengths; d12=a, d13=b, d23=c.
    static SimplexDistanceRatio triangle(Scalar a, Scalar b, Scalar c) {
        Matrix<Scalar> d(3, 3);
        d << 0, a, b, a, 0, c, b, c, 0;
        return SimplexDistanceRatio(2, std::move(d));
    }

    /// Distance matrix of an explicit point set (columns of pts).
    static SimplexDistanceRatio from_points(const Matrix<Scalar>& pts) {
        const int k = static_cast<int>(pts.rows());
        if (pts.cols() != k + 1) throw size_error("need k+1 points in R^k");
        Matrix<Scalar> d(k + 1, k + 1);
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= k; ++j) d(i, j) = (pts.col(i) - pts.col(j)).norm();
        return SimplexDistanceRatio(k, std::move(d));
    }

    int k() const { return k_; }
    const Matrix<Scalar>& d() const { return d_; }
    Scalar max_entry() const { return d_.maxCoeff(); }

  private:
    int k_;
    Matrix<Scalar> d_;
};

using SimplexDistanceRatioD = SimplexDistanceRatio<double>;

enum class RatioTag { ConstructibleNondegenerate, Degenerate, NonConstructible };

template <typename Scalar>
struct RatioClass {
    RatioTag tag;
    Scalar determinant;  // the bordered Cayley-Menger determinant D
};

/// Bordered (k+2)x(k+2) Cayley-Menger determinant:
///   | 0  1      1    ... |
///   | 1  0      d12^2 .. |
///   | 1  d21^2  0     .. |
/// computed by LU with partial pivoting.
template <typename Scalar>
Scalar cayley_menger_det(const SimplexDistanceRatio<Scalar>& r) {
    const int n = r.k() + 2;
    Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
    m.row(0).setOnes();
    m.col(0).setOnes();
    m(0, 0) = Scalar(0);
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
            if (i != j) m(i, j) = r.d()(i - 1, j - 1) * r.d()(i - 1, j - 1);
    return Eigen::PartialPivLU<Matrix<Scalar>>(m).determinant();
}

namespace detail {
template <typename Scalar>
Scalar volume_squared(const SimplexDistanceRatio<Scalar>& r, Scalar det) {
    Scalar fact = Scalar(1);
    for (int i = 2; i <= r.k(); ++i) fact *= Scalar(i);
    const Scalar denom = std::pow(Scalar(2), r.k()) * fact * fact;
    const Scalar sign = (r.k() % 2 == 0) ? Scalar(-1) : Scalar(1);  // (-1)^(k+1)
    return sign * det / denom;
}
}  // namespace detail

/// Classification by the sign of V^2 = ((-1)^(k+1) / 2^k (k!)^2) D, with a
/// scale-relative degeneracy band |V^2| < 1e-12 (max d_ij)^(2k).
template <typename Scalar>
RatioClass<Scalar> classify(const SimplexDistanceRatio<Scalar>& r) {
    const Scalar det = cayley_menger_det(r);
    const Scalar v2 = detail::volume_squared(r, det);
    const Scalar scale = std::pow(r.max_entry(), Scalar(2 * r.k()));
    if (std::abs(v2) < Scalar(1e-12) * scale) return {RatioTag::Degenerate, det};
    return {v2 > Scalar(0) ? RatioTag::ConstructibleNondegenerate : RatioTag::NonConstructible, det};
}

template <typename Scalar>
Scalar simplex_volume(const SimplexDistanceRatio<Scalar>& r) {
    const RatioClass<Scalar> c = classify(r);
    if (c.tag == RatioTag::NonConstructible)
        throw constructibility_error("volume of a non-constructible distance ratio");
    if (c.tag == RatioTag::Degenerate) return Scalar(0);
    return std::sqrt(detail::volume_squared(r, c.determinant));
}

/// Circumradius of the realized simplex from distances alone:
/// rho^2 = -det[ d_ij^2 (zero diagonal) ] / (2 D).
template <typename Scalar>
Scalar circumradius(const SimplexDistanceRatio<Scalar>& r) {
    const RatioClass<Scalar> c = classify(r);
    if (c.tag != RatioTag::ConstructibleNondegenerate)
        throw constructibility_error("circumradius needs a constructible, nondegenerate ratio");
    const int n = r.k() + 1;
    Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) m(i, j) = r.d()(i, j) * r.d()(i, j);
    const Scalar num = Eigen::PartialPivLU<Matrix<Scalar>>(m).determinant();
    const Scalar rho2 = -num / (Scalar(2) * c.determinant);
    if (!(rho2 > Scalar(0))) throw constructibility_error("circumradius radicand not positive");
    return std::sqrt(rho2);
}

}  // namespace inscribe
