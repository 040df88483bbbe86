#pragma once

#include "inscribe/config.hpp"
#include "inscribe/core.hpp"
#include "inscribe/curve.hpp"

#include <array>
#include <optional>
#include <vector>

namespace inscribe::slq {

/// Constraint residual of four curve points (1-based labels in the names):
///   ( s124 - 1, s231 - 1, s342 - 1, s132 - s241 )
/// zero exactly when the quadrilateral has equal sides and equal diagonals.
/// Unsquared ratios are used; the zero set matches the squared form and the
/// Jacobian rank test is equivalent there since d(s^2) = 2 s ds with s = 1.
Eigen::Vector4d residual(const ClosedCurve& c, const Eigen::Vector4d& theta);

/// Analytic d(residual)/d(theta) through the curve velocity (chain rule on
/// the distance-ratio cosine formulas).
Eigen::Matrix4d jacobian(const ClosedCurve& c, const Eigen::Vector4d& theta);

struct Certificate {
    bool transverse;
    double det;        // det of the 4x4 restricted Jacobian
    double condition;  // sigma_max / sigma_min
};

/// Full-rank test: |det J| > 1e-8 * (|J|_F / 2)^4 and condition < 1e8.
/// The Frobenius scale makes the determinant threshold row-scale free.
Certificate certificate(const Eigen::Matrix4d& jac);

struct Solution {
    Eigen::Vector4d theta;  // wrapped to [0, 2pi), theta[0] smallest, cyclic order
    MatrixXd vertices;      // k x 4
    double side = 0;        // mean of the four (equal) sides
    double diagonal = 0;
    double residual_norm = 0;
    Eigen::Matrix4d jac;
    Certificate cert{};
    int sign = 0;  // sign of det(jac) when transverse, else 0
};

/// One geometric quadrilateral: the Z/4 orbit of labeled solutions,
/// represented by the labeling with smallest theta[0].
struct Orbit {
    Solution canonical;
};

struct Options {
    int grid = 24;            // start points per parameter
    double tol = 1e-11;       // residual norm at convergence
    double min_side = -1.0;   // < 0: max(1e-3 * diameter, 0.5 * pi-distance estimate)
    double dedupe_tol = 1e-6;
    int max_iterations = 50;
};

/// Damped (Armijo) Newton on the residual; returns the residual norm on
/// success.  Throws nothing: failures return nullopt.
std::optional<double> newton_refine(const ClosedCurve& c, Eigen::Vector4d& theta, double tol,
                                    int max_iterations);

/// Multi-start search over all cyclically ordered grid 4-tuples, deduplicated
/// modulo Z/4 relabeling into orbits.  Deterministic output order.
std::vector<Orbit> find_squares(const ClosedCurve& c, const Options& opts = {});

/// The four labeled solutions of an orbit under successive cyclic relabeling.
std::array<Solution, 4> relabelings(const ClosedCurve& c, const Orbit& orbit);

/// Sign of the restricted Jacobian determinant under the fixed residual and
/// theta orderings.  Defined only for transverse solutions.
int intersection_sign(const Solution& sol);

/// Builds the full Solution record (vertices, Jacobian, certificate, sign)
/// for a converged parameter vector.
Solution make_solution(const ClosedCurve& c, const Eigen::Vector4d& theta);

double default_min_side(const ClosedCurve& c);

}  // namespace inscribe::slq
