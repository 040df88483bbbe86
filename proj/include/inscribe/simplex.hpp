#pragma once

#include "inscribe/config.hpp"
#include "inscribe/core.hpp"
#include "inscribe/distance_geometry.hpp"

#include <functional>
#include <string>
#include <vector>

namespace inscribe::simplex {

/// Star-shaped (k-1)-sphere given as a radial graph r > 0 over the unit
/// sphere.  k = 3 takes r(phi, theta) in spherical coordinates (phi polar
/// from +z, theta azimuth); k = 2 takes r(theta) as a planar radial curve.
class RadialSurface {
  public:
    static RadialSurface sphere(int k, double radius);
    /// k = 3 surface from an expression in (phi, theta).
    static RadialSurface expression(const std::string& expr);
    /// k = 2 radial curve r(theta) = c0 + sum (cos, sin) harmonics.
    static RadialSurface planar(double c0, VectorXd cos_coeffs, VectorXd sin_coeffs);

    int dimension() const { return k_; }
    double radius(const VectorXd& unit) const { return r_(unit); }
    /// Mean radius over a fixed 512-point grid (pole-free for k = 3).
    double mean_radius() const { return mean_; }
    const std::string& describe() const { return desc_; }

  private:
    RadialSurface(int k, std::function<double(const VectorXd&)> r, std::string desc);
    int k_;
    std::function<double(const VectorXd&)> r_;
    double mean_ = 0;
    std::string desc_;
};

/// Canonical realization of a constructible nondegenerate distance ratio:
/// circumcenter at the origin, circumradius 1, positive orientation
/// (det of [p_1 - p_{k+1}, ..., p_k - p_{k+1}] > 0).  Columns are vertices.
/// Placement: Gram matrix Cholesky seats p_1 at a fixed frame (p_2 on the
/// first axis, p_3 in the first coordinate plane, ...), then center + scale.
MatrixXd model_simplex(const SimplexDistanceRatioD& ratio);

struct InscribedSimplex {
    MatrixXd rotation;     // k x k, det +1
    double scale = 0;
    VectorXd translation;  // k
    MatrixXd vertices;     // k x (k+1), = scale * rotation * model + translation
    double residual_norm = 0;
};

struct InscribeOptions {
    double tol = 1e-10;
    int restarts = 8;
    std::uint64_t seed = 2024;
    bool fallback_grid = true;  // deterministic coarse (s,t) grid after restarts
};

/// Newton solve of |s A v_i + t| = r(unit(s A v_i + t)), i = 1..k+1, for the
/// scale s and translation t at a fixed rotation A.  Converged scales below
/// 0.05 * (mean radius) are rejected as collapses onto radial zeros.
InscribedSimplex inscribe(const RadialSurface& surface, const SimplexDistanceRatioD& ratio,
                          const MatrixXd& rotation, const InscribeOptions& opts = {});

/// Gram-Schmidt frame of the direction matrix [pi_12 pi_13 ... pi_1(k+1)];
/// equivariant: projection(B p) = B projection(p) for orthogonal B.
MatrixXd orientation_projection(const ConfigurationD& cfg);

struct SweepSummary {
    int requested = 0;
    int succeeded = 0;
    double s_min = 0, s_max = 0;
    double t_norm_min = 0, t_norm_max = 0;
    std::vector<int> failed_indices;
    int loop_steps = 0;
    int loop_lost = 0;
    double loop_max_jump = 0;  // max step-to-step |(ds, dt)| along the rotation loop
};

struct SweepResult {
    std::vector<InscribedSimplex> solutions;  // ordered by sample index
    SweepSummary summary;
};

/// Solves inscribe() for m seeded uniform random rotations and along a full
/// 2*pi rotation loop about the last axis (360 steps, warm-started).
SweepResult sweep_rotations(const RadialSurface& surface, const SimplexDistanceRatioD& ratio,
                            int m, std::uint64_t seed, int loop_steps = 360);

}  // namespace inscribe::simplex
