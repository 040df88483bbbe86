#pragma once

#include "inscribe/core.hpp"

#include <memory>
#include <optional>
#include <string>

namespace inscribe {

struct unchecked_t {};
inline constexpr unchecked_t unchecked{};

/// A closed parametric curve on [0, 2*pi).  Polygonal variants are
/// parametrized proportionally to arclength; analytic variants by their
/// natural angle.
class ClosedCurve {
  public:
    virtual ~ClosedCurve() = default;

    virtual int dimension() const = 0;
    virtual VectorXd eval(double t) const = 0;
    /// dp/dt; one-sided (right-continuous) at polygon corners.
    virtual VectorXd velocity(double t) const = 0;
    virtual std::unique_ptr<ClosedCurve> clone() const = 0;
    virtual std::string kind() const = 0;

    VectorXd tangent(double t) const {
        VectorXd v = velocity(t);
        const double n = v.norm();
        if (n < kCoincidenceThreshold) throw degenerate_error("vanishing curve velocity");
        return v / n;
    }

  protected:
    // Embeddedness check on a fine polygonization; run by derived
    // constructors once their state is complete.
    void require_simple(int samples = 512) const;
};

class Ellipse final : public ClosedCurve {
  public:
    Ellipse(double a, double b);
    Ellipse(double a, double b, unchecked_t) : a_(a), b_(b) {}

    int dimension() const override { return 2; }
    VectorXd eval(double t) const override;
    VectorXd velocity(double t) const override;
    std::unique_ptr<ClosedCurve> clone() const override { return std::make_unique<Ellipse>(*this); }
    std::string kind() const override { return "ellipse"; }

    double a() const { return a_; }
    double b() const { return b_; }

  private:
    double a_, b_;
};

/// Planar curve r(t) = c0 + sum_m (cos_m cos(m t) + sin_m sin(m t)) in polar
/// form; positivity of r is grid-checked at construction.
class RadialFourier final : public ClosedCurve {
  public:
    RadialFourier(double c0, VectorXd cos_coeffs, VectorXd sin_coeffs);
    RadialFourier(double c0, VectorXd cos_coeffs, VectorXd sin_coeffs, unchecked_t)
        : c0_(c0), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {}

    int dimension() const override { return 2; }
    VectorXd eval(double t) const override;
    VectorXd velocity(double t) const override;
    std::unique_ptr<ClosedCurve> clone() const override { return std::make_unique<RadialFourier>(*this); }
    std::string kind() const override { return "radial_fourier"; }

    double radius(double t) const;
    double radius_derivative(double t) const;
    double c0() const { return c0_; }
    const VectorXd& cos_coeffs() const { return cos_; }
    const VectorXd& sin_coeffs() const { return sin_; }

  private:
    double c0_;
    VectorXd cos_, sin_;
};

class Polygon final : public ClosedCurve {
  public:
    /// Vertices are the columns of a k x m matrix, in traversal order.
    explicit Polygon(MatrixXd vertices);
    Polygon(MatrixXd vertices, unchecked_t) : v_(std::move(vertices)) { init(); }

    int dimension() const override { return static_cast<int>(v_.rows()); }
    VectorXd eval(double t) const override;
    VectorXd velocity(double t) const override;
    std::unique_ptr<ClosedCurve> clone() const override { return std::make_unique<Polygon>(*this); }
    std::string kind() const override { return "polygon"; }

    int vertex_count() const { return static_cast<int>(v_.cols()); }
    VectorXd vertex(int i) const { return v_.col(mod(i)); }
    const MatrixXd& vertices() const { return v_; }
    double perimeter() const { return total_; }
    /// Parameter value of vertex i (arclength-proportional).
    double vertex_parameter(int i) const { return kTau * cum_[mod(i)] / total_; }

    struct OneSidedTangent {
        VectorXd incoming, outgoing;
    };
    OneSidedTangent vertex_tangents(int i) const;

    /// Unsigned exterior turning angle at vertex i, in [0, pi].
    double turning_angle(int i) const;

  private:
    void init();
    int mod(int i) const {
        const int m = vertex_count();
        return ((i % m) + m) % m;
    }
    MatrixXd v_;
    std::vector<double> cum_;  // arclength up to vertex i
    double total_ = 0;
};

/// Polygon with corners replaced by tangent circular arcs of a fixed radius.
/// Arc turning equals the corner turning, so total curvature is preserved;
/// the curve is C^1 and parametrized by arclength fraction.
class RoundedPolygon final : public ClosedCurve {
  public:
    RoundedPolygon(const Polygon& base, double radius);

    int dimension() const override { return static_cast<int>(k_); }
    VectorXd eval(double t) const override;
    VectorXd velocity(double t) const override;
    std::unique_ptr<ClosedCurve> clone() const override { return std::make_unique<RoundedPolygon>(*this); }
    std::string kind() const override { return "rounded_polygon"; }

    double radius() const { return radius_; }
    double perimeter() const { return total_; }

  private:
    struct Piece {
        bool arc;
        double length;
        // segment: p0 + s * dir ; arc: center + r (cos(phi) e1 + sin(phi) e2)
        VectorXd p0, dir;
        VectorXd center, e1, e2;
        double phi_total;
    };
    Eigen::Index k_;
    double radius_;
    std::vector<Piece> pieces_;
    std::vector<double> cum_;
    double total_ = 0;
};

/// A parameter interval (s, t) of a curve, taken in curve orientation.
struct CurveArc {
    const ClosedCurve* curve;
    double s, t;
};

// -- arclength and polygonization -------------------------------------------

/// Arclength of the arc t0 -> t1 (in orientation, t1 may exceed t0 by up to
/// one period) by adaptive Simpson quadrature of |velocity|.
double arclength(const ClosedCurve& c, double t0, double t1, double tol = 1e-10);
double total_arclength(const ClosedCurve& c, double tol = 1e-10);

/// Inscribed n-gon with vertices equally spaced by arclength, starting at t=0.
Polygon inscribe_polygon(const ClosedCurve& c, int n, double tol = 1e-10);

/// Parameter values of the vertices of inscribe_polygon.
std::vector<double> equal_arclength_parameters(const ClosedCurve& c, int n, double tol = 1e-10);

// -- total curvature ---------------------------------------------------------

/// Total turning of the open vertex arc i -> j (cyclic): the sum of exterior
/// angles at the interior vertices i+1 .. j-1.  Endpoints excluded.
double total_curvature(const Polygon& p, int i, int j);

/// Total turning over all vertices of the closed polygon.
double total_curvature(const Polygon& p);

/// Total turning of the parameter arc (s, t): sum of turning angles at the
/// vertices strictly inside the interval.
double total_curvature(const CurveArc& arc);

// -- pi-distance -------------------------------------------------------------

struct PiDistanceResult {
    double value;
    int start_vertex, end_vertex;  // chord endpoints realizing the minimum
};

/// Estimate of the pi-distance on an n-vertex polygonization: for each start
/// vertex, extend the arc until its turning first reaches pi, and take the
/// minimum endpoint chord over all starts (minimal inadmissible arcs).
PiDistanceResult pi_distance_detail(const ClosedCurve& c, int n);
double pi_distance(const ClosedCurve& c, int n);

/// Literal reading of the same bound: minimum chord over *all* vertex
/// subarcs with turning >= pi.  Degenerates toward one edge length on closed
/// curves; reported by the diagnostics audit alongside the estimator above.
double pi_distance_exhaustive(const ClosedCurve& c, int n);

// -- helpers ------------------------------------------------------------------

double curve_diameter(const ClosedCurve& c, int samples = 512);
bool is_simple(const ClosedCurve& c, int samples = 512);

}  // namespace inscribe
