#pragma once

#include "inscribe/continuation.hpp"
#include "inscribe/curve.hpp"
#include "inscribe/simplex.hpp"
#include "inscribe/slq.hpp"

#include <string>
#include <vector>

namespace inscribe::svg {

/// Minimal SVG 1.1 document builder with a y-up world viewport.
class Figure {
  public:
    Figure(double xmin, double ymin, double xmax, double ymax, int pixels = 640);

    void polyline(const std::vector<Eigen::Vector2d>& pts, const std::string& color,
                  double width, bool closed = false);
    void circle(const Eigen::Vector2d& center, double radius, const std::string& color);
    void line(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const std::string& color,
              double width);
    void text(const Eigen::Vector2d& at, const std::string& body);
    std::string str() const;

  private:
    Eigen::Vector2d map(const Eigen::Vector2d& w) const;
    double sx_, sy_, tx_, ty_;
    int wpx_, hpx_;
    std::string body_;
};

/// Drop the named axis (0=x, 1=y, 2=z) for a 3D -> 2D orthographic view.
Eigen::Vector2d project(const VectorXd& p, int axis);

std::string curve_with_orbits(const ClosedCurve& c, const std::vector<slq::Orbit>& orbits,
                              int project_axis = 2);
std::string branch_diagram(const std::vector<continuation::Path>& paths);
std::string diagnose_figure(const ClosedCurve& c, const PiDistanceResult& pid, int n);
std::string surface_with_simplex(const simplex::RadialSurface& surface,
                                 const simplex::InscribedSimplex& simplex, int project_axis = 2);

}  // namespace inscribe::svg
