#include "inscribe/svg.hpp"

#include <array>
#include <cstdio>
#include <sstream>

namespace inscribe::svg {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const std::array<std::string, 6> kPalette = {"#c0392b", "#2980b9", "#27ae60",
                                             "#8e44ad", "#d35400", "#16a085"};

}  // namespace

Figure::Figure(double xmin, double ymin, double xmax, double ymax, int pixels) {
    const double w = std::max(xmax - xmin, 1e-9), h = std::max(ymax - ymin, 1e-9);
    const double margin = 0.05 * std::max(w, h);
    const double scale = pixels / (std::max(w, h) + 2 * margin);
    sx_ = scale;
    sy_ = -scale;  // svg y grows downward
    tx_ = -(xmin - margin) * scale;
    ty_ = (ymax + margin) * scale;
    wpx_ = static_cast<int>((w + 2 * margin) * scale + 0.5);
    hpx_ = static_cast<int>((h + 2 * margin) * scale + 0.5);
}

Eigen::Vector2d Figure::map(const Eigen::Vector2d& w) const {
    return {sx_ * w.x() + tx_, sy_ * w.y() + ty_};
}

void Figure::polyline(const std::vector<Eigen::Vector2d>& pts, const std::string& color,
                      double width, bool closed) {
    std::ostringstream os;
    os << "  <" << (closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"" << num(width) << "\" points=\"";
    for (const auto& p : pts) {
        const Eigen::Vector2d q = map(p);
        os << num(q.x()) << ',' << num(q.y()) << ' ';
    }
    os << "\"/>\n";
    body_ += os.str();
}

void Figure::circle(const Eigen::Vector2d& center, double radius, const std::string& color) {
    const Eigen::Vector2d q = map(center);
    body_ += "  <circle cx=\"" + num(q.x()) + "\" cy=\"" + num(q.y()) + "\" r=\"" +
             num(radius * sx_) + "\" fill=\"" + color + "\"/>\n";
}

void Figure::line(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const std::string& color,
                  double width) {
    const Eigen::Vector2d p = map(a), q = map(b);
    body_ += "  <line x1=\"" + num(p.x()) + "\" y1=\"" + num(p.y()) + "\" x2=\"" + num(q.x()) +
             "\" y2=\"" + num(q.y()) + "\" stroke=\"" + color + "\" stroke-width=\"" + num(width) +
             "\"/>\n";
}

void Figure::text(const Eigen::Vector2d& at, const std::string& body) {
    const Eigen::Vector2d q = map(at);
    body_ += "  <text x=\"" + num(q.x()) + "\" y=\"" + num(q.y()) +
             "\" font-family=\"sans-serif\" font-size=\"12\">" + body + "</text>\n";
}

std::string Figure::str() const {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << wpx_
       << "\" height=\"" << hpx_ << "\" viewBox=\"0 0 " << wpx_ << ' ' << hpx_ << "\">\n"
       << body_ << "</svg>\n";
    return os.str();
}

Eigen::Vector2d project(const VectorXd& p, int axis) {
    if (p.size() == 2) return {p[0], p[1]};
    switch (axis) {
        case 0: return {p[1], p[2]};
        case 1: return {p[0], p[2]};
        default: return {p[0], p[1]};
    }
}

namespace {

Figure fit_figure(const std::vector<Eigen::Vector2d>& pts) {
    double xmin = 1e300, ymin = 1e300, xmax = -1e300, ymax = -1e300;
    for (const auto& p : pts) {
        xmin = std::min(xmin, p.x());
        xmax = std::max(xmax, p.x());
        ymin = std::min(ymin, p.y());
        ymax = std::max(ymax, p.y());
    }
    return Figure(xmin, ymin, xmax, ymax);
}

std::vector<Eigen::Vector2d> curve_points(const ClosedCurve& c, int axis, int n = 512) {
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) pts.push_back(project(c.eval(kTau * i / n), axis));
    return pts;
}

}  // namespace

std::string curve_with_orbits(const ClosedCurve& c, const std::vector<slq::Orbit>& orbits,
                              int project_axis) {
    const auto pts = curve_points(c, project_axis);
    Figure fig = fit_figure(pts);
    fig.polyline(pts, "#333333", 2.0, true);
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        const auto& color = kPalette[i % kPalette.size()];
        std::vector<Eigen::Vector2d> quad;
        for (int v = 0; v < 4; ++v)
            quad.push_back(project(orbits[i].canonical.vertices.col(v), project_axis));
        fig.polyline(quad, color, 1.5, true);
        for (const auto& q : quad) fig.circle(q, 0.01, color);
    }
    return fig.str();
}

std::string branch_diagram(const std::vector<continuation::Path>& paths) {
    Figure fig(0.0, 0.0, 1.0, kTau);
    // axes
    fig.line({0, 0}, {1, 0}, "#888888", 1.0);
    fig.line({0, 0}, {0, kTau}, "#888888", 1.0);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        for (int branch = 0; branch < 4; ++branch) {
            std::vector<Eigen::Vector2d> pts;
            for (const auto& p : paths[i].points)
                pts.push_back({p.t, wrap_angle(p.theta[branch])});
            fig.polyline(pts, kPalette[(i * 4 + branch) % kPalette.size()], 1.0);
        }
        for (const auto& e : paths[i].events)
            fig.circle({e.t, 0.15}, 0.01, e.kind == continuation::EventKind::Fold ? "#c0392b" : "#f39c12");
    }
    return fig.str();
}

std::string diagnose_figure(const ClosedCurve& c, const PiDistanceResult& pid, int n) {
    const auto pts = curve_points(c, 2);
    Figure fig = fit_figure(pts);
    fig.polyline(pts, "#333333", 2.0, true);
    const Polygon poly = inscribe_polygon(c, n);
    const Eigen::Vector2d a = project(poly.vertex(pid.start_vertex), 2);
    const Eigen::Vector2d b = project(poly.vertex(pid.end_vertex), 2);
    fig.line(a, b, "#c0392b", 2.0);
    fig.circle(a, 0.012, "#c0392b");
    fig.circle(b, 0.012, "#c0392b");
    fig.text({a.x(), a.y()}, "pi-distance chord");
    return fig.str();
}

std::string surface_with_simplex(const simplex::RadialSurface& surface,
                                 const simplex::InscribedSimplex& simplex, int project_axis) {
    std::vector<Eigen::Vector2d> all;
    std::vector<std::vector<Eigen::Vector2d>> wires;
    if (surface.dimension() == 3) {
        for (int iphi = 1; iphi < 8; ++iphi) {
            const double phi = kPi * iphi / 8;
            std::vector<Eigen::Vector2d> ring;
            for (int it = 0; it <= 96; ++it) {
                const double th = kTau * it / 96;
                Eigen::Vector3d u(std::sin(phi) * std::cos(th), std::sin(phi) * std::sin(th),
                                  std::cos(phi));
                const Eigen::Vector3d p = surface.radius(u) * u;
                ring.push_back(project(p, project_axis));
            }
            all.insert(all.end(), ring.begin(), ring.end());
            wires.push_back(std::move(ring));
        }
        for (int it = 0; it < 12; ++it) {
            const double th = kTau * it / 12;
            std::vector<Eigen::Vector2d> arc;
            for (int iphi = 0; iphi <= 64; ++iphi) {
                const double phi = kPi * iphi / 64;
                Eigen::Vector3d u(std::sin(phi) * std::cos(th), std::sin(phi) * std::sin(th),
                                  std::cos(phi));
                const Eigen::Vector3d p = surface.radius(u) * u;
                arc.push_back(project(p, project_axis));
            }
            all.insert(all.end(), arc.begin(), arc.end());
            wires.push_back(std::move(arc));
        }
    } else {
        std::vector<Eigen::Vector2d> ring;
        for (int it = 0; it <= 256; ++it) {
            const double th = kTau * it / 256;
            Eigen::Vector2d u(std::cos(th), std::sin(th));
            ring.push_back(surface.radius(u) * u);
        }
        all = ring;
        wires.push_back(std::move(ring));
    }
    Figure fig = fit_figure(all);
    for (const auto& w : wires) fig.polyline(w, "#bbbbbb", 0.6);
    const MatrixXd& v = simplex.vertices;
    for (Eigen::Index i = 0; i < v.cols(); ++i)
        for (Eigen::Index j = i + 1; j < v.cols(); ++j)
            fig.line(project(v.col(i), project_axis), project(v.col(j), project_axis), "#c0392b", 2.0);
    for (Eigen::Index i = 0; i < v.cols(); ++i)
        fig.circle(project(v.col(i), project_axis), 0.015, "#c0392b");
    return fig.str();
}

}  // namespace inscribe::svg
