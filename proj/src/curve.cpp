#include "inscribe/curve.hpp"

#include <algorithm>
#include <cmath>

namespace inscribe {

namespace {

// Proper segment crossing in the plane; distance-threshold contact otherwise.
bool segments_intersect_2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                           const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
    auto orient = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q, const Eigen::Vector2d& r) {
        const double v = (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
        return (v > 0) - (v < 0);
    };
    const int o1 = orient(a, b, c), o2 = orient(a, b, d);
    const int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4;
}

double segment_distance(const VectorXd& p1, const VectorXd& p2, const VectorXd& q1,
                        const VectorXd& q2) {
    // closest points of two segments, clamped Gauss elimination
    const VectorXd d1 = p2 - p1, d2 = q2 - q1, r = p1 - q1;
    const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
    double s = 0, t = 0;
    const double c = d1.dot(r), b = d1.dot(d2);
    const double denom = a * e - b * b;
    if (denom > 1e-300) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
    t = e > 1e-300 ? std::clamp((b * s + f) / e, 0.0, 1.0) : 0.0;
    s = a > 1e-300 ? std::clamp((b * t - c) / a, 0.0, 1.0) : 0.0;
    return (p1 + s * d1 - q1 - t * d2).norm();
}

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    // seed with a few panels so symmetric integrands don't fool the estimate
    const int panels = 8;
    double sum = 0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + (b - a) * i / panels;
        const double x1 = a + (b - a) * (i + 1) / panels;
        const double fa = f(x0), fb = f(x1), fm = f(0.5 * (x0 + x1));
        const double whole = (x1 - x0) / 6.0 * (fa + 4 * fm + fb);
        sum += simpson(f, x0, x1, fa, fm, fb, whole, tol / panels, 48);
    }
    return sum;
}

}  // namespace

void ClosedCurve::require_simple(int samples) const {
    if (!is_simple(*this, samples)) throw degenerate_error("curve is not simple (self-intersects)");
}

// -- Ellipse ------------------------------------------------------------------

Ellipse::Ellipse(double a, double b) : a_(a), b_(b) {
    if (!(a > 0) || !(b > 0)) throw degenerate_error("ellipse semi-axes must be positive");
    require_simple();
}

VectorXd Ellipse::eval(double t) const {
    Eigen::Vector2d p(a_ * std::cos(t), b_ * std::sin(t));
    return p;
}

VectorXd Ellipse::velocity(double t) const {
    Eigen::Vector2d v(-a_ * std::sin(t), b_ * std::cos(t));
    return v;
}

// -- RadialFourier ------------------------------------------------------------

RadialFourier::RadialFourier(double c0, VectorXd cos_coeffs, VectorXd sin_coeffs)
    : c0_(c0), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    for (int i = 0; i < 4096; ++i) {
        if (radius(kTau * i / 4096.0) <= 0)
            throw degenerate_error("radial curve radius must stay positive");
    }
    require_simple();
}

double RadialFourier::radius(double t) const {
    double r = c0_;
    for (Eigen::Index m = 0; m < cos_.size(); ++m) r += cos_[m] * std::cos((m + 1) * t);
    for (Eigen::Index m = 0; m < sin_.size(); ++m) r += sin_[m] * std::sin((m + 1) * t);
    return r;
}

double RadialFourier::radius_derivative(double t) const {
    double r = 0;
    for (Eigen::Index m = 0; m < cos_.size(); ++m) r -= cos_[m] * (m + 1) * std::sin((m + 1) * t);
    for (Eigen::Index m = 0; m < sin_.size(); ++m) r += sin_[m] * (m + 1) * std::cos((m + 1) * t);
    return r;
}

VectorXd RadialFourier::eval(double t) const {
    const double r = radius(t);
    Eigen::Vector2d p(r * std::cos(t), r * std::sin(t));
    return p;
}

VectorXd RadialFourier::velocity(double t) const {
    const double r = radius(t), rp = radius_derivative(t);
    Eigen::Vector2d v(rp * std::cos(t) - r * std::sin(t), rp * std::sin(t) + r * std::cos(t));
    return v;
}

// -- Polygon ------------------------------------------------------------------

Polygon::Polygon(MatrixXd vertices) : v_(std::move(vertices)) {
    init();
    require_simple(vertex_count());
}

void Polygon::init() {
    const int m = vertex_count();
    if (m < 3) throw size_error("polygon needs at least 3 vertices");
    cum_.assign(m + 1, 0.0);
    for (int i = 0; i < m; ++i) {
        const double len = (vertex(i + 1) - vertex(i)).norm();
        if (len < kCoincidenceThreshold) throw degenerate_error("coincident consecutive polygon vertices");
        cum_[i + 1] = cum_[i] + len;
    }
    total_ = cum_[m];
}

VectorXd Polygon::eval(double t) const {
    const double s = wrap_angle(t) / kTau * total_;
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    const int i = std::max(0, static_cast<int>(it - cum_.begin()) - 1);
    const int e = std::min(i, vertex_count() - 1);
    const double f = (s - cum_[e]) / (cum_[e + 1] - cum_[e]);
    return vertex(e) + f * (vertex(e + 1) - vertex(e));
}

VectorXd Polygon::velocity(double t) const {
    const double s = wrap_angle(t) / kTau * total_;
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    const int e = std::min(std::max(0, static_cast<int>(it - cum_.begin()) - 1), vertex_count() - 1);
    const VectorXd d = vertex(e + 1) - vertex(e);
    return d / d.norm() * (total_ / kTau);  // constant speed
}

Polygon::OneSidedTangent Polygon::vertex_tangents(int i) const {
    OneSidedTangent t;
    const VectorXd in = vertex(i) - vertex(i - 1);
    const VectorXd out = vertex(i + 1) - vertex(i);
    t.incoming = in / in.norm();
    t.outgoing = out / out.norm();
    return t;
}

double Polygon::turning_angle(int i) const {
    const OneSidedTangent t = vertex_tangents(i);
    const double c = std::clamp(t.incoming.dot(t.outgoing), -1.0, 1.0);
    return std::acos(c);
}

// -- RoundedPolygon -----------------------------------------------------------

RoundedPolygon::RoundedPolygon(const Polygon& base, double radius)
    : k_(base.dimension()), radius_(radius) {
    const int m = base.vertex_count();
    if (radius <= 0) throw degenerate_error("rounding radius must be positive");
    // the cut length at each corner must stay well inside both edges
    std::vector<double> cut(m), ang(m);
    for (int i = 0; i < m; ++i) {
        ang[i] = base.turning_angle(i);
        cut[i] = ang[i] < 1e-12 ? 0.0 : radius * std::tan(0.5 * ang[i]);
        if (ang[i] > kPi - 1e-9)
            throw degenerate_error("cannot round a cusp corner");
    }
    for (int i = 0; i < m; ++i)
        if (cut[i] + cut[(i + 1) % m] > 0.9 * (base.vertex(i + 1) - base.vertex(i)).norm())
            throw degenerate_error("rounding radius too large for polygon edges");

    for (int i = 0; i < m; ++i) {
        const auto tang = base.vertex_tangents(i);
        if (ang[i] >= 1e-12) {
            // arc replacing corner i
            Piece arc;
            arc.arc = true;
            const VectorXd bis = (tang.outgoing - tang.incoming).normalized();
            const VectorXd center = base.vertex(i) + bis * (radius / std::cos(0.5 * ang[i]));
            const VectorXd p_in = base.vertex(i) - tang.incoming * cut[i];
            arc.center = center;
            arc.e1 = (p_in - center) / radius;
            arc.e2 = tang.incoming;
            arc.phi_total = ang[i];
            arc.length = radius * ang[i];
            pieces_.push_back(std::move(arc));
        }
        // segment from corner i exit to corner i+1 entry
        Piece seg;
        seg.arc = false;
        seg.p0 = base.vertex(i) + tang.outgoing * cut[i];
        const VectorXd q = base.vertex(i + 1) - tang.outgoing * cut[(i + 1) % m];
        seg.length = (q - seg.p0).norm();
        seg.dir = (q - seg.p0) / seg.length;
        pieces_.push_back(std::move(seg));
    }
    cum_.assign(pieces_.size() + 1, 0.0);
    for (std::size_t i = 0; i < pieces_.size(); ++i) cum_[i + 1] = cum_[i] + pieces_[i].length;
    total_ = cum_.back();
}

VectorXd RoundedPolygon::eval(double t) const {
    const double s = wrap_angle(t) / kTau * total_;
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    const std::size_t i =
        std::min(pieces_.size() - 1, static_cast<std::size_t>(std::max<long>(0, it - cum_.begin() - 1)));
    const Piece& p = pieces_[i];
    const double u = s - cum_[i];
    if (!p.arc) return p.p0 + u * p.dir;
    const double phi = u / radius_;
    return p.center + radius_ * (std::cos(phi) * p.e1 + std::sin(phi) * p.e2);
}

VectorXd RoundedPolygon::velocity(double t) const {
    const double s = wrap_angle(t) / kTau * total_;
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    const std::size_t i =
        std::min(pieces_.size() - 1, static_cast<std::size_t>(std::max<long>(0, it - cum_.begin() - 1)));
    const Piece& p = pieces_[i];
    const double speed = total_ / kTau;
    if (!p.arc) return p.dir * speed;
    const double phi = (s - cum_[i]) / radius_;
    return (-std::sin(phi) * p.e1 + std::cos(phi) * p.e2) * speed;
}

// -- arclength ----------------------------------------------------------------

double arclength(const ClosedCurve& c, double t0, double t1, double tol) {
    return adaptive_simpson([&](double t) { return c.velocity(t).norm(); }, t0, t1, tol);
}

double total_arclength(const ClosedCurve& c, double tol) { return arclength(c, 0.0, kTau, tol); }

std::vector<double> equal_arclength_parameters(const ClosedCurve& c, int n, double tol) {
    if (n < 3) throw size_error("polygonization needs n >= 3");
    const double total = total_arclength(c, tol);
    std::vector<double> ts(n);
    ts[0] = 0.0;
    double t = 0.0, s = 0.0;  // s = arclength at t
    const double step = total / n;
    for (int i = 1; i < n; ++i) {
        const double target = i * step;
        // Newton on s(t) - target with bisection bracket [t, 2pi]
        double lo = t, hi = kTau;
        double guess = t + (kTau - t) * (target - s) / std::max(total - s, 1e-300);
        for (int iter = 0; iter < 80; ++iter) {
            const double si = s + arclength(c, t, guess, tol);
            const double err = si - target;
            if (std::abs(err) < tol * 10 + 1e-13 * total) break;
            if (err > 0)
                hi = guess;
            else
                lo = guess;
            const double speed = c.velocity(guess).norm();
            double next = guess - err / std::max(speed, 1e-12);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            guess = next;
        }
        s += arclength(c, t, guess, tol);
        t = guess;
        ts[i] = t;
    }
    return ts;
}

Polygon inscribe_polygon(const ClosedCurve& c, int n, double tol) {
    const std::vector<double> ts = equal_arclength_parameters(c, n, tol);
    MatrixXd v(c.dimension(), n);
    for (int i = 0; i < n; ++i) v.col(i) = c.eval(ts[i]);
    return Polygon(std::move(v), unchecked);
}

// -- total curvature ----------------------------------------------------------

double total_curvature(const Polygon& p, int i, int j) {
    const int m = p.vertex_count();
    int steps = ((j - i) % m + m) % m;
    if (steps == 0) throw size_error("empty polygon arc");
    double k = 0;
    for (int v = 1; v < steps; ++v) k += p.turning_angle(i + v);
    return k;
}

double total_curvature(const Polygon& p) {
    double k = 0;
    for (int i = 0; i < p.vertex_count(); ++i) k += p.turning_angle(i);
    return k;
}

double total_curvature(const CurveArc& arc) {
    const auto* poly = dynamic_cast<const Polygon*>(arc.curve);
    if (poly == nullptr) throw size_error("total_curvature over an arc needs a polygonal curve");
    const double s = wrap_angle(arc.s);
    double t = wrap_angle(arc.t);
    if (t <= s) t += kTau;
    if (t - s >= kTau) throw size_error("arc must be shorter than the full period");
    double k = 0;
    for (int i = 0; i < poly->vertex_count(); ++i) {
        double tp = poly->vertex_parameter(i);
        if (tp <= s) tp += kTau;
        if (tp > s && tp < t) k += poly->turning_angle(i);
    }
    return k;
}

// -- pi-distance --------------------------------------------------------------

namespace {

PiDistanceResult pid_scan(const Polygon& poly, bool minimal_only) {
    const int n = poly.vertex_count();
    std::vector<double> ang(n);
    double total = 0;
    for (int i = 0; i < n; ++i) total += (ang[i] = poly.turning_angle(i));
    if (total < kPi) throw internal_error("polygonization has total curvature below pi");
    PiDistanceResult best{std::numeric_limits<double>::infinity(), -1, -1};
    for (int i = 0; i < n; ++i) {
        double kappa = 0;
        for (int j = i + 2; j < i + n; ++j) {
            kappa += ang[(j - 1) % n];
            if (kappa >= kPi) {
                const double chord = (poly.vertex(i) - poly.vertex(j % n)).norm();
                if (chord < best.value) best = {chord, i, j % n};
                if (minimal_only) break;
            }
        }
    }
    if (best.start_vertex < 0) throw internal_error("no subarc reaches curvature pi");
    return best;
}

}  // namespace

PiDistanceResult pi_distance_detail(const ClosedCurve& c, int n) {
    return pid_scan(inscribe_polygon(c, n), true);
}

double pi_distance(const ClosedCurve& c, int n) { return pi_distance_detail(c, n).value; }

double pi_distance_exhaustive(const ClosedCurve& c, int n) {
    return pid_scan(inscribe_polygon(c, n), false).value;
}

// -- helpers ------------------------------------------------------------------

double curve_diameter(const ClosedCurve& c, int samples) {
    MatrixXd p(c.dimension(), samples);
    for (int i = 0; i < samples; ++i) p.col(i) = c.eval(kTau * i / samples);
    double best = 0;
    for (int i = 0; i < samples; ++i)
        for (int j = i + 1; j < samples; ++j) best = std::max(best, (p.col(i) - p.col(j)).norm());
    return best;
}

bool is_simple(const ClosedCurve& c, int samples) {
    int n = samples;
    MatrixXd v(c.dimension(), 0);
    if (const auto* poly = dynamic_cast<const Polygon*>(&c)) {
        n = poly->vertex_count();
        v = poly->vertices();
    } else {
        v.resize(c.dimension(), n);
        for (int i = 0; i < n; ++i) v.col(i) = c.eval(kTau * i / n);
    }
    double scale = 0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, (v.col((i + 1) % n) - v.col(i)).norm());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // adjacent around the seam
            if (c.dimension() == 2) {
                if (segments_intersect_2d(v.col(i).head<2>(), v.col((i + 1) % n).head<2>(),
                                          v.col(j).head<2>(), v.col((j + 1) % n).head<2>()))
                    return false;
            } else {
                if (segment_distance(v.col(i), v.col((i + 1) % n), v.col(j), v.col((j + 1) % n)) <
                    1e-9 * scale)
                    return false;
            }
        }
    }
    return true;
}

}  // namespace inscribe
