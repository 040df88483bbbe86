#include "inscribe/continuation.hpp"

#include <algorithm>
#include <cmath>

namespace inscribe::continuation {

CurveFamily::CurveFamily(const ClosedCurve& start, const ClosedCurve& end) {
    const auto* e0 = dynamic_cast<const Ellipse*>(&start);
    const auto* e1 = dynamic_cast<const Ellipse*>(&end);
    const auto* f0 = dynamic_cast<const RadialFourier*>(&start);
    const auto* f1 = dynamic_cast<const RadialFourier*>(&end);
    if (e0 && e1) {
        ellipse_ = true;
        a0_ = e0->a();
        b0_ = e0->b();
        a1_ = e1->a();
        b1_ = e1->b();
    } else if (f0 && f1) {
        ellipse_ = false;
        c00_ = f0->c0();
        c01_ = f1->c0();
        const auto pad = [](const VectorXd& v, Eigen::Index n) {
            VectorXd out = VectorXd::Zero(n);
            out.head(v.size()) = v;
            return out;
        };
        const Eigen::Index nc = std::max(f0->cos_coeffs().size(), f1->cos_coeffs().size());
        const Eigen::Index ns = std::max(f0->sin_coeffs().size(), f1->sin_coeffs().size());
        cos0_ = pad(f0->cos_coeffs(), nc);
        cos1_ = pad(f1->cos_coeffs(), nc);
        sin0_ = pad(f0->sin_coeffs(), ns);
        sin1_ = pad(f1->sin_coeffs(), ns);
    } else {
        throw size_error("curve family endpoints must both be ellipses or both radial Fourier curves");
    }
    // every sampled intermediate curve must be simple (and positive, for radial)
    for (int i = 0; i <= 32; ++i) {
        const double t = i / 32.0;
        if (ellipse_) {
            Ellipse probe(a0_ + t * (a1_ - a0_), b0_ + t * (b1_ - b0_));  // validates
        } else {
            RadialFourier probe(c00_ + t * (c01_ - c00_), cos0_ + t * (cos1_ - cos0_),
                                sin0_ + t * (sin1_ - sin0_));  // validates
        }
    }
}

std::unique_ptr<ClosedCurve> CurveFamily::at(double t) const {
    if (ellipse_)
        return std::make_unique<Ellipse>(a0_ + t * (a1_ - a0_), b0_ + t * (b1_ - b0_), unchecked);
    return std::make_unique<RadialFourier>(c00_ + t * (c01_ - c00_), cos0_ + t * (cos1_ - cos0_),
                                           sin0_ + t * (sin1_ - sin0_), unchecked);
}

namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat45 = Eigen::Matrix<double, 4, 5>;

Eigen::Vector4d family_residual(const CurveFamily& fam, const Vec5& x) {
    const auto c = fam.at(x[4]);
    return slq::residual(*c, x.head<4>());
}

// [ analytic d/dtheta | central FD d/dt ]
Mat45 family_jacobian(const CurveFamily& fam, const Vec5& x) {
    Mat45 j;
    const auto c = fam.at(x[4]);
    j.leftCols<4>() = slq::jacobian(*c, x.head<4>());
    const double h = 1e-7;
    Vec5 xp = x, xm = x;
    xp[4] += h;
    xm[4] -= h;
    j.col(4) = (family_residual(fam, xp) - family_residual(fam, xm)) / (2 * h);
    return j;
}

Vec5 path_tangent(const CurveFamily& fam, const Vec5& x) {
    const Mat45 j = family_jacobian(fam, x);
    const Eigen::JacobiSVD<Mat45> svd(j, Eigen::ComputeFullV);
    Vec5 n = svd.matrixV().col(4);
    return n / n.norm();
}

// corrector: Newton on [residual; n.(x - x_pred)] = 0
bool correct(const CurveFamily& fam, Vec5& x, const Vec5& normal, const Vec5& anchor, double tol) {
    for (int it = 0; it < 30; ++it) {
        Eigen::Vector4d r;
        try {
            r = family_residual(fam, x);
        } catch (const degenerate_error&) {
            return false;
        }
        const double aug = normal.dot(x - anchor);
        if (r.norm() < tol && std::abs(aug) < 1e-12) return true;
        Eigen::Matrix<double, 5, 5> j;
        try {
            j.topRows<4>() = family_jacobian(fam, x);
        } catch (const degenerate_error&) {
            return false;
        }
        j.row(4) = normal.transpose();
        Vec5 rhs;
        rhs << r, aug;
        const Vec5 dx = j.partialPivLu().solve(-rhs);
        if (!dx.allFinite()) return false;
        x += dx;
        if (dx.norm() > 1.0) return false;  // wandered off
    }
    return false;
}

// solve at a pinned t (4x4 Newton in theta)
bool solve_at_t(const CurveFamily& fam, double t, Eigen::Vector4d& theta, double tol) {
    const auto c = fam.at(t);
    return slq::newton_refine(*c, theta, tol, 50).has_value();
}

PathPoint make_point(const CurveFamily& fam, const Vec5& x) {
    PathPoint p;
    p.t = x[4];
    p.theta = x.head<4>();
    const auto c = fam.at(p.t);
    const auto sol = slq::make_solution(*c, p.theta);
    p.side = sol.side;
    p.det = sol.cert.det;
    p.residual = sol.residual_norm;
    return p;
}

// track one branch from x0 in the direction with sign(dt) = dir
Path track_one(const CurveFamily& fam, const Vec5& x0, int dir, const TrackOptions& opts) {
    Path path;
    Vec5 x = x0;
    Vec5 tangent = path_tangent(fam, x);
    if (tangent[4] * dir < 0) tangent = -tangent;
    double h = opts.step;
    path.points.push_back(make_point(fam, x));
    bool nontransverse_open = false;
    {
        const auto c = fam.at(x[4]);
        nontransverse_open = !slq::make_solution(*c, x.head<4>()).cert.transverse;
        if (nontransverse_open) path.events.push_back({EventKind::NonTransverse, x[4], "seed"});
    }
    int prev_dt_sign = tangent[4] > 0 ? 1 : (tangent[4] < 0 ? -1 : 0);
    double prev_det = path.points.back().det;
    double prev_t = x[4];
    while (static_cast<int>(path.points.size()) < opts.max_points) {
        // clamp the step when the predicted t leaves [0, 1]
        if (x[4] + h * tangent[4] > 1.0 + 1e-12 || x[4] + h * tangent[4] < -1e-12) {
            const double target = tangent[4] > 0 ? 1.0 : 0.0;
            Eigen::Vector4d theta = x.head<4>();
            if (std::abs(target - x[4]) < 0.2 && solve_at_t(fam, target, theta, opts.corrector_tol)) {
                Vec5 xe;
                xe << theta, target;
                path.points.push_back(make_point(fam, xe));
                path.reached_end = target == 1.0;
                return path;
            }
        }
        Vec5 pred = x + h * tangent;
        Vec5 trial = pred;
        if (!correct(fam, trial, tangent, pred, opts.corrector_tol)) {
            h *= 0.5;
            if (h < opts.min_step) {
                path.events.push_back({EventKind::Stalled, x[4], "step floor reached"});
                return path;
            }
            continue;
        }
        // fold detection: sign change of dt along the path
        Vec5 tnew = path_tangent(fam, trial);
        if (tnew.dot(tangent) < 0) tnew = -tnew;
        const int dt_sign = tnew[4] > 0 ? 1 : (tnew[4] < 0 ? -1 : 0);
        bool fold_here = false;
        if (prev_dt_sign != 0 && dt_sign != 0 && dt_sign != prev_dt_sign) {
            path.events.push_back({EventKind::Fold, trial[4], "turning point in t"});
            fold_here = true;
        }
        prev_dt_sign = dt_sign == 0 ? prev_dt_sign : dt_sign;

        x = trial;
        tangent = tnew;
        path.points.push_back(make_point(fam, x));
        const PathPoint& last = path.points.back();

        {
            const auto c = fam.at(x[4]);
            const bool nt = !slq::make_solution(*c, x.head<4>()).cert.transverse;
            if (nt && !nontransverse_open)
                path.events.push_back({EventKind::NonTransverse, x[4], "rank-deficient Jacobian"});
            nontransverse_open = nt;
            // the restricted Jacobian crossing zero between steps is a
            // non-transverse point the discrete path stepped over
            if (!nt && !fold_here && prev_det != 0.0 && last.det != 0.0 &&
                std::signbit(prev_det) != std::signbit(last.det)) {
                const double tc =
                    prev_t + (last.t - prev_t) * prev_det / (prev_det - last.det);
                path.events.push_back({EventKind::NonTransverse, tc, "determinant sign change"});
            }
        }
        prev_det = last.det;
        prev_t = last.t;
        if (opts.min_side > 0 && last.side < opts.min_side) {
            path.events.push_back({EventKind::Exit, x[4], "below minimum side"});
            return path;
        }
        if (x[4] >= 1.0 - 1e-10) {
            if (x[4] > 1.0 + 1e-12) {  // overshoot: pin the endpoint at t = 1
                Eigen::Vector4d theta = x.head<4>();
                if (solve_at_t(fam, 1.0, theta, opts.corrector_tol)) {
                    Vec5 xe;
                    xe << theta, 1.0;
                    path.points.back() = make_point(fam, xe);
                }
            }
            path.reached_end = true;
            return path;
        }
        if (x[4] <= 1e-10 && path.points.size() > 2) {
            path.events.push_back({EventKind::Exit, x[4], "returned to t=0"});
            return path;
        }
        h = std::min(h * 1.5, opts.max_step);
    }
    path.events.push_back({EventKind::Stalled, x[4], "maximum path length"});
    return path;
}

double orbit_theta_distance(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
    auto circ = [](double u, double v) {
        const double d = std::abs(wrap_angle(u) - wrap_angle(v));
        return std::min(d, kTau - d);
    };
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 4; ++s) {
        double m = 0;
        for (int i = 0; i < 4; ++i) m = std::max(m, circ(a[i], b[(i + s) % 4]));
        best = std::min(best, m);
    }
    return best;
}

// does any existing path pass near (theta, t)?
bool covered(const std::vector<Path>& paths, double t, const Eigen::Vector4d& theta) {
    for (const auto& p : paths)
        for (const auto& pt : p.points)
            if (std::abs(pt.t - t) < 0.03 && orbit_theta_distance(pt.theta, theta) < 0.08)
                return true;
    return false;
}

}  // namespace

std::vector<Path> track(const CurveFamily& family, const std::vector<slq::Orbit>& seeds,
                        const TrackOptions& opts) {
    std::vector<Path> paths;
    for (const auto& seed : seeds) {
        Vec5 x0;
        x0 << seed.canonical.theta, 0.0;
        paths.push_back(track_one(family, x0, +1, opts));
    }
    // fresh interior searches pick up branches born at folds
    for (int j = 1; j <= opts.interior_searches; ++j) {
        const double tj = static_cast<double>(j) / (opts.interior_searches + 1);
        const auto curve = family.at(tj);
        slq::Options sopts = opts.solver;
        for (const auto& orb : slq::find_squares(*curve, sopts)) {
            if (covered(paths, tj, orb.canonical.theta)) continue;
            Vec5 x0;
            x0 << orb.canonical.theta, tj;
            Path fwd = track_one(family, x0, +1, opts);
            Path bwd = track_one(family, x0, -1, opts);
            // stitch: reversed backward leg + forward leg
            Path merged;
            merged.points.assign(bwd.points.rbegin(), bwd.points.rend());
            merged.points.insert(merged.points.end(), fwd.points.begin() + 1, fwd.points.end());
            merged.events = bwd.events;
            merged.events.insert(merged.events.end(), fwd.events.begin(), fwd.events.end());
            merged.reached_end = fwd.reached_end;
            paths.push_back(std::move(merged));
        }
    }
    return paths;
}

ParityReport parity_audit(const CurveFamily& family, int samples, const slq::Options& opts) {
    ParityReport rep;
    int parity = -1;
    for (int i = 0; i < samples; ++i) {
        const double t = samples == 1 ? 0.0 : static_cast<double>(i) / (samples - 1);
        const auto curve = family.at(t);
        const auto orbits = slq::find_squares(*curve, opts);
        ParitySample s;
        s.t = t;
        s.orbit_count = static_cast<int>(orbits.size());
        s.transverse_count = 0;
        for (const auto& o : orbits) s.transverse_count += o.canonical.cert.transverse ? 1 : 0;
        s.all_transverse = s.transverse_count == s.orbit_count && s.orbit_count > 0;
        if (!s.all_transverse) {
            rep.excluded.push_back(t);
        } else {
            const int p = s.orbit_count % 2;
            if (parity < 0)
                parity = p;
            else if (p != parity)
                rep.parity_constant = false;
        }
        rep.samples.push_back(s);
    }
    rep.parity = parity;
    return rep;
}

}  // namespace inscribe::continuation
