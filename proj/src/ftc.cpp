#include "inscribe/ftc.hpp"

#include <algorithm>
#include <cmath>

namespace inscribe::ftc {

namespace {

double angle_between(const VectorXd& u, const VectorXd& v) {
    const double c = std::clamp(u.dot(v) / (u.norm() * v.norm()), -1.0, 1.0);
    return std::acos(c);
}

}  // namespace

TurningReport slq_turning(const ConfigurationD& cfg, double tol) {
    if (cfg.size() != 4) throw size_error("slq_turning needs a 4-point configuration");
    const VectorXd p = cfg.point(0), q = cfg.point(1), r = cfg.point(2), s = cfg.point(3);
    const double sides[4] = {(q - p).norm(), (r - q).norm(), (s - r).norm(), (p - s).norm()};
    const double diags[2] = {(r - p).norm(), (s - q).norm()};
    const double ell = (sides[0] + sides[1] + sides[2] + sides[3]) / 4.0;
    for (const double sd : sides)
        if (std::abs(sd - ell) > tol * ell)
            throw constraint_error("configuration does not have equal sides");
    if (std::abs(diags[0] - diags[1]) > tol * ell)
        throw constraint_error("configuration does not have equal diagonals");

    TurningReport rep;
    // exterior angles at the interior vertices q and r of the arc p->q->r->s
    const double turn_q = angle_between(q - p, r - q);
    const double turn_r = angle_between(r - q, s - r);
    rep.kappa = turn_q + turn_r;
    rep.theta = (kTau - rep.kappa) / 4.0;
    rep.apex_angle = angle_between(q - p, s - p);
    rep.planarity_defect = (0.5 * (p + r) - 0.5 * (q + s)).norm();
    return rep;
}

SidelengthAudit sidelength_audit(const ClosedCurve& c, const slq::Options& opts, int n) {
    SidelengthAudit audit;
    audit.polygonization = n;
    audit.pid_minimal = pi_distance(c, n);
    audit.pid_exhaustive = pi_distance_exhaustive(c, n);
    const Polygon poly = inscribe_polygon(c, n);
    const double total = total_arclength(c);
    const auto orbits = slq::find_squares(c, opts);
    for (const auto& o : orbits) {
        SidelengthAudit::Entry e;
        e.side = o.canonical.side;
        // map curve parameters to the polygon's arclength-proportional ones
        const double u1 = kTau * arclength(c, 0.0, o.canonical.theta[0]) / total;
        const double u4 = kTau * arclength(c, 0.0, o.canonical.theta[3]) / total;
        const CurveArc arc{&poly, u1, u4};
        e.arc_curvature = total_curvature(arc);
        e.arc_chord = (c.eval(o.canonical.theta[0]) - c.eval(o.canonical.theta[3])).norm();
        e.witness_ok = e.arc_curvature >= kPi - 0.05;
        e.ge_minimal = e.side >= audit.pid_minimal - 0.05;
        e.ge_exhaustive = e.side >= audit.pid_exhaustive - 0.05;
        if (!e.ge_minimal) audit.flagged = true;
        audit.solutions.push_back(e);
    }
    return audit;
}

ExtractionResult limit_extraction(const ClosedCurve& target, const ExtractionSchedule& sched) {
    if (const auto* poly = dynamic_cast<const Polygon*>(&target)) {
        for (int i = 0; i < poly->vertex_count(); ++i)
            if (poly->turning_angle(i) > kPi - 1e-3)
                throw constraint_error("target polygon has a cusp corner");
    }
    double floor_side = 0.0;
    try {
        floor_side = 0.5 * pi_distance(target, 2000);
    } catch (const internal_error&) {
    }

    ExtractionResult result;
    bool have_pick = false;
    Eigen::Vector4d prev_theta;
    slq::Solution last_pick;
    for (int level = 0; level < sched.levels; ++level) {
        int nv = sched.base;
        for (int i = 0; i < level; ++i) nv *= sched.factor;
        const Polygon levelpoly = inscribe_polygon(target, nv);
        const RoundedPolygon rounded(levelpoly, 1.0 / (4.0 * nv));
        slq::Options opts = sched.solver;
        opts.min_side = floor_side;
        const auto orbits = slq::find_squares(rounded, opts);
        ExtractionLevel lv;
        lv.vertices = nv;
        lv.rounding_radius = rounded.radius();
        lv.orbit_count = static_cast<int>(orbits.size());
        lv.picked = false;
        if (!orbits.empty()) {
            std::size_t pick = 0;
            if (!have_pick) {
                for (std::size_t i = 1; i < orbits.size(); ++i)
                    if (orbits[i].canonical.side > orbits[pick].canonical.side) pick = i;
            } else {
                auto dist = [&](const Eigen::Vector4d& a) {
                    double best = std::numeric_limits<double>::infinity();
                    for (int sh = 0; sh < 4; ++sh) {
                        double m = 0;
                        for (int i = 0; i < 4; ++i) {
                            const double d = std::abs(wrap_angle(a[i]) - wrap_angle(prev_theta[(i + sh) % 4]));
                            m = std::max(m, std::min(d, kTau - d));
                        }
                        best = std::min(best, m);
                    }
                    return best;
                };
                for (std::size_t i = 1; i < orbits.size(); ++i)
                    if (dist(orbits[i].canonical.theta) < dist(orbits[pick].canonical.theta)) pick = i;
            }
            lv.picked = true;
            lv.theta = orbits[pick].canonical.theta;
            lv.side = orbits[pick].canonical.side;
            prev_theta = lv.theta;
            last_pick = orbits[pick].canonical;
            have_pick = true;
        }
        result.levels.push_back(lv);
    }
    if (!have_pick) throw extraction_error("no level produced solutions above the size floor");
    result.limit = last_pick;
    // residual of the limit candidate evaluated on the target curve itself
    MatrixXd pts(target.dimension(), 4);
    for (int i = 0; i < 4; ++i) pts.col(i) = target.eval(result.limit.theta[i]);
    const double L01 = (pts.col(0) - pts.col(1)).norm(), L12 = (pts.col(1) - pts.col(2)).norm();
    const double L23 = (pts.col(2) - pts.col(3)).norm(), L03 = (pts.col(0) - pts.col(3)).norm();
    const double L02 = (pts.col(0) - pts.col(2)).norm(), L13 = (pts.col(1) - pts.col(3)).norm();
    Eigen::Vector4d res(L01 / L03 - 1.0, L12 / L01 - 1.0, L23 / L12 - 1.0, L02 / L01 - L13 / L01);
    result.residual_on_target = res.norm();
    return result;
}

}  // namespace inscribe::ftc
