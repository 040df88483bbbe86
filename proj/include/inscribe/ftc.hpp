#pragma once

#include "inscribe/config.hpp"
#include "inscribe/curve.hpp"
#include "inscribe/slq.hpp"

#include <vector>

namespace inscribe::ftc {

struct TurningReport {
    double kappa;             // total turning of the arc p -> q -> r -> s
    double theta;             // half apex angle recovered from kappa = 2pi - 4 theta
    double apex_angle;        // direct angle(qps), cross-check: theta = apex/2
    double planarity_defect;  // distance between the two diagonal midpoints
};

/// Turning of a square-like quadrilateral: exterior angles at q and r of the
/// open arc p->q->r->s.  Input must satisfy the equal-side/equal-diagonal
/// constraints within tol (relative to the side).
TurningReport slq_turning(const ConfigurationD& cfg, double tol = 1e-9);

struct SidelengthAudit {
    int polygonization;
    double pid_minimal;     // minimal-arc estimator (the pi_distance operation)
    double pid_exhaustive;  // literal all-subarc reading
    struct Entry {
        double side;
        double arc_curvature;  // turning of the curve arc theta1 -> theta4
        double arc_chord;      // its endpoint chord (= the side p-s)
        bool witness_ok;       // arc_curvature >= pi (the inadmissibility witness)
        bool ge_minimal;       // side >= pid_minimal - 0.05
        bool ge_exhaustive;    // side >= pid_exhaustive - 0.05
    };
    std::vector<Entry> solutions;
    bool flagged = false;  // some side is below the minimal-arc estimate
};

/// Runs find_squares and pi_distance and reports the sidelength bound under
/// both readings of the pi-distance, flagging violations of the naive one
/// (e.g. the circle: side sqrt(2) against estimate 2).
SidelengthAudit sidelength_audit(const ClosedCurve& c, const slq::Options& opts = {}, int n = 2000);

struct ExtractionLevel {
    int vertices;
    double rounding_radius;
    int orbit_count;
    bool picked;
    Eigen::Vector4d theta;
    double side;
};

struct ExtractionResult {
    std::vector<ExtractionLevel> levels;
    slq::Solution limit;        // pick at the finest successful level
    double residual_on_target;  // Slq residual of the limit evaluated on the target
};

struct ExtractionSchedule {
    int base = 64;
    int factor = 2;
    int levels = 5;
    slq::Options solver;
};

/// Limit extraction over refining inscribed polygons of the target with
/// corner-rounded (C^1) evaluation at each level: one orbit is selected per
/// level (largest side at the coarsest, then nearest neighbor), and the
/// finest pick is returned with its residual on the target curve.  Polygon
/// targets with a near-cusp corner (turning within 1e-3 of pi) are rejected.
ExtractionResult limit_extraction(const ClosedCurve& target, const ExtractionSchedule& sched = {});

}  // namespace inscribe::ftc
