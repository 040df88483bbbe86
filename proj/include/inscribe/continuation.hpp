#pragma once

#include "inscribe/curve.hpp"
#include "inscribe/slq.hpp"

#include <memory>
#include <string>
#include <vector>

namespace inscribe::continuation {

/// One-parameter curve family between two endpoints of the same variant:
/// linear in (a, b) for ellipses, linear in Fourier coefficients for radial
/// curves.  Intermediate curves are validated (simple, positive radius) on a
/// sample grid at construction.
class CurveFamily {
  public:
    CurveFamily(const ClosedCurve& start, const ClosedCurve& end);

    std::unique_ptr<ClosedCurve> at(double t) const;
    int dimension() const { return 2; }

  private:
    bool ellipse_;
    double a0_ = 0, b0_ = 0, a1_ = 0, b1_ = 0;
    double c00_ = 0, c01_ = 0;
    VectorXd cos0_, sin0_, cos1_, sin1_;
};

struct PathPoint {
    double t;
    Eigen::Vector4d theta;
    double side;
    double det;
    double residual;
};

enum class EventKind { Fold, Exit, NonTransverse, Stalled };

struct Event {
    EventKind kind;
    double t;
    std::string detail;
};

struct Path {
    std::vector<PathPoint> points;
    std::vector<Event> events;
    bool reached_end = false;  // arrived at t = 1
};

struct TrackOptions {
    double step = 0.01;       // pseudo-arclength step in (theta, t)
    double max_step = 0.02;
    double min_step = 1e-6;   // floor; reaching it flags the path Stalled
    double corrector_tol = 1e-9;
    double min_side = 0.0;
    int max_points = 100000;
    int interior_searches = 5;  // fresh grid searches at interior t values
    slq::Options solver;
};

/// Pseudo-arclength predictor-corrector in (theta, t) from the given seeds at
/// t = 0, supplemented by fresh grid searches at interior t so branches born
/// at folds are found.  Folds are traversed and recorded as events.
std::vector<Path> track(const CurveFamily& family, const std::vector<slq::Orbit>& seeds,
                        const TrackOptions& opts = {});

struct ParitySample {
    double t;
    int orbit_count;
    int transverse_count;
    bool all_transverse;
};

struct ParityReport {
    std::vector<ParitySample> samples;
    bool parity_constant = true;  // over samples with all orbits transverse
    int parity = -1;              // the shared mod-2 count, -1 if no transverse sample
    std::vector<double> excluded;  // t values excluded as non-transverse
};

ParityReport parity_audit(const CurveFamily& family, int samples, const slq::Options& opts = {});

}  // namespace inscribe::continuation
