#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "inscribe/continuation.hpp"

#include <cmath>

using namespace inscribe;
using namespace inscribe::continuation;

namespace {

RadialFourier lobed2() {
    VectorXd c(2);
    c << 0, 0.15;
    return RadialFourier(1.0, c, VectorXd());
}

RadialFourier lobed3() {
    VectorXd c(3);
    c << 0, 0, 0.2;
    return RadialFourier(1.0, c, VectorXd());
}

}  // namespace

TEST_CASE("constant family: path stays put") {
    const Ellipse e(2, 1);
    const CurveFamily fam(e, e);
    const auto seeds = slq::find_squares(e);
    REQUIRE(seeds.size() == 1);
    TrackOptions opts;
    opts.interior_searches = 0;
    const auto paths = track(fam, seeds, opts);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].reached_end);
    for (const auto& p : paths[0].points) {
        CHECK((p.theta - seeds[0].canonical.theta).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(p.residual < 1e-9);
    }
    CHECK(paths[0].events.empty());
}

TEST_CASE("ellipse(2,1) -> ellipse(1,2): smooth branch through a non-transverse circle") {
    const Ellipse e0(2, 1), e1(1, 2);
    const CurveFamily fam(e0, e1);
    const auto seeds = slq::find_squares(e0);
    REQUIRE(seeds.size() == 1);
    TrackOptions opts;
    opts.interior_searches = 0;
    const auto paths = track(fam, seeds, opts);
    REQUIRE(paths.size() == 1);
    const auto& path = paths[0];
    CHECK(path.reached_end);
    // independent oracle: the square of Ellipse(a,b) sits at theta1 = atan(a/b)
    for (const auto& p : path.points) {
        const double a = 2 - p.t, b = 1 + p.t;
        const double expect = std::atan2(a, b);
        double got = 1e300;
        for (int i = 0; i < 4; ++i) got = std::min(got, std::abs(wrap_angle(p.theta[i]) - expect));
        CHECK(got < 1e-6);
        CHECK(p.residual < 1e-9);
    }
    // a NonTransverse event is flagged near the circle at t = 0.5
    bool nt_near_half = false;
    for (const auto& ev : path.events)
        if (ev.kind == EventKind::NonTransverse && std::abs(ev.t - 0.5) < 0.05) nt_near_half = true;
    CHECK(nt_near_half);
    // no fold: t is monotone along this branch
    for (const auto& ev : path.events) CHECK(ev.kind != EventKind::Fold);
}

TEST_CASE("endpoint consistency: tracked t=1 solutions equal a fresh search") {
    const CurveFamily fam(lobed2(), lobed3());
    const auto seeds = slq::find_squares(lobed2());
    REQUIRE(seeds.size() == 1);
    TrackOptions opts;
    const auto paths = track(fam, seeds, opts);
    const auto target_orbits = slq::find_squares(lobed3());
    REQUIRE(target_orbits.size() == 3);
    // a path that rounds a fold can arrive at t=1 at both of its ends, so
    // collect every path point sitting at t=1
    std::vector<Eigen::Vector4d> endpoints;
    for (const auto& p : paths)
        for (const auto& pt : p.points)
            if (pt.t >= 1.0 - 1e-9) endpoints.push_back(pt.theta);
    REQUIRE(!endpoints.empty());
    auto orbit_dist = [](const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
        double best = 1e300;
        for (int s = 0; s < 4; ++s) {
            double m = 0;
            for (int i = 0; i < 4; ++i) {
                double d = std::abs(wrap_angle(a[i]) - wrap_angle(b[(i + s) % 4]));
                d = std::min(d, kTau - d);
                m = std::max(m, d);
            }
            best = std::min(best, m);
        }
        return best;
    };
    // every endpoint coincides with an independently found orbit
    for (const auto& ep : endpoints) {
        double best = 1e300;
        for (const auto& o : target_orbits) best = std::min(best, orbit_dist(ep, o.canonical.theta));
        CHECK(best < 1e-6);
    }
    // and all three target orbits are hit (no branch drops without an event)
    int matched_targets = 0;
    for (const auto& o : target_orbits) {
        bool hit = false;
        for (const auto& ep : endpoints) hit = hit || orbit_dist(ep, o.canonical.theta) < 1e-6;
        matched_targets += hit ? 1 : 0;
    }
    CHECK(matched_targets == 3);
}

TEST_CASE("fold events on the lobed2 -> lobed3 family create solutions in pairs") {
    const CurveFamily fam(lobed2(), lobed3());
    // pinned pre-build sample counts: 1,1,1,1,1,1,3,3,3,3,3 over 11 samples
    const auto report = parity_audit(fam, 11);
    REQUIRE(report.samples.size() == 11);
    const int expected[11] = {1, 1, 1, 1, 1, 1, 3, 3, 3, 3, 3};
    for (int i = 0; i < 11; ++i) {
        CHECK(report.samples[i].orbit_count == expected[i]);
        CHECK(report.samples[i].all_transverse);
    }
    CHECK(report.parity_constant);
    CHECK(report.parity == 1);
    // counts on either side of the fold differ by exactly two
    CHECK(report.samples[6].orbit_count - report.samples[5].orbit_count == 2);

    // tracking must record a fold event for a branch born in (0.5, 0.6)
    const auto seeds = slq::find_squares(lobed2());
    TrackOptions opts;
    const auto paths = track(fam, seeds, opts);
    bool fold_seen = false;
    for (const auto& p : paths)
        for (const auto& ev : p.events)
            if (ev.kind == EventKind::Fold && ev.t > 0.45 && ev.t < 0.65) fold_seen = true;
    CHECK(fold_seen);
}

TEST_CASE("parity audit on a family crossing the circle excludes the circle sample") {
    const Ellipse e0(2, 1), e1(1, 2);
    const CurveFamily fam(e0, e1);
    const auto report = parity_audit(fam, 5);  // t = 0, .25, .5, .75, 1
    REQUIRE(report.samples.size() == 5);
    CHECK(report.samples[2].all_transverse == false);  // the circle
    CHECK(report.excluded.size() == 1);
    CHECK(report.excluded[0] == doctest::Approx(0.5));
    for (int i : {0, 1, 3, 4}) {
        CHECK(report.samples[i].orbit_count == 1);
        CHECK(report.samples[i].all_transverse);
    }
    CHECK(report.parity_constant);
    CHECK(report.parity == 1);
}

TEST_CASE("constant ellipse family: count 1 at every sample") {
    const Ellipse e(2, 1);
    const CurveFamily fam(e, e);
    const auto report = parity_audit(fam, 5);
    for (const auto& s : report.samples) {
        CHECK(s.orbit_count == 1);
        CHECK(s.all_transverse);
    }
    CHECK(report.parity == 1);
}

TEST_CASE("family construction rejects mixed variants and invalid intermediates") {
    const Ellipse e(2, 1);
    const auto f = lobed3();
    CHECK_THROWS_AS(CurveFamily(e, f), size_error);
    // intermediate radius dips non-positive: 1 + t*1.5 cos(2t) hits zero
    VectorXd big(2);
    big << 0, 1.5;
    CHECK_THROWS_AS(RadialFourier(1.0, big, VectorXd()), degenerate_error);
}

TEST_CASE("path residuals stay below tolerance after each corrector step") {
    const CurveFamily fam(lobed2(), lobed3());
    const auto seeds = slq::find_squares(lobed2());
    TrackOptions opts;
    opts.interior_searches = 0;
    const auto paths = track(fam, seeds, opts);
    for (const auto& p : paths)
        for (const auto& pt : p.points) CHECK(pt.residual < 1e-9);
}
