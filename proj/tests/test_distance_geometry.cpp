#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "inscribe/distance_geometry.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace inscribe;

namespace {

// bordered CM matrix built independently for the cofactor oracle
MatrixXd bordered(const SimplexDistanceRatioD& r) {
    const int n = r.k() + 2;
    MatrixXd m = MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) m(0, i) = m(i, 0) = 1;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
            if (i != j) m(i, j) = std::pow(r.d()(i - 1, j - 1), 2);
    return m;
}

MatrixXd random_points(Rng& rng, int k) {
    MatrixXd pts(k, k + 1);
    for (int c = 0; c <= k; ++c)
        for (int r = 0; r < k; ++r) pts(r, c) = rng.uniform(-2.0, 2.0);
    return pts;
}

}  // namespace

TEST_CASE("Cayley-Menger determinant on triangles") {
    CHECK(cayley_menger_det(SimplexDistanceRatioD::triangle(1, 1, 1)) == doctest::Approx(-3.0));
    // factored display -(a+b+c)(a+b-c)(a-b+c)(-a+b+c)
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = rng.uniform(0.2, 2.0), b = rng.uniform(0.2, 2.0);
        const double c = rng.uniform(std::abs(a - b) + 0.05, a + b + 1.0);
        const double expect = -(a + b + c) * (a + b - c) * (a - b + c) * (-a + b + c);
        CHECK(cayley_menger_det(SimplexDistanceRatioD::triangle(a, b, c)) ==
              doctest::Approx(expect).epsilon(1e-10));
    }
    // degenerate collinear case
    CHECK(cayley_menger_det(SimplexDistanceRatioD::triangle(1, 1, 2)) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Cayley-Menger determinant of the regular tetrahedron via cofactor oracle") {
    const auto r = SimplexDistanceRatioD::regular(3);
    const double via_oracle = oracle::cofactor_det(bordered(r));
    CHECK(via_oracle == doctest::Approx(4.0));
    CHECK(cayley_menger_det(r) == doctest::Approx(via_oracle).epsilon(1e-12));
}

TEST_CASE("volumes: equilateral triangle, degenerate triangle, regular tetrahedron") {
    CHECK(simplex_volume(SimplexDistanceRatioD::triangle(1, 1, 1)) ==
          doctest::Approx(std::sqrt(3.0) / 4).epsilon(1e-12));
    CHECK(simplex_volume(SimplexDistanceRatioD::triangle(1, 1, 2)) == doctest::Approx(0.0));
    // coordinate oracle: vertices of a unit-edge tetrahedron, signed determinant
    MatrixXd pts(3, 4);
    pts.col(0) << 1, 1, 1;
    pts.col(1) << 1, -1, -1;
    pts.col(2) << -1, 1, -1;
    pts.col(3) << -1, -1, 1;
    pts /= std::sqrt(8.0);  // unit edges
    MatrixXd edge(3, 3);
    for (int i = 0; i < 3; ++i) edge.col(i) = pts.col(i + 1) - pts.col(0);
    const double vol_oracle = std::abs(oracle::cofactor_det(edge)) / 6.0;
    CHECK(vol_oracle == doctest::Approx(1.0 / (6 * std::sqrt(2.0))).epsilon(1e-12));
    CHECK(simplex_volume(SimplexDistanceRatioD::regular(3)) ==
          doctest::Approx(vol_oracle).epsilon(1e-10));
}

TEST_CASE("circumradii against circumcenter constructions") {
    // equilateral triangle side 1
    MatrixXd tri(2, 3);
    tri.col(0) << 0, 0;
    tri.col(1) << 1, 0;
    tri.col(2) << 0.5, std::sqrt(3.0) / 2;
    const VectorXd c_tri = oracle::circumcenter(tri);
    const double rho_tri = (tri.col(0) - c_tri).norm();
    CHECK(rho_tri == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(circumradius(SimplexDistanceRatioD::triangle(1, 1, 1)) ==
          doctest::Approx(rho_tri).epsilon(1e-10));

    // 3-4-5 right triangle
    CHECK(circumradius(SimplexDistanceRatioD::triangle(3, 4, 5)) ==
          doctest::Approx(2.5).epsilon(1e-12));

    // regular tetrahedron side 1: equidistant-point solve
    MatrixXd tet(3, 4);
    tet.col(0) << 1, 1, 1;
    tet.col(1) << 1, -1, -1;
    tet.col(2) << -1, 1, -1;
    tet.col(3) << -1, -1, 1;
    tet /= std::sqrt(8.0);
    const VectorXd c_tet = oracle::circumcenter(tet);
    const double rho_tet = (tet.col(0) - c_tet).norm();
    CHECK(rho_tet == doctest::Approx(std::sqrt(3.0 / 8.0)).epsilon(1e-12));
    CHECK(circumradius(SimplexDistanceRatioD::regular(3)) ==
          doctest::Approx(rho_tet).epsilon(1e-10));
}

TEST_CASE("classification of the (1,1,1)/(1,1,2)/(1,1,3) triangles") {
    CHECK(classify(SimplexDistanceRatioD::triangle(1, 1, 1)).tag ==
          RatioTag::ConstructibleNondegenerate);
    CHECK(classify(SimplexDistanceRatioD::triangle(1, 1, 2)).tag == RatioTag::Degenerate);
    CHECK(classify(SimplexDistanceRatioD::triangle(1, 1, 3)).tag == RatioTag::NonConstructible);
    CHECK_THROWS_AS(simplex_volume(SimplexDistanceRatioD::triangle(1, 1, 3)),
                    constructibility_error);
    CHECK_THROWS_AS(circumradius(SimplexDistanceRatioD::triangle(1, 1, 2)),
                    constructibility_error);
}

TEST_CASE("Heron equivalence on random valid triangles") {
    Rng rng(5);
    int done = 0;
    while (done < 1000) {
        const double a = rng.uniform(0.1, 3.0), b = rng.uniform(0.1, 3.0);
        const double c = rng.uniform(std::abs(a - b) + 0.02, a + b - 0.02);
        if (!(c > 0)) continue;
        const double heron =
            0.25 * std::sqrt((a + b + c) * (a + b - c) * (a - b + c) * (-a + b + c));
        const double vol = simplex_volume(SimplexDistanceRatioD::triangle(a, b, c));
        CHECK(vol == doctest::Approx(heron).epsilon(1e-10));
        ++done;
    }
}

TEST_CASE("scale covariance of volume and circumradius") {
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 2 + static_cast<int>(rng.uniform() * 3);
        MatrixXd pts = random_points(rng, k);
        auto r = SimplexDistanceRatioD::from_points(pts);
        if (classify(r).tag != RatioTag::ConstructibleNondegenerate) continue;
        const double lam = rng.uniform(0.2, 4.0);
        auto rs = SimplexDistanceRatioD(k, lam * r.d());
        CHECK(simplex_volume(rs) ==
              doctest::Approx(std::pow(lam, k) * simplex_volume(r)).epsilon(1e-10));
        CHECK(circumradius(rs) == doctest::Approx(lam * circumradius(r)).epsilon(1e-10));
    }
}

TEST_CASE("coordinate round-trip in dimensions up to 4") {
    Rng rng(21);
    int done = 0;
    while (done < 200) {
        const int k = 2 + static_cast<int>(rng.uniform() * 3);
        MatrixXd pts = random_points(rng, k);
        auto r = SimplexDistanceRatioD::from_points(pts);
        if (classify(r).tag != RatioTag::ConstructibleNondegenerate) continue;
        // coordinate-based volume via the edge-matrix determinant
        MatrixXd edge(k, k);
        for (int i = 0; i < k; ++i) edge.col(i) = pts.col(i + 1) - pts.col(0);
        double fact = 1;
        for (int i = 2; i <= k; ++i) fact *= i;
        const double vol_coord = std::abs(oracle::cofactor_det(edge)) / fact;
        if (vol_coord < 1e-4) continue;  // stay away from the degeneracy band
        const VectorXd center = oracle::circumcenter(pts);
        const double rho_coord = (pts.col(0) - center).norm();
        CHECK(simplex_volume(r) == doctest::Approx(vol_coord).epsilon(1e-8));
        CHECK(circumradius(r) == doctest::Approx(rho_coord).epsilon(1e-8));
        ++done;
    }
}

TEST_CASE("invalid ratio matrices are rejected") {
    MatrixXd d(3, 3);
    d << 0, 1, 1, 1, 0, 1, 1, 1, 0.5;  // nonzero diagonal
    CHECK_THROWS_AS(SimplexDistanceRatioD(2, d), degenerate_error);
    d << 0, 1, 1, 2, 0, 1, 1, 1, 0;  // asymmetric
    CHECK_THROWS_AS(SimplexDistanceRatioD(2, d), degenerate_error);
    CHECK_THROWS_AS(SimplexDistanceRatioD::regular(9), size_error);
}
