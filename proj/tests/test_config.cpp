#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "inscribe/config.hpp"

#include <cmath>

using namespace inscribe;

namespace {

ConfigurationD make_config(std::initializer_list<std::initializer_list<double>> pts) {
    const int n = static_cast<int>(pts.size());
    const int k = static_cast<int>(pts.begin()->size());
    MatrixXd m(k, n);
    int c = 0;
    for (const auto& p : pts) {
        int r = 0;
        for (const double x : p) m(r++, c) = x;
        ++c;
    }
    return ConfigurationD(m);
}

ConfigurationD random_config(Rng& rng, int k, int n) {
    MatrixXd m(k, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < k; ++r) m(r, c) = rng.uniform(-2.0, 2.0);
    return ConfigurationD(m);
}

}  // namespace

TEST_CASE("direction on axis-aligned and diagonal pairs") {
    const auto c = make_config({{0, 0}, {1, 0}});
    const VectorXd d = direction(c, 0, 1);
    CHECK(d[0] == doctest::Approx(-1.0));
    CHECK(d[1] == doctest::Approx(0.0));

    const auto c2 = make_config({{0, 0}, {1, 1}});
    const VectorXd d2 = direction(c2, 0, 1);
    CHECK(d2[0] == doctest::Approx(-1.0 / std::sqrt(2.0)));
    CHECK(d2[1] == doctest::Approx(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("direction antisymmetry and unit norm on random pairs") {
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = 2 + static_cast<int>(rng.uniform() * 3);
        const auto c = random_config(rng, k, 4);
        const int i = static_cast<int>(rng.uniform() * 4);
        int j = static_cast<int>(rng.uniform() * 4);
        if (j == i) j = (j + 1) % 4;
        const VectorXd dij = direction(c, i, j);
        const VectorXd dji = direction(c, j, i);
        CHECK((dij + dji).norm() < 1e-12);
        CHECK(std::abs(dij.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("ratio on triangles") {
    const auto eq = make_config({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
    CHECK(ratio(eq, 0, 1, 2) == doctest::Approx(1.0));
    const auto col = make_config({{0, 0}, {2, 0}, {1, 0}});
    CHECK(ratio(col, 0, 1, 2) == doctest::Approx(2.0));
}

TEST_CASE("ratio reciprocal identity on random triples") {
    Rng rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto c = random_config(rng, 3, 5);
        const int i = static_cast<int>(rng.uniform() * 5);
        const int j = (i + 1 + static_cast<int>(rng.uniform() * 4)) % 5;
        int k = (j + 1 + static_cast<int>(rng.uniform() * 4)) % 5;
        if (k == i) k = (k + 1) % 5;
        if (k == j) k = (k + 1) % 5;
        if (k == i) k = (k + 1) % 5;
        CHECK(ratio(c, i, j, k) * ratio(c, i, k, j) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("ratio invariance and direction equivariance under rigid motion") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = random_config(rng, 3, 4);
        const MatrixXd rot = rng.rotation(3);
        VectorXd shift(3);
        for (int r = 0; r < 3; ++r) shift[r] = rng.uniform(-5.0, 5.0);
        const double scale = rng.uniform(0.1, 3.0);
        MatrixXd moved = scale * (rot * c.points());
        moved.colwise() += shift;
        const ConfigurationD m(moved);
        CHECK(ratio(m, 0, 1, 2) == doctest::Approx(ratio(c, 0, 1, 2)).epsilon(1e-12));
        // rotation alone for direction equivariance
        const ConfigurationD rotated(rot * c.points());
        CHECK((direction(rotated, 0, 1) - rot * direction(c, 0, 1)).norm() < 1e-12);
    }
}

TEST_CASE("cyclic relabel shifts labels and has order four") {
    const auto c = make_config({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const auto s = cyclic_relabel(c);
    CHECK((s.point(0) - c.point(1)).norm() == 0.0);
    CHECK((s.point(3) - c.point(0)).norm() == 0.0);
    const auto s4 = cyclic_relabel(cyclic_relabel(cyclic_relabel(cyclic_relabel(c))));
    CHECK((s4.points() - c.points()).norm() == 0.0);
}

TEST_CASE("relabeled ratios equal source ratios under index bookkeeping") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_config(rng, 2, 4);
        const auto s = cyclic_relabel(c);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) {
                    if (i == j || j == k || i == k) continue;
                    CHECK(ratio(s, i, j, k) ==
                          doctest::Approx(ratio(c, (i + 1) % 4, (j + 1) % 4, (k + 1) % 4))
                              .epsilon(1e-12));
                }
    }
}

TEST_CASE("errors: coincident points, bad sizes") {
    MatrixXd m(2, 2);
    m << 1, 1, 2, 2;  // exactly coincident
    CHECK_THROWS_AS(ConfigurationD{m}, degenerate_error);

    const auto c = make_config({{0, 0}, {1, 0}, {0, 1}});
    CHECK_THROWS_AS(cyclic_relabel(c), size_error);
    CHECK_THROWS_AS(direction(c, 0, 0), size_error);
    CHECK_THROWS_AS(ratio(c, 0, 1, 1), size_error);

    MatrixXd tiny(2, 2);
    tiny << 0, 1e-15, 0, 0;  // nonzero but below the coincidence threshold
    const ConfigurationD ct(tiny);
    CHECK_THROWS_AS(direction(ct, 0, 1), degenerate_error);
}
