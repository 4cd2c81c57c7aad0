#include <doctest.h>

#include <stdexcept>

#include "uot/geometry.hpp"

using namespace uot;

TEST_CASE("total mass of uniform densities") {
    CHECK(total_mass(uniform_density(Domain(0, 1, 0, 1), 7, 13, 1.0)) == doctest::Approx(1.0));
    CHECK(total_mass(uniform_density(Domain(0, 5, 0, 5), 100, 100, 2.0)) ==
          doctest::Approx(50.0));
    CHECK(total_mass(uniform_density(Domain(0, 5, 0, 5), 1000, 1000, 1.0)) ==
          doctest::Approx(25.0));
}

TEST_CASE("total mass is resolution-invariant for uniform densities") {
    // Exact when the accumulation is representable (integer-valued sums)...
    const double ci = total_mass(uniform_density(Domain(0, 2, 0, 3), 16, 16, 1.0));
    const double fi = total_mass(uniform_density(Domain(0, 2, 0, 3), 64, 128, 1.0));
    CHECK(ci == fi);
    // ...and tight up to summation rounding otherwise.
    const double coarse = total_mass(uniform_density(Domain(0, 2, 0, 3), 16, 16, 0.7));
    const double fine = total_mass(uniform_density(Domain(0, 2, 0, 3), 64, 128, 0.7));
    CHECK(coarse == doctest::Approx(fine).epsilon(1e-12));
}

TEST_CASE("total mass is linear in the density values") {
    std::vector<double> v(16 * 16);
    for (size_t i = 0; i < v.size(); ++i) v[i] = 0.01 * i;
    const Domain d(0, 1, 0, 1);
    const GridDensity a(d, 16, 16, v);
    for (double& x : v) x *= 3.0;
    const GridDensity b(d, 16, 16, v);
    CHECK(total_mass(b) == doctest::Approx(3.0 * total_mass(a)));
}

TEST_CASE("grid geometry accessors") {
    const GridDensity g = uniform_density(Domain(0, 1, 0, 2), 10, 20, 1.0);
    CHECK(g.cell_area() == doctest::Approx(0.01));
    const Point p = g.center(0, 0);
    CHECK(p.x == doctest::Approx(0.05));
    CHECK(p.y == doctest::Approx(0.05));
    CHECK(g.domain().perimeter() == doctest::Approx(6.0));
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(GridDensity(Domain(0, 1, 0, 1), 0, 4, {}), std::invalid_argument);
    CHECK_THROWS_AS(GridDensity(Domain(0, 1, 0, 1), 2, 2, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(GridDensity(Domain(0, 1, 0, 1), 2, 2, {1, 2, 3, -1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Domain(1, 0, 0, 1), std::invalid_argument);
}

TEST_CASE("discrete measure rejects duplicates and out-of-domain points") {
    const Domain d(0, 1, 0, 1);
    CHECK_THROWS_AS(DiscreteMeasure(d, {{0.5, 0.5}, {0.5, 0.5}}, {1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DiscreteMeasure(d, {{1.5, 0.5}}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(DiscreteMeasure(d, {{0.5, 0.5}}, {-1.0}), std::invalid_argument);
    const DiscreteMeasure nu(d, {{0.25, 0.5}, {0.75, 0.5}}, {0.4, 0.6});
    CHECK(nu.total_mass() == doctest::Approx(1.0));
}
