#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sorptran/mesh.hpp"

using namespace sorptran;

TEST_CASE("grid construction") {
    const Grid1D grid(-2.0, 2.0, 399);
    CHECK(grid.dx() == 0.01);
    CHECK(grid.total_nodes() == 401);
    CHECK(grid.node(0) == -2.0);
    CHECK(grid.node(400) == 2.0);

    const Grid1D tiny(0.0, 1.0, 1);
    CHECK(tiny.node(0) == 0.0);
    CHECK(tiny.node(1) == 0.5);
    CHECK(tiny.node(2) == 1.0);

    const Grid1D ten(0.0, 1.0, 9);
    CHECK(ten.dx() == doctest::Approx(0.1).epsilon(1e-16));
    CHECK(ten.node(3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(std::fabs(ten.node(10) - 1.0) <= 1e-15);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid1D(1.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(Grid1D(2.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(Grid1D(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("refinement halves dx exactly") {
    const Grid1D coarse(0.0, 1.0, 9);
    const Grid1D fine(0.0, 1.0, 19);
    CHECK(fine.dx() == coarse.dx() / 2.0);
}

TEST_CASE("time partition") {
    const TimePartition time(0.5, 50);
    CHECK(time.dt() == 0.01);
    CHECK(time.time(0) == 0.0);
    CHECK(time.time(50) == 0.5);
    CHECK_THROWS_AS(TimePartition(0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(TimePartition(1.0, 0), std::invalid_argument);
}

TEST_CASE("trapezoid rule") {
    const Grid1D grid(0.0, 1.0, 9);

    std::vector<double> ones(grid.total_nodes(), 1.0);
    CHECK(trapezoid_integral(grid, ones) == doctest::Approx(1.0).epsilon(1e-15));

    std::vector<double> linear(grid.total_nodes());
    for (int i = 0; i < grid.total_nodes(); ++i) linear[i] = grid.node(i);
    CHECK(trapezoid_integral(grid, linear) == doctest::Approx(0.5).epsilon(1e-15));

    std::vector<double> square(grid.total_nodes());
    for (int i = 0; i < grid.total_nodes(); ++i) square[i] = grid.node(i) * grid.node(i);
    CHECK(trapezoid_integral(grid, square) == doctest::Approx(0.335).epsilon(1e-15));

    std::vector<double> wrong(5, 1.0);
    CHECK_THROWS_AS(trapezoid_integral(grid, wrong), std::invalid_argument);
}

TEST_CASE("trapezoid exact on affine functions") {
    const Grid1D grid(-1.5, 2.5, 37);
    std::vector<double> affine(grid.total_nodes());
    for (int i = 0; i < grid.total_nodes(); ++i) affine[i] = 3.0 * grid.node(i) - 0.7;
    // integral of 3x - 0.7 over (-1.5, 2.5): 1.5 x^2 - 0.7 x evaluated
    const double exact = 1.5 * (2.5 * 2.5 - 1.5 * 1.5) - 0.7 * 4.0;
    CHECK(trapezoid_integral(grid, affine) == doctest::Approx(exact).epsilon(1e-14));
}
