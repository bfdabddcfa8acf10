#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sorptran/analytic.hpp"
#include "sorptran/isotherm.hpp"
#include "sorptran/mesh.hpp"

using namespace sorptran;

TEST_CASE("universal constants") {
    const ZkbProfile p2(0.2, 1.0, 0.0, 2.0, 1);
    CHECK(p2.alpha() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(p2.beta() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(p2.k_const() == doctest::Approx(1.0 / 12.0).epsilon(1e-15));

    const ZkbProfile p3(0.2, 1.0, 0.0, 3.0, 1);
    CHECK(p3.alpha() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p3.beta() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p3.k_const() == doctest::Approx(1.0 / 12.0).epsilon(1e-15));

    // heat-kernel limit: alpha -> d/2 as m -> 1+
    const ZkbProfile near_heat(0.2, 1.0, 0.0, 1.0 + 1e-9, 1);
    CHECK(near_heat.alpha() == doctest::Approx(0.5).epsilon(1e-6));

    CHECK_THROWS_AS(ZkbProfile(0.2, 1.0, 0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ZkbProfile(-0.1, 1.0, 0.0, 2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ZkbProfile(0.2, 1.0, 0.0, 2.0, 0), std::invalid_argument);
}

TEST_CASE("profile support") {
    const ZkbProfile profile(0.2, 1.0, 0.3, 2.0, 1);
    CHECK(profile.z(0.0, 0.3 + 2.0 * profile.support_radius(0.0)) == 0.0);
    CHECK(profile.z(0.0, 0.3) > 0.0);
    CHECK(profile.support_radius(0.4) > profile.support_radius(0.1));
    CHECK_THROWS_AS(profile.z(-1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(profile.support_radius(-1.5), std::domain_error);

    // C = k and t + t0 = 1 puts the cutoff exactly at radius 1
    const ZkbProfile unit(1.0 / 12.0, 1.0, 0.0, 2.0, 1);
    CHECK(unit.support_radius(0.0) == doctest::Approx(1.0).epsilon(1e-15));

    // numeric edge matches the analytic radius to one grid spacing
    const Grid1D fine(-2.0, 2.0, 3999);
    double last_positive = 0.0;
    for (int i = 0; i < fine.total_nodes(); ++i) {
        if (profile.z(0.25, fine.node(i)) > 0.0) last_positive = fine.node(i);
    }
    CHECK(std::fabs(last_positive - (0.3 + profile.support_radius(0.25))) <= fine.dx());
}

TEST_CASE("mass is conserved") {
    const ZkbProfile profile(0.2, 1.0, 0.0, 2.0, 1);
    const Grid1D fine(-2.0, 2.0, 79999);
    std::vector<double> nodal(fine.total_nodes());
    double mass0 = 0.0;
    for (double t : {0.0, 0.1, 0.3, 0.5}) {
        for (int i = 0; i < fine.total_nodes(); ++i) nodal[i] = profile.z(t, fine.node(i));
        const double mass = trapezoid_integral(fine, nodal);
        if (t == 0.0) {
            mass0 = mass;
        } else {
            CHECK(std::fabs(mass - mass0) / mass0 <= 1e-6);
        }
    }
}

TEST_CASE("pullback through the scalar capacity law") {
    const double m = 2.0;
    const ZkbProfile profile(0.2, 1.0, 0.0, m, 1);
    const Isotherm iso(IsothermKind::PmeScalar, 1.0 / m, 1);
    CHECK(profile.u(0.2, 1.9) == 0.0);
    for (double x : {0.0, 0.3, 0.7, 1.0}) {
        const double z = profile.z(0.2, x);
        const double u = profile.u(0.2, x);
        std::vector<double> uu{u}, bu(1);
        iso.b(uu, bu);
        CHECK(bu[0] == doctest::Approx(z).epsilon(1e-12));
    }
}

TEST_CASE("exact solution has vanishing pde residual") {
    // d_t z - d_xx u = 0 for the pullback u = z^m; central differences of
    // matched order in t and x should show residual of order h^2.
    const double m = 2.0;
    const ZkbProfile profile(0.2, 1.0, 0.0, m, 1);
    const double t = 0.25;
    const double x = 0.3;  // strictly inside the support, away from the edge
    auto residual = [&](double h) {
        const double zt = (profile.z(t + h, x) - profile.z(t - h, x)) / (2.0 * h);
        const double uxx =
            (profile.u(t, x + h) - 2.0 * profile.u(t, x) + profile.u(t, x - h)) / (h * h);
        return std::fabs(zt - uxx);
    };
    const double r1 = residual(1e-2);
    const double r2 = residual(5e-3);
    const double r3 = residual(2.5e-3);
    const double order1 = std::log2(r1 / r2);
    const double order2 = std::log2(r2 / r3);
    CHECK(order1 >= 1.7);
    CHECK(order2 >= 1.7);
}

TEST_CASE("free boundary regularity") {
    const ZkbProfile profile(0.2, 1.0, 0.0, 3.0, 1);
    const double R = profile.support_radius(0.2);
    // continuity of z from both sides
    CHECK(profile.z(0.2, R - 1e-9) <= 1e-4);
    CHECK(profile.z(0.2, R + 1e-9) == 0.0);
    // u is C1 at the edge: one-sided difference quotients both vanish
    const double h = 1e-6;
    const double inner_slope = (profile.u(0.2, R - h) - profile.u(0.2, R - 2.0 * h)) / h;
    CHECK(std::fabs(inner_slope) <= 1e-3);
    CHECK(profile.u(0.2, R + h) == 0.0);
}
