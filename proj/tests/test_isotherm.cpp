#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sorptran/isotherm.hpp"

using namespace sorptran;

namespace {

std::vector<double> bvec(const Isotherm& iso, std::vector<double> u) {
    std::vector<double> out(u.size());
    iso.b(u, out);
    return out;
}

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

std::vector<double> random_point(std::mt19937_64& rng, int m, double rmin, double rmax) {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> logr(std::log(rmin), std::log(rmax));
    std::vector<double> u(m);
    double norm = 0.0;
    for (auto& v : u) {
        v = gauss(rng);
        norm += v * v;
    }
    norm = std::sqrt(norm);
    const double r = std::exp(logr(rng));
    for (auto& v : u) v *= r / norm;
    return u;
}

}  // namespace

TEST_CASE("constructor invariants") {
    CHECK_THROWS_AS(Isotherm(IsothermKind::FreundlichTransport, 0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(Isotherm(IsothermKind::FreundlichTransport, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(Isotherm(IsothermKind::FreundlichTransport, -0.5, 2), std::invalid_argument);
    CHECK_THROWS_AS(Isotherm(IsothermKind::PmeScalar, 0.5, 0), std::invalid_argument);
}

TEST_CASE("potential closed-form values") {
    const Isotherm iso(IsothermKind::FreundlichTransport, 1.0 / 3.0, 2);
    CHECK(iso.potential(std::vector<double>{0.0, 0.0}) == 0.0);
    // 1/2 |u|^2 + 1/(p+1) |u|^{p+1} at u = (1,0), p = 1/3
    CHECK(rel_err(iso.potential(std::vector<double>{1.0, 0.0}), 1.25) < 1e-15);
    // radial symmetry: phi depends on |u| only
    CHECK(iso.potential(std::vector<double>{0.3, -0.7}) ==
          doctest::Approx(iso.potential(std::vector<double>{-0.7, 0.3})).epsilon(1e-15));
    CHECK_THROWS_AS(iso.potential(std::vector<double>{1.0, std::nan("")}), std::domain_error);
}

TEST_CASE("capacity values") {
    const Isotherm iso(IsothermKind::FreundlichTransport, 1.0 / 3.0, 2);
    auto b0 = bvec(iso, {0.0, 0.0});
    CHECK(b0[0] == 0.0);
    CHECK(b0[1] == 0.0);

    auto b1 = bvec(iso, {1.0, 0.0});
    CHECK(rel_err(b1[0], 2.0) < 1e-15);
    CHECK(b1[1] == 0.0);

    // |u| = 0.008, p = 1/3: |u|^{p-1} u has norm 0.008^{1/3} = 0.2, so
    // b = (0.008 + 0.2, 0) = (0.208, 0).
    auto bs = bvec(iso, {0.008, 0.0});
    CHECK(rel_err(bs[0], 0.208) < 1e-14);
    CHECK(bs[1] == 0.0);
}

TEST_CASE("conjugate density") {
    const Isotherm iso(IsothermKind::FreundlichTransport, 1.0 / 3.0, 2);
    CHECK(iso.conjugate_density(std::vector<double>{0.0, 0.0}) == 0.0);
    // 1/2 + (1/3)/(4/3) = 0.75 at u = (1,0)
    CHECK(rel_err(iso.conjugate_density(std::vector<double>{1.0, 0.0}), 0.75) < 1e-15);
}

TEST_CASE("conjugate identity B = u.b - phi") {
    std::mt19937_64 rng(7);
    for (auto kind : {IsothermKind::FreundlichTransport, IsothermKind::PmeScalar}) {
        const int m = kind == IsothermKind::PmeScalar ? 1 : 2;
        for (double p : {1.0 / 3.0, 0.5, 0.8}) {
            const Isotherm iso(kind, p, m);
            for (int trial = 0; trial < 200; ++trial) {
                auto u = random_point(rng, m, 1e-3, 1e3);
                auto bu = bvec(iso, u);
                double direct = -iso.potential(u);
                for (int k = 0; k < m; ++k) direct += u[k] * bu[k];
                CHECK(rel_err(direct, iso.conjugate_density(u)) < 1e-12);
            }
        }
    }
}

TEST_CASE("gradient identity b = grad(phi) by finite differences") {
    std::mt19937_64 rng(11);
    for (auto kind : {IsothermKind::FreundlichTransport, IsothermKind::PmeScalar}) {
        const int m = kind == IsothermKind::PmeScalar ? 1 : 2;
        const Isotherm iso(kind, 1.0 / 3.0, m);
        for (int trial = 0; trial < 100; ++trial) {
            auto u = random_point(rng, m, 0.01, 10.0);
            auto bu = bvec(iso, u);
            double radius = 0.0;
            for (double v : u) radius += v * v;
            radius = std::sqrt(radius);
            const double h = 1e-6 * std::max(1.0, radius);
            for (int k = 0; k < m; ++k) {
                auto up = u, dn = u;
                up[k] += h;
                dn[k] -= h;
                const double fd = (iso.potential(up) - iso.potential(dn)) / (2.0 * h);
                CHECK(std::fabs(fd - bu[k]) <= 1e-6 * std::max(std::fabs(bu[k]), 1e-3 * radius));
            }
        }
    }
}

TEST_CASE("monotonicity of b") {
    std::mt19937_64 rng(13);
    const Isotherm iso(IsothermKind::FreundlichTransport, 1.0 / 3.0, 2);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> z{coord(rng), coord(rng)}, w{coord(rng), coord(rng)};
        auto bz = bvec(iso, z), bw = bvec(iso, w);
        double dot = 0.0;
        for (int k = 0; k < 2; ++k) dot += (bz[k] - bw[k]) * (z[k] - w[k]);
        CHECK(dot >= 0.0);
    }
}

TEST_CASE("rotational symmetry") {
    std::mt19937_64 rng(17);
    const Isotherm iso(IsothermKind::FreundlichTransport, 1.0 / 3.0, 2);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    for (int trial = 0; trial < 100; ++trial) {
        auto u = random_point(rng, 2, 0.01, 10.0);
        const double a = angle(rng);
        const double c = std::cos(a), s = std::sin(a);
        std::vector<double> qu{c * u[0] - s * u[1], s * u[0] + c * u[1]};
        CHECK(iso.potential(qu) == doctest::Approx(iso.potential(u)).epsilon(1e-13));
        auto bu = bvec(iso, u);
        auto bqu = bvec(iso, qu);
        CHECK(bqu[0] == doctest::Approx(c * bu[0] - s * bu[1]).epsilon(1e-12));
        CHECK(bqu[1] == doctest::Approx(s * bu[0] + c * bu[1]).epsilon(1e-12));
    }
}

TEST_CASE("conjugate bound |b(z)| <= delta B(z) + max ball |b|") {
    std::mt19937_64 rng(19);
    const Isotherm iso(IsothermKind::FreundlichTransport, 1.0 / 3.0, 2);
    std::uniform_real_distribution<double> coord(-20.0, 20.0);
    for (double delta : {0.5, 1.0, 2.0}) {
        // b is radial and increasing, but evaluate the cap by dense sampling.
        double cap = 0.0;
        for (int i = 0; i <= 5000; ++i) {
            std::vector<double> w{(1.0 / delta) * i / 5000.0, 0.0};
            auto bw = bvec(iso, w);
            cap = std::max(cap, std::hypot(bw[0], bw[1]));
        }
        for (int trial = 0; trial < 500; ++trial) {
            std::vector<double> z{coord(rng), coord(rng)};
            auto bz = bvec(iso, z);
            const double lhs = std::hypot(bz[0], bz[1]);
            CHECK(lhs <= (delta * iso.conjugate_density(z) + cap) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("growth conditions") {
    const Isotherm iso(IsothermKind::FreundlichTransport, 1.0 / 3.0, 2);

    std::vector<double> origin{0.0, 0.0};
    auto at_zero = iso.check_growth_conditions(origin);
    CHECK(at_zero.finite);
    CHECK(at_zero.c1 == 0.0);
    CHECK(at_zero.c2 == 0.0);

    std::vector<double> sweep;
    for (int i = 0; i <= 200; ++i) {
        sweep.push_back(10.0 * i / 200.0);
        sweep.push_back(0.0);
    }
    auto report = iso.check_growth_conditions(sweep);
    CHECK(report.finite);
    CHECK(report.c1 > 0.0);
    CHECK(report.c2 > 0.0);

    // |b(u)| / (|u| + 1) -> 1 as |u| -> infinity for p < 1
    std::vector<double> far{1e6, 0.0};
    auto tail = iso.check_growth_conditions(far);
    CHECK(tail.c1 == doctest::Approx(1.0).epsilon(1e-3));

    CHECK_THROWS_AS(iso.check_growth_conditions(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("pme-scalar variant") {
    const double p = 0.5;
    const Isotherm iso(IsothermKind::PmeScalar, p, 1);
    // phi = 1/(p+1) |u|^{p+1}, B = p/(p+1) |u|^{p+1}
    CHECK(rel_err(iso.potential(std::vector<double>{1.0}), 1.0 / 1.5) < 1e-15);
    CHECK(rel_err(iso.conjugate_density(std::vector<double>{1.0}), 0.5 / 1.5) < 1e-15);
    auto b = bvec(iso, {4.0});
    CHECK(rel_err(b[0], 2.0) < 1e-15);  // |4|^{-1/2} * 4 = 2
    auto bneg = bvec(iso, {-4.0});
    CHECK(rel_err(bneg[0], -2.0) < 1e-15);
}

TEST_CASE("jacobian of b") {
    std::mt19937_64 rng(23);
    const Isotherm iso(IsothermKind::FreundlichTransport, 1.0 / 3.0, 2);
    CHECK_THROWS_AS(
        [&] {
            std::vector<double> out(4);
            iso.jacobian_b(std::vector<double>{0.0, 0.0}, out);
        }(),
        std::domain_error);

    for (int trial = 0; trial < 50; ++trial) {
        auto u = random_point(rng, 2, 0.1, 5.0);
        std::vector<double> jac(4);
        iso.jacobian_b(u, jac);
        const double h = 1e-6;
        for (int k = 0; k < 2; ++k) {
            auto up = u, dn = u;
            up[k] += h;
            dn[k] -= h;
            auto bp = bvec(iso, up), bm = bvec(iso, dn);
            for (int j = 0; j < 2; ++j) {
                const double fd = (bp[j] - bm[j]) / (2.0 * h);
                CHECK(std::fabs(fd - jac[j * 2 + k]) <= 1e-5 * std::max(1.0, std::fabs(fd)));
            }
        }
    }
}
