#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ssguard/catalog.hpp"
#include "ssguard/field.hpp"

using namespace ssguard;

TEST_CASE("tricubic interpolation reproduces cubic polynomials exactly") {
    // cubic Lagrange interpolation is exact on polynomials of degree <= 3
    const Grid3 g = Grid3::cube(8, 2.0);
    auto poly = [](const Vec3& y) {
        return 1.0 + 0.5 * y.x - y.y + 2.0 * y.z + y.x * y.y * y.z + 0.25 * y.z * y.z * y.z;
    };
    std::vector<double> v(g.size());
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) v[g.index(i, j, k)] = poly(g.point(i, j, k));
    const ScalarField f = ScalarField::sampled(g, v, 3);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.9, 1.9);
    for (int t = 0; t < 200; ++t) {
        const Vec3 y{dist(rng), dist(rng), dist(rng)};
        CHECK(f(y) == doctest::Approx(poly(y)).epsilon(1e-12));
    }
}

TEST_CASE("trilinear interpolation reproduces linear fields exactly") {
    const Grid3 g = Grid3::cube(6, 1.0);
    auto lin = [](const Vec3& y) { return 2.0 * y.x - y.y + 0.5 * y.z - 0.25; };
    std::vector<double> v(g.size());
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k) v[g.index(i, j, k)] = lin(g.point(i, j, k));
    const ScalarField f = ScalarField::sampled(g, v, 1);
    CHECK(f({0.3, -0.7, 0.9}) == doctest::Approx(lin({0.3, -0.7, 0.9})).epsilon(1e-14));
}

TEST_CASE("envelope extrapolation continues power laws along rays") {
    const Grid3 g = Grid3::cube(32, 2.0);
    auto pw = [](const Vec3& y) { return std::pow(1e-9 + y.norm2(), -1.0); };  // ~ |y|^-2
    std::vector<double> v(g.size());
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j)
            for (int k = 0; k < 32; ++k) v[g.index(i, j, k)] = pw(g.point(i, j, k));
    const ScalarField f = ScalarField::sampled(g, v, 3, Extrapolation::envelope(-2.0));
    // outside the box along a diagonal ray
    const Vec3 y{3.0, 3.0, 3.0};
    CHECK(f(y) == doctest::Approx(pw(y)).epsilon(1e-3));
    // zero policy returns 0 outside
    const ScalarField f0 = ScalarField::sampled(g, v, 3, Extrapolation::none());
    CHECK(f0(y) == 0.0);
}

TEST_CASE("sampled field rejects malformed input") {
    const Grid3 g = Grid3::cube(4, 1.0);
    std::vector<double> bad(g.size() - 1, 0.0);
    CHECK_THROWS_AS(ScalarField::sampled(g, bad, 3), Error);
    std::vector<double> nan(g.size(), 0.0);
    nan[5] = std::nan("");
    CHECK_THROWS_AS(ScalarField::sampled(g, nan, 3), Error);
    CHECK_THROWS_AS(ScalarField::sampled(g, std::vector<double>(g.size(), 0.0), 2), Error);
}

TEST_CASE("catalog closed-form gradients match finite differences") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    auto check_grad = [&](const VectorField& f) {
        const VectorField fd = VectorField::analytic(
            "fd", [f](const Vec3& y) { return f(y); });  // no registered gradient -> FD
        for (int t = 0; t < 40; ++t) {
            const Vec3 y{dist(rng), dist(rng), dist(rng)};
            const Mat3 a = f.gradient(y);
            const Mat3 b = fd.gradient(y);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    CHECK(a(i, j) == doctest::Approx(b(i, j)).epsilon(1e-7).scale(1.0));
        }
    };
    check_grad(catalog::gaussian_column_velocity(1.3, 0.8));
    check_grad(catalog::gaussian_column_vorticity(1.3, 0.8));
    check_grad(catalog::gaussian_ring_velocity(0.7, 1.1));
    check_grad(catalog::gaussian_ring_vorticity(0.7, 1.1));
    check_grad(catalog::burgers_velocity(0.3, 1.0));
    check_grad(catalog::burgers_vorticity(0.3, 1.0));
    check_grad(catalog::linear_strain_velocity(0.1, 0.25));
}

TEST_CASE("catalog families satisfy their defining identities") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);

    const auto ring_u = catalog::gaussian_ring_velocity(0.9, 0.8);
    const auto ring_w = catalog::gaussian_ring_vorticity(0.9, 0.8);
    const auto col_u = catalog::gaussian_column_velocity(1.1, 0.9);
    const auto col_w = catalog::gaussian_column_vorticity(1.1, 0.9);
    const auto bur_u = catalog::burgers_velocity(0.3, 1.0);
    const auto bur_w = catalog::burgers_vorticity(0.3, 1.0);

    for (int t = 0; t < 60; ++t) {
        const Vec3 y{dist(rng), dist(rng), dist(rng)};
        // exactly divergence free
        CHECK(ring_u.divergence(y) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
        CHECK(col_u.divergence(y) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
        CHECK(bur_u.divergence(y) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
        // vorticity is the closed-form curl
        const Vec3 c1 = ring_u.curl(y) - ring_w(y);
        const Vec3 c2 = col_u.curl(y) - col_w(y);
        const Vec3 c3 = bur_u.curl(y) - bur_w(y);
        CHECK(c1.norm() == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        CHECK(c2.norm() == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        CHECK(c3.norm() == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("rescaled fields evaluate the scaling relation exactly") {
    const auto w = catalog::gaussian_column_vorticity(2.0, 1.0);
    const double lam = 0.5;
    const auto wl = w.rescaled(lam);
    const Vec3 y{0.4, -0.2, 0.7};
    const Vec3 a = wl(y), b = w(y / lam);
    CHECK((a - b).norm() == 0.0);
}
