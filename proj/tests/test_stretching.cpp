#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ssguard/calculus.hpp"
#include "ssguard/catalog.hpp"
#include "ssguard/norms.hpp"
#include "ssguard/stretching.hpp"

using namespace ssguard;
using namespace ssguard::stretching;

namespace {

Profile burgers_profile(double sigma, double kappa, double gamma = 0.4) {
    Profile p;
    p.gamma = gamma;
    p.U = catalog::burgers_velocity(sigma, kappa);
    p.Omega = catalog::burgers_vorticity(sigma, kappa);
    p.grid = Grid3::cube(33, 3.0);
    return p;
}

Profile column_profile(double A = 1.0, double w = 1.0) {
    Profile p;
    p.gamma = 0.45;
    p.U = catalog::gaussian_column_velocity(A, w);
    p.Omega = catalog::gaussian_column_vorticity(A, w);
    p.grid = Grid3::cube(33, 4.0);
    return p;
}

Profile ring_profile(double A = 1.0, double w = 0.75, int n = 49, double half = 3.0) {
    Profile p;
    p.gamma = 0.45;
    p.U = catalog::gaussian_ring_velocity(A, w);
    p.Omega = catalog::gaussian_ring_vorticity(A, w);
    p.grid = Grid3::cube(n, half);
    return p;
}

}  // namespace

TEST_CASE("cp_constant matches the 50-digit offline evaluation at p = 2") {
    // oracle: 2 * 6^{3/5} * (3/(4 pi))^{1/5}, 50 digits via mpmath
    const double cp2 = 4.4005101194226137141406199451254537885514061010680;
    CHECK(std::fabs(cp_constant(2.0) - cp2) < 1e-12);
    CHECK_THROWS_AS(cp_constant(1.0), Error);
    CHECK_THROWS_AS(cp_constant(0.5), Error);
}

TEST_CASE("normalized threshold matches (1/2) sqrt(pi/1296) at p = 2") {
    const double thr2 = 0.024617414595909944823585659490849238649965964668366;
    CHECK(std::fabs(normalized_threshold(2.0) - thr2) < 1e-12);
    // definitional identity: threshold = C_p^{-(p+3)/p}
    for (double p : {2.0, 3.5, 5.0, 9.0})
        CHECK(normalized_threshold(p) ==
              doctest::Approx(std::pow(cp_constant(p), -(p + 3.0) / p)).epsilon(1e-13));
}

TEST_CASE("cp_constant is monotone increasing for p >= 4") {
    double prev = cp_constant(4.0);
    for (double p = 4.5; p <= 40.0; p += 0.5) {
        const double c = cp_constant(p);
        CHECK(c > prev);
        prev = c;
    }
}

TEST_CASE("direct stretching on rigid rotation and shear vanishes") {
    Profile rot;
    rot.gamma = 0.4;
    rot.U = VectorField::analytic("rigid", [](const Vec3& y) { return Vec3{-y.y, y.x, 0}; });
    rot.Omega = VectorField::analytic("w", [](const Vec3&) { return Vec3{0, 0, 2.0}; });
    rot.grid = Grid3::cube(9, 2.0);
    CHECK(stretching_direct(rot, {0.3, 0.1, -0.4}) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    Profile shear;
    shear.gamma = 0.4;
    shear.U = VectorField::analytic("shear", [](const Vec3& y) { return Vec3{y.y, 0, 0}; });
    shear.Omega = VectorField::analytic("w", [](const Vec3&) { return Vec3{0, 0, -1.0}; });
    shear.grid = Grid3::cube(9, 2.0);
    CHECK(stretching_direct(shear, {0.2, -0.5, 0.7}) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("direct stretching on the strain+swirl field equals sigma") {
    const auto p = burgers_profile(0.3, 1.0);
    for (const Vec3 y : {Vec3{0, 0, 0}, Vec3{0.5, 0.2, -0.3}, Vec3{0.2, -0.6, 1.0}})
        CHECK(stretching_direct(p, y) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("direct stretching refuses points with undefined direction") {
    const auto p = burgers_profile(0.3, 1.0);
    // Omega_z = 2k e^{-u}(1-u) vanishes on the cylinder u = 1
    CHECK_THROWS_AS(stretching_direct(p, {1.0, 0.0, 0.0}), Error);
}

TEST_CASE("columnar vortex has no stretching: integral route returns ~0") {
    const auto p = column_profile();
    const auto res = stretching_integral(p, {0.4, 0.2, 0.1}, 0.5, 2.0);
    CHECK(std::fabs(res.a_integral) <= 10.0 * std::max(res.quad_error, 1e-14));
    REQUIRE(res.a_direct.has_value());
    CHECK(*res.a_direct == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("integral route matches the closed-form strain contraction on the ring") {
    const auto p = ring_profile(1.0, 0.75);
    // off the symmetry plane, inside the core where |Omega| is substantial
    const Vec3 y{0.6, 0.15, 0.35};
    const double direct = stretching_direct(p, y);
    const auto res = stretching_integral(p, y, 0.5, 2.0);
    CHECK(std::fabs(res.a_integral - direct) / std::fabs(direct) < 1e-3);
    CHECK(res.a_integral == res.alpha_in + res.alpha_out);
}

TEST_CASE("inner/outer pieces satisfy their analytic majorants") {
    const auto p = ring_profile(1.0, 0.75);
    for (const Vec3 y : {Vec3{0.6, 0.15, 0.35}, Vec3{-0.4, 0.5, -0.2}}) {
        for (double L : {0.25, 0.5, 1.0}) {
            const auto res = stretching_integral(p, y, L, 2.0);
            CHECK(std::fabs(res.alpha_in) <= res.bound_in + res.quad_error);
            CHECK(std::fabs(res.alpha_out) <= res.bound_out + res.quad_error);
        }
    }
}

TEST_CASE("cutoff independence across L") {
    const auto p = ring_profile(1.0, 0.75);
    const Vec3 y{0.6, 0.15, 0.35};
    std::vector<StretchingResult> results;
    for (double L : {0.25, 0.5, 1.0}) results.push_back(stretching_integral(p, y, L, 2.0));
    for (std::size_t i = 1; i < results.size(); ++i) {
        const double diff = std::fabs(results[i].a_integral - results[0].a_integral);
        CHECK(diff <= results[i].quad_error + results[0].quad_error);
    }
}

TEST_CASE("cutoff larger than the grid is an error") {
    const auto p = ring_profile();
    CHECK_THROWS_AS(stretching_integral(p, {0.5, 0, 0.2}, 10.0, 2.0), Error);
}

TEST_CASE("smallness check: tiny profile violates the lower bound") {
    Profile p;
    p.gamma = 0.45;
    p.U = catalog::zero_vector();
    p.Omega = VectorField::analytic("tiny", [](const Vec3& y) {
        return Vec3{0, 0, 1e-6 * std::exp(-y.norm2())};
    });
    p.grid = Grid3::cube(49, 5.0);
    const auto rep = smallness_check(p, 2.0);
    CHECK_FALSE(rep.satisfied);
    CHECK(rep.size < rep.threshold * 1e-3);
    CHECK(rep.threshold == doctest::Approx(1.0 / cp_constant(2.0)).epsilon(1e-14));
}

TEST_CASE("smallness size is invariant under lambda-rescaling") {
    Profile p;
    p.gamma = 0.45;
    p.U = catalog::zero_vector();
    p.Omega = catalog::gaussian_ring_vorticity(0.8, 0.9);
    p.grid = Grid3::cube(49, 4.5);
    const auto base = smallness_check(p, 2.0);
    for (double lam : {0.5, 2.0}) {
        Profile q = p;
        q.U = p.U.rescaled(lam, lam);
        q.Omega = p.Omega->rescaled(lam, 1.0);
        q.grid.spacing *= lam;
        q.grid.origin *= lam;
        const auto scaled = smallness_check(q, 2.0);
        CHECK(std::fabs(scaled.size - base.size) / base.size < 1e-6);
        CHECK(scaled.satisfied == base.satisfied);
    }
}

TEST_CASE("smallness check enforces p > 3 gamma") {
    Profile p;
    p.gamma = 0.8;
    p.U = catalog::zero_vector();
    p.Omega = catalog::gaussian_ring_vorticity(1.0, 1.0);
    p.grid = Grid3::cube(17, 3.0);
    CHECK_THROWS_AS(smallness_check(p, 2.0), Error);  // 2 < 2.4
}

TEST_CASE("argmax check: strain+swirl field reports residual |sigma - 1|") {
    const auto p = burgers_profile(0.3, 1.0);
    const auto res = argmax_stretching_check(p);
    // |Omega| = 2|k|e^{-u}|1-u| peaks on the axis u = 0
    CHECK(res.y_star.norm() < 1e-9);
    CHECK(res.a_value == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(res.residual == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("argmax location is scaling covariant and the residual unchanged") {
    const auto p = ring_profile(1.0, 0.75);
    const auto base = argmax_stretching_check(p);
    const double lam = 2.0;
    Profile q = p;
    q.U = p.U.rescaled(lam, lam);
    q.Omega = p.Omega->rescaled(lam, 1.0);
    q.grid.spacing *= lam;
    q.grid.origin *= lam;
    const auto scaled = argmax_stretching_check(q);
    CHECK((scaled.y_star - base.y_star * lam).norm() < 1e-6 * lam);
    CHECK(scaled.residual == doctest::Approx(base.residual).epsilon(1e-9));
}

TEST_CASE("argmax on the boundary is inconclusive") {
    Profile p;
    p.gamma = 0.4;
    p.U = catalog::zero_vector();
    p.Omega = VectorField::analytic("grow", [](const Vec3& y) {
        return Vec3{0, 0, 1.0 + y.norm2()};
    });
    p.grid = Grid3::cube(9, 2.0);
    CHECK_THROWS_AS(argmax_stretching_check(p), Error);
}
