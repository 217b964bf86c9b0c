#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ssguard/catalog.hpp"
#include "ssguard/norms.hpp"
#include "ssguard/profile.hpp"

using namespace ssguard;

TEST_CASE("sup norm of a gaussian peak is 1") {
    const auto w = catalog::gaussian_column_vorticity(1.0, 1.0);
    // use a grid with a node at the origin (odd count)
    const Grid3 g = Grid3::cube(33, 4.0);
    const auto r = field_norm(w, g, NormRequest::sup());
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("L2 norm of exp(-|y|^2) matches the closed-form Gaussian integral") {
    // oracle: ||e^{-|y|^2}||_L2 = (pi/2)^{3/4}, evaluated to 50 digits offline
    const double expected = 1.4031041455342160266909282012472987368547;
    const auto f = ScalarField::analytic(
        "gauss", [](const Vec3& y) { return std::exp(-y.norm2()); });
    const Grid3 g = Grid3::cube(64, 6.0);
    const auto r = field_norm(f, g, NormRequest::lp(2.0));
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-6));
    CHECK(r.tail_estimate < 1e-8);
    // midpoint rule agrees at quadrature tolerance
    const auto rm = field_norm(f, g, NormRequest::lp(2.0, NormRequest::Rule::midpoint));
    CHECK(rm.value == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("holder seminorm of f(y)=y1 on the unit box is attained at distance L0") {
    const auto f = ScalarField::analytic("y1", [](const Vec3& y) { return y.x; });
    Grid3 g;
    g.dims = {5, 5, 5};
    g.spacing = {0.25, 0.25, 0.25};
    g.origin = {0, 0, 0};
    const auto r = field_norm(f, g, NormRequest::holder(0.5, 1.0));
    // |x1-y1|/|x-y|^{1/2} <= |x-y|^{1/2} <= 1, equality on axis-aligned pairs
    // at distance exactly 1
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("holder seminorm estimator is monotone in sampling density") {
    const auto f = ScalarField::analytic(
        "wiggle", [](const Vec3& y) { return std::sin(3.0 * y.x) * std::cos(2.0 * y.y); });
    const auto coarse = field_norm(f, Grid3::cube(9, 1.0), NormRequest::holder(0.5, 0.8));
    const auto fine = field_norm(f, Grid3::cube(17, 1.0), NormRequest::holder(0.5, 0.8));
    CHECK(fine.value >= coarse.value - 1e-15);  // denser pairs can only raise the max
}

TEST_CASE("holder seminorm of a linear vector field") {
    // |f(x)-f(y)| = s|x-y| for f = s*y, so the seminorm is s * L0^{1-mu}
    const auto f = VectorField::analytic("lin", [](const Vec3& y) { return y * 0.5; });
    Grid3 g;
    g.dims = {5, 5, 5};
    g.spacing = {0.25, 0.25, 0.25};
    g.origin = {0, 0, 0};
    const auto r = field_norm(f, g, NormRequest::holder(0.5, 1.0));
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("Lp norm scaling relation under lambda-rescaling") {
    // ring vorticity decays in every direction, so any Lp is finite
    const auto w = catalog::gaussian_ring_vorticity(1.7, 0.9);
    const Grid3 g = Grid3::cube(48, 5.0);
    for (double p : {2.0, 4.0}) {
        const auto base = field_norm(w, g, NormRequest::lp(p));
        for (double lam : {0.5, 2.0}) {
            const auto wl = w.rescaled(lam);
            Grid3 gl = g;
            gl.spacing *= lam;
            gl.origin *= lam;
            const auto scaled = field_norm(wl, gl, NormRequest::lp(p));
            CHECK(scaled.value ==
                  doctest::Approx(std::pow(lam, 3.0 / p) * base.value).epsilon(1e-12));
        }
    }
}

TEST_CASE("Lp with a non-integrable tail is an error") {
    // |f| ~ |y|^{-1}: q*p = 2 < 3 for p = 2
    const auto f = ScalarField::analytic(
        "slow", [](const Vec3& y) { return 1.0 / std::sqrt(1.0 + y.norm2()); });
    const Grid3 g = Grid3::cube(33, 4.0);  // odd: a node sits at the origin
    CHECK_THROWS_AS(field_norm(f, g, NormRequest::lp(2.0)), Error);
    // but the sup norm is fine
    CHECK(field_norm(f, g, NormRequest::sup()).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalize_profile fixes the gradient sup norm to 1 and is idempotent") {
    Profile p;
    p.gamma = 0.45;
    p.U = catalog::zero_vector();
    p.Omega = catalog::gaussian_column_vorticity(2.0, 1.0);
    p.grid = Grid3::cube(49, 5.0);

    // oracle: |grad Omega| for 2 e^{-r^2} e_z is max 4 r e^{-r^2} = 2*sqrt(2)*e^{-1/2};
    // the convention is the grid max, which sits slightly below the true sup
    const double gmax_true = 1.7155277699214135929603792825575449562416;
    const double gmax_grid = grad_sup_norm(*p.Omega, p.grid);
    CHECK(gmax_grid <= gmax_true + 1e-12);
    CHECK(gmax_grid == doctest::Approx(gmax_true).epsilon(1e-2));

    const auto res = normalize_profile(p);
    CHECK(res.lambda == doctest::Approx(gmax_grid).epsilon(1e-14));
    CHECK(grad_sup_norm(*res.profile.Omega, res.profile.grid) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(res.profile.gamma == p.gamma);

    const auto again = normalize_profile(res.profile);
    CHECK(again.lambda == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("normalization carries the Lp scaling relation exactly") {
    Profile p;
    p.gamma = 0.45;
    p.U = catalog::zero_vector();
    p.Omega = catalog::gaussian_ring_vorticity(2.0, 1.0);
    p.grid = Grid3::cube(49, 5.0);
    const auto res = normalize_profile(p);
    for (double q : {2.0, 3.0}) {
        const auto before = field_norm(*p.Omega, p.grid, NormRequest::lp(q));
        const auto after =
            field_norm(*res.profile.Omega, res.profile.grid, NormRequest::lp(q));
        CHECK(after.value ==
              doctest::Approx(std::pow(res.lambda, 3.0 / q) * before.value).epsilon(1e-10));
    }
}

TEST_CASE("normalize_profile rejects a zero vorticity profile") {
    Profile p;
    p.gamma = 0.4;
    p.U = catalog::zero_vector();
    p.Omega = catalog::zero_vector();
    p.grid = Grid3::cube(16, 2.0);
    CHECK_THROWS_AS(normalize_profile(p), Error);
}

TEST_CASE("decay envelope: trivial, algebraic, compact-support cases") {
    Profile p;
    p.gamma = 0.5;
    p.U = catalog::zero_vector();
    p.Omega = catalog::zero_vector();
    p.grid = Grid3::cube(17, 3.0);
    CHECK(decay_envelope(p).c_flat == 0.0);

    // gamma = 1/2, Omega = (0,0,<y>^-2): ratio (|Omega|+|grad U|)<y>^2 = 1 exactly
    Profile q;
    q.gamma = 0.5;
    q.U = catalog::zero_vector();
    q.Omega = VectorField::analytic(
        "alg",
        [](const Vec3& y) { return Vec3{0, 0, std::pow(1.0 + y.norm2(), -1.0)}; });
    q.grid = Grid3::cube(17, 3.0);
    const auto env = decay_envelope(q);
    CHECK(env.c_flat == doctest::Approx(1.0).epsilon(1e-12));

    // compactly supported vorticity: constant attained inside the support
    Profile c;
    c.gamma = 0.5;
    c.U = catalog::zero_vector();
    c.Omega = VectorField::analytic("compact", [](const Vec3& y) {
        const double r2 = y.norm2();
        return r2 < 1.0 ? Vec3{0, 0, std::exp(-1.0 / (1.0 - r2))} : Vec3{};
    });
    c.grid = Grid3::cube(17, 4.0);
    const auto envc = decay_envelope(c);
    CHECK(envc.attained_radius < 1.0);
}

TEST_CASE("decay envelope flags growth at the outermost shell") {
    Profile p;
    p.gamma = 0.5;  // envelope expects decay ~ <y>^-2
    p.U = catalog::zero_vector();
    p.Omega = VectorField::analytic("grow", [](const Vec3& y) {
        return Vec3{0, 0, 1.0 + y.norm2()};
    });
    p.grid = Grid3::cube(17, 3.0);
    CHECK_THROWS_AS(decay_envelope(p), Error);
}

TEST_CASE("profile validation entries") {
    Profile p;
    p.gamma = 0.4;
    p.U = catalog::burgers_velocity(0.3, 1.0);
    p.grid = Grid3::cube(17, 3.0);
    const auto entries = validate_profile(p);
    REQUIRE(!entries.empty());
    CHECK(entries[0].name == "profile.u0");
    CHECK(entries[0].verdict == Verdict::PASS);

    Profile bad = p;
    bad.U = VectorField::analytic("offset", [](const Vec3&) { return Vec3{1, 0, 0}; });
    const auto bent = validate_profile(bad);
    CHECK(bent[0].verdict == Verdict::FAIL);
}
