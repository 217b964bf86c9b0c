#include "ssguard/catalog.hpp"

#include <cmath>

namespace ssguard::catalog {

namespace {

// (1 - exp(-v))/v and its derivative, stable at v -> 0.
double expm1_ratio(double v) {
    if (std::fabs(v) < 1e-4)
        return 1.0 - v / 2.0 + v * v / 6.0 - v * v * v / 24.0;
    return -std::expm1(-v) / v;
}
double expm1_ratio_prime(double v) {
    if (std::fabs(v) < 1e-4)
        return -0.5 + v / 3.0 - v * v / 8.0 + v * v * v / 30.0;
    return (std::exp(-v) * (1.0 + v) - 1.0) / (v * v);
}

}  // namespace

VectorField zero_vector() {
    return VectorField::analytic(
        "zero", [](const Vec3&) { return Vec3{}; }, [](const Vec3&) { return Mat3::zero(); });
}

ScalarField zero_scalar() {
    return ScalarField::analytic(
        "zero", [](const Vec3&) { return 0.0; }, [](const Vec3&) { return Vec3{}; });
}

VectorField gaussian_column_velocity(double A, double w) {
    const double w2 = w * w;
    auto g = [A, w2](double u) { return 0.5 * A * expm1_ratio(u / w2); };
    auto gp = [A, w2](double u) { return 0.5 * A * expm1_ratio_prime(u / w2) / w2; };
    auto value = [g](const Vec3& y) {
        const double u = y.x * y.x + y.y * y.y;
        const double s = g(u);
        return Vec3{-y.y * s, y.x * s, 0.0};
    };
    auto grad = [g, gp](const Vec3& y) {
        const double u = y.x * y.x + y.y * y.y;
        const double s = g(u), sp = gp(u);
        Mat3 m = Mat3::zero();
        m(0, 0) = -2.0 * y.x * y.y * sp;
        m(0, 1) = -s - 2.0 * y.y * y.y * sp;
        m(1, 0) = s + 2.0 * y.x * y.x * sp;
        m(1, 1) = 2.0 * y.x * y.y * sp;
        return m;
    };
    return VectorField::analytic("gaussian-column:U", value, grad);
}

VectorField gaussian_column_vorticity(double A, double w) {
    const double w2 = w * w;
    auto value = [A, w2](const Vec3& y) {
        const double u = y.x * y.x + y.y * y.y;
        return Vec3{0.0, 0.0, A * std::exp(-u / w2)};
    };
    auto grad = [A, w2](const Vec3& y) {
        const double u = y.x * y.x + y.y * y.y;
        const double e = A * std::exp(-u / w2);
        Mat3 m = Mat3::zero();
        m(2, 0) = -2.0 * y.x / w2 * e;
        m(2, 1) = -2.0 * y.y / w2 * e;
        return m;
    };
    return VectorField::analytic("gaussian-column:Omega", value, grad);
}

VectorField gaussian_ring_velocity(double A, double w) {
    const double w2 = w * w;
    auto value = [A, w2](const Vec3& y) {
        const double u = y.x * y.x + y.y * y.y;
        const double E = std::exp(-(u + y.z * y.z) / w2);
        const double c = 2.0 * A / w2;
        return Vec3{c * y.z * y.x * E, c * y.z * y.y * E, 2.0 * A * E * (1.0 - u / w2)};
    };
    auto grad = [A, w2](const Vec3& y) {
        const double u = y.x * y.x + y.y * y.y;
        const double E = std::exp(-(u + y.z * y.z) / w2);
        const double c = 2.0 * A / w2;
        const double w4 = w2 * w2;
        Mat3 m;
        m(0, 0) = c * y.z * (1.0 - 2.0 * y.x * y.x / w2) * E;
        m(0, 1) = -2.0 * c * y.x * y.y * y.z / w2 * E;
        m(0, 2) = c * y.x * (1.0 - 2.0 * y.z * y.z / w2) * E;
        m(1, 0) = m(0, 1);
        m(1, 1) = c * y.z * (1.0 - 2.0 * y.y * y.y / w2) * E;
        m(1, 2) = c * y.y * (1.0 - 2.0 * y.z * y.z / w2) * E;
        m(2, 0) = 4.0 * A * y.x * (u - 2.0 * w2) / w4 * E;
        m(2, 1) = 4.0 * A * y.y * (u - 2.0 * w2) / w4 * E;
        m(2, 2) = 4.0 * A * y.z * (u - w2) / w4 * E;
        return m;
    };
    return VectorField::analytic("gaussian-ring:U", value, grad);
}

VectorField gaussian_ring_vorticity(double A, double w) {
    const double w2 = w * w;
    auto value = [A, w2](const Vec3& y) {
        const double s = y.norm2() / w2;
        const double cEG = 2.0 * A / w2 * std::exp(-s) * (5.0 - 2.0 * s);
        return Vec3{-cEG * y.y, cEG * y.x, 0.0};
    };
    auto grad = [A, w2](const Vec3& y) {
        const double s = y.norm2() / w2;
        const double cE = 2.0 * A / w2 * std::exp(-s);
        const double G = 5.0 - 2.0 * s, Gp2 = G + 2.0;
        Mat3 m = Mat3::zero();
        // Omega_1 = -cE G y ; Omega_2 = cE G x
        m(0, 0) = cE * (2.0 * y.x * y.y / w2) * Gp2;
        m(0, 1) = cE * (-G + 2.0 * y.y * y.y / w2 * Gp2);
        m(0, 2) = cE * (2.0 * y.z * y.y / w2) * Gp2;
        m(1, 0) = cE * (G - 2.0 * y.x * y.x / w2 * Gp2);
        m(1, 1) = cE * (-2.0 * y.y * y.x / w2) * Gp2;
        m(1, 2) = cE * (-2.0 * y.z * y.x / w2) * Gp2;
        return m;
    };
    return VectorField::analytic("gaussian-ring:Omega", value, grad);
}

VectorField burgers_velocity(double sigma, double kappa) {
    auto value = [sigma, kappa](const Vec3& y) {
        const double e = kappa * std::exp(-(y.x * y.x + y.y * y.y));
        return Vec3{-0.5 * sigma * y.x - y.y * e, -0.5 * sigma * y.y + y.x * e, sigma * y.z};
    };
    auto grad = [sigma, kappa](const Vec3& y) {
        const double e = kappa * std::exp(-(y.x * y.x + y.y * y.y));
        Mat3 m = Mat3::zero();
        m(0, 0) = -0.5 * sigma + 2.0 * y.x * y.y * e;
        m(0, 1) = -e * (1.0 - 2.0 * y.y * y.y);
        m(1, 0) = e * (1.0 - 2.0 * y.x * y.x);
        m(1, 1) = -0.5 * sigma - 2.0 * y.x * y.y * e;
        m(2, 2) = sigma;
        return m;
    };
    return VectorField::analytic("burgers:U", value, grad);
}

VectorField burgers_vorticity(double /*sigma*/, double kappa) {
    auto value = [kappa](const Vec3& y) {
        const double u = y.x * y.x + y.y * y.y;
        return Vec3{0.0, 0.0, 2.0 * kappa * std::exp(-u) * (1.0 - u)};
    };
    auto grad = [kappa](const Vec3& y) {
        const double u = y.x * y.x + y.y * y.y;
        const double e = std::exp(-u);
        Mat3 m = Mat3::zero();
        m(2, 0) = -4.0 * kappa * y.x * e * (2.0 - u);
        m(2, 1) = -4.0 * kappa * y.y * e * (2.0 - u);
        return m;
    };
    return VectorField::analytic("burgers:Omega", value, grad);
}

VectorField linear_strain_velocity(double a, double b) {
    auto value = [a, b](const Vec3& y) { return Vec3{a * y.x, b * y.y, -(a + b) * y.z}; };
    auto grad = [a, b](const Vec3&) {
        Mat3 m = Mat3::zero();
        m(0, 0) = a;
        m(1, 1) = b;
        m(2, 2) = -(a + b);
        return m;
    };
    return VectorField::analytic("linear-strain:U", value, grad);
}

}  // namespace ssguard::catalog
