#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ssguard/vec.hpp"

namespace ssguard::quadrature {

/// Gauss–Legendre nodes/weights on [-1, 1].
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

/// Nodes/weights mapped to [a, b].
GaussRule gauss_on(int n, double a, double b);

/// Deterministic quasi-uniform unit directions (Fibonacci spiral).
std::vector<Vec3> fibonacci_sphere(int n);

/// Monotone C^2 cutoff: 1 on [0,1], 0 on [2,inf), quintic bridge in between.
double smooth_cutoff(double t);
double smooth_cutoff_derivative(double t);

/// Trapezoid rule over an (x, y) series.
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares slope/intercept of y against x.
struct LineFit {
    double slope = 0.0, intercept = 0.0, rms_residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ssguard::quadrature
