#pragma once

// Built-in analytic field families. Every family registers closed-form
// gradients, so differential quantities evaluate at rounding accuracy and can
// serve as oracles for the stencil and quadrature paths.

#include "ssguard/field.hpp"

namespace ssguard::catalog {

/// U = Omega = 0 ("pure scaling": V = gamma*y).
VectorField zero_vector();
ScalarField zero_scalar();

/// Planar swirl with columnar Gaussian vorticity
///   Omega = (0, 0, A exp(-r^2/w^2)),  U = U_theta(r) e_theta solid with
///   U_theta = A w^2 (1 - exp(-r^2/w^2)) / (2 r).
VectorField gaussian_column_velocity(double amplitude, double width);
VectorField gaussian_column_vorticity(double amplitude, double width);

/// Gaussian-envelope vortex ring built from the vector potential
/// A_theta = A r exp(-(r^2+z^2)/w^2); U = curl(A_theta e_theta) is exactly
/// solenoidal with closed-form Omega = curl U = omega_theta e_theta,
/// omega_theta = (2 A r / w^2) (5 - 2 s) exp(-s), s = (r^2+z^2)/w^2.
VectorField gaussian_ring_velocity(double amplitude, double width);
VectorField gaussian_ring_vorticity(double amplitude, double width);

/// Axial strain plus localized swirl: U = (-s/2 x, -s/2 y, s z) + g(r) e_theta
/// with g(r) = kappa r exp(-r^2); Omega = (0, 0, 2 kappa exp(-r^2)(1 - r^2)).
VectorField burgers_velocity(double sigma, double kappa);
VectorField burgers_vorticity(double sigma, double kappa);

/// U = (a x, b y, -(a+b) z); irrotational, divergence free.
VectorField linear_strain_velocity(double a, double b);

}  // namespace ssguard::catalog
