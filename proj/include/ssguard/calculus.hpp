#pragma once

#include "ssguard/field.hpp"
#include "ssguard/grid.hpp"

namespace ssguard::calculus {

enum class DiffMethod { centered4, spectral };

/// curl(f) evaluated on `grid`. Analytic inputs with a registered gradient
/// return a closed-form field; otherwise the input is sampled and
/// differentiated (4th-order stencils, or FFT on periodic grids).
VectorField curl_field(const VectorField& f, const Grid3& grid,
                       DiffMethod method = DiffMethod::centered4);
ScalarField divergence_field(const VectorField& f, const Grid3& grid,
                             DiffMethod method = DiffMethod::centered4);
VectorField gradient_field(const ScalarField& f, const Grid3& grid,
                           DiffMethod method = DiffMethod::centered4);

/// Velocity induced by a vorticity field: u = curl (-Lap)^{-1} omega,
/// computed with FFTs on a padded periodic box (pad_factor >= 1) and returned
/// as a tricubic sampled field on `grid`. The far field is continued with the
/// |y|^{(gamma-1)/gamma} velocity envelope when gamma > 0 is supplied.
VectorField biot_savart_velocity(const VectorField& omega, const Grid3& grid,
                                 double pad_factor = 2.0, double gamma = 0.0);

/// Pressure from the velocity profile: solves Lap P = -d_i d_j (U_i U_j) with
/// the zero-at-infinity gauge (harmonic part identically zero; the mean over
/// the outermost sampled shell is removed and reported via *gauge_shell_mean).
ScalarField pressure_from_velocity(const VectorField& U, const Grid3& grid,
                                   double pad_factor = 2.0,
                                   double* gauge_shell_mean = nullptr);

}  // namespace ssguard::calculus
