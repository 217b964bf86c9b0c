#pragma once

#include <map>
#include <string>

#include "ssguard/axisym.hpp"
#include "ssguard/profile.hpp"

namespace ssguard::fixtures {

// Synthetic profile families. Each family documents the checks it is expected
// to pass or fail (the oracle ledger used by the acceptance suite); see
// expected_outcomes().

Profile trivial(double gamma, int n = 33, double half = 3.0);
Profile gaussian_column(double gamma, double amplitude = 1.0, double width = 1.0,
                        int n = 49, double half = 4.0);
Profile gaussian_ring(double gamma, double amplitude = 1.0, double width = 0.75,
                      int n = 49, double half = 3.0);
Profile burgers(double gamma, double sigma = 0.3, double kappa = 1.0, int n = 33,
                double half = 3.0);
Profile linear_strain(double gamma, double a = 0.1, double b = 0.1, int n = 33,
                      double half = 3.0);

/// Meridional linear field U_r = a r, U_z = -2 a z (divergence free), no swirl.
axisym::AxisymProfile linear_strain_axisym(double gamma, double a = 0.1);

/// Exact characteristic solution of the swirl equation: U_r = a r, U_z = -2 a z,
/// U_theta = kappa r^m with m = -(1 - gamma + a)/(gamma + a); optionally carries
/// the transported azimuthal vorticity Omega_theta = kp r^{m'+1} with
/// m' = -(1 + gamma)/(gamma + a). The grid excludes the axis (U_theta is
/// singular at r = 0).
axisym::AxisymProfile manufactured_swirl(double gamma, double a = 0.1, double kappa = 1.0,
                                         double kappa_prime = 0.0);

/// Meridional field with fixed points (0,0), (1,0) and (2c-1,0):
/// U_r = -gamma r A phi, U_z = -beta gamma z A phi, U_theta = swirl r A phi,
/// phi a Gaussian bump centered at (c, 0) and A normalizing A phi(1,0) = 1.
/// c < 1 makes (1,0) a backward attractor (forward-unstable node).
axisym::AxisymProfile off_axis_zero(double gamma, double c = 1.3, double w = 0.4,
                                    double beta = 0.5, double swirl = 0.2);

/// Sampled copy of a profile on its reference grid with an honest declared
/// Omega-vs-curl(U) tolerance (2x the measured interior deviation).
Profile sampled_copy(const Profile& p);

/// Documented expected outcomes per family (oracle ledger).
std::string expected_outcomes(const std::string& family);

/// CLI entry: builds a fixture by family name with named parameters
/// (gamma, amplitude, width, sigma, kappa, a, b, n, half, ...).
Profile build_cartesian(const std::string& family,
                        const std::map<std::string, double>& params);
axisym::AxisymProfile build_axisym(const std::string& family,
                                   const std::map<std::string, double>& params);
bool family_is_axisym(const std::string& family);
bool family_known(const std::string& family);

}  // namespace ssguard::fixtures
