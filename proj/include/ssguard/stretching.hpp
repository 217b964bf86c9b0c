#pragma once

#include <optional>

#include "ssguard/config.hpp"
#include "ssguard/profile.hpp"

namespace ssguard::stretching {

/// C_p = 2 * 6^{3/(p+3)} * (3/(4 pi))^{1/(p+3)} * (p-1)^{(p-1)/(p+3)}, p > 1.
double cp_constant(double p);

/// Lower bound on ||Omega||_p for unit-normalized profiles:
/// (1/2) (pi/1296)^{1/p} (p-1)^{-1+1/p}. Equals cp_constant(p)^{-(p+3)/p}.
double normalized_threshold(double p);

/// A(y) = Xi . (grad U) Xi with Xi = Omega/|Omega|. Asserts that the
/// symmetric-part contraction agrees (the antisymmetric part cancels).
/// Throws when |Omega(y)| is below factor * sup|Omega|.
double stretching_direct(const Profile& p, const Vec3& y,
                         double direction_factor = 1e-12);

struct StretchingResult {
    Vec3 y;
    double L = 0.0, p = 2.0;
    double alpha_in = 0.0;    // subtracted-kernel piece, |z| <= 2L
    double alpha_out = 0.0;   // direct kernel with 1 - chi weight, |z| >= L
    double a_integral = 0.0;  // alpha_in + alpha_out
    double bound_in = 0.0;    // 6 L |grad Omega|_inf
    double bound_out = 0.0;   // (3/4pi)^{1/p} (p-1)^{(p-1)/p} |Omega|_p L^{-3/p}
    double quad_error = 0.0;  // rule-difference estimate plus truncated-tail bound
    std::optional<double> a_direct;
};

struct IntegralOptions {
    int n_polar = 16;          // Gauss nodes in cos(theta)
    int n_azimuth = 32;        // trapezoid nodes in phi
    int gauss_radial = 8;      // Gauss nodes per radial panel
    double inner_floor = 1e-6; // innermost radius as a fraction of 2L
    double tail_rtol = 1e-6;   // outer truncation target (relative)
    bool with_direct = true;   // also evaluate the strain contraction at y
};

/// Principal-value stretching integral at y with cutoff length L and tail
/// exponent p. The singular inner piece uses the subtracted kernel, so no
/// numerical p.v. limit is taken; the outer piece is truncated where the
/// fitted vorticity envelope bounds the remainder below the target.
StretchingResult stretching_integral(const Profile& prof, const Vec3& y, double L, double p,
                                     const IntegralOptions& opt = {});

struct SmallnessReport {
    double p = 2.0;
    double size = 0.0;        // |grad Omega|^{3/(p+3)} |Omega|_p^{p/(p+3)}
    double threshold = 0.0;   // 1 / C_p
    bool satisfied = false;   // size >= threshold
    double grad_sup = 0.0;
    double lp_norm = 0.0;
    // set when the profile is unit-normalized: the ||Omega||_p test
    std::optional<double> normalized_lhs;
    std::optional<double> normalized_rhs;
};

/// Scaling-invariant smallness test; requires p > 3 gamma.
SmallnessReport smallness_check(const Profile& prof, double p);

struct ArgmaxResult {
    Vec3 y_star;
    double omega_max = 0.0;
    double a_value = 0.0;
    double residual = 0.0;    // |A(y*) - 1|
};

/// Locates argmax |Omega| (grid scan plus quadratic refinement) and evaluates
/// the strain contraction there. Throws when the maximum sits on the grid
/// boundary (domain too small to conclude anything).
ArgmaxResult argmax_stretching_check(const Profile& prof);

}  // namespace ssguard::stretching
