#pragma once

namespace ssguard {

/// Default tolerance table. Every report entry echoes the tolerance it used;
/// the CLI --tol-scale flag multiplies the check tolerances uniformly.
struct Tolerances {
    double u0_abs = 1e-8;                 // |U(0)| Galilean normalization
    double axis_abs = 1e-8;               // axisym on-axis vanishing
    double normalize_rel = 1e-8;          // |grad Omega|_inf - 1 after normalization
    double curl_consistency_rel = 1e-6;   // Omega vs curl U (interior), default when undeclared
    double residual_abs = 1e-6;           // self-similar residual sup norms
    double det_rel = 1e-6;                // det(grad_a Y) vs exp(3 gamma tau)
    double circulation_rel = 1e-6;        // circulation drift
    double invariant_rel = 1e-6;          // axisym transported invariants
    double area_rel = 1e-6;               // weighted-area growth
    double argmax_residual = 1e-6;        // |A(y*) - 1|
    double direction_factor = 1e-12;      // |Omega| threshold factor for Xi
    double nodal_seed_factor = 1e-6;      // seed threshold = factor * gamma * R_flat
    double nodal_dedup = 1e-6;
    double eigenpair_abs = 1e-3;          // |S Xi - Xi| base tolerance
    double vanishing_cap = 8.0;           // order above which "infinite order"
    double ode_rtol = 1e-10;
    double ode_atol = 1e-12;
    double scale = 1.0;

    double scaled(double t) const { return t * scale; }
};

}  // namespace ssguard
