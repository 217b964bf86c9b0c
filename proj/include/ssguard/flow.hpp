#pragma once

#include <optional>
#include <vector>

#include "ssguard/config.hpp"
#include "ssguard/ode.hpp"
#include "ssguard/profile.hpp"
#include "ssguard/report.hpp"
#include "ssguard/selfsim.hpp"

namespace ssguard::flow {

/// V(y) = gamma y + U(y), the drift of the self-similar Lagrangian flow.
Vec3 transport_velocity(const Profile& p, const Vec3& y);
Mat3 transport_gradient(const Profile& p, const Vec3& y);

struct Trajectory {
    Vec3 label;
    std::vector<double> tau;
    std::vector<Vec3> position;
    std::vector<Mat3> jacobian;   // grad_a Y
    ode::StepStats stats;
};

/// Integrates dY/dtau = V(Y) together with the variational equation
/// d(grad_a Y)/dtau = grad V(Y) grad_a Y. tau samples may be negative
/// (backward flow); each trajectory starts at tau = 0 with Y = label, J = Id.
std::vector<Trajectory> integrate_flow(const Profile& p, const std::vector<Vec3>& labels,
                                       const std::vector<double>& tau_samples,
                                       double rtol = 1e-10, double atol = 1e-12);

ReportEntry jacobian_det_check(const Profile& p, const std::vector<Trajectory>& trajs,
                               double tol);
/// sup over samples of |Omega(Y) - e^{-(1+gamma)tau} J Omega(a)| / scale;
/// reported as INFO alongside the vorticity residual level.
ReportEntry cauchy_check(const Profile& p, const std::vector<Trajectory>& trajs);
/// Discrete curl over a label patch of W(a,tau) = e^{(1-2g)tau} J^T U(Y) - U(a).
ReportEntry weber_check(const Profile& p, const Vec3& base_label, double patch_delta,
                        const std::vector<double>& tau_samples, double tol);

struct Loop {
    std::vector<Vec3> vertices;  // closed: first == last
    void validate() const;       // >= 16 distinct points, closed, simple
};
Loop circle_loop(double r, double z, int n);

struct CirculationResult {
    ReportEntry entry;
    std::vector<double> tau;
    std::vector<double> gamma_ss;        // circulation at each tau
    bool self_intersected = false;       // warning only
};
CirculationResult circulation_check(const Profile& p, const Loop& loop,
                                    const std::vector<double>& tau_samples, double tol);

struct NodalPoint {
    Vec3 y;
    double v_norm = 0.0;                    // |V(y)| after refinement
    std::array<double, 3> strain_eigs{};    // ascending
    Vec3 omega;
    bool omega_nonzero = false;
    bool eigenpair_ok = false;              // (1, Xi) eigenpair of S within tol
    std::optional<double> c_star;           // certified constant (clamped at 0)
    double eps_star = 0.0;
    bool outgoing_holds = false;
    std::string implied;                    // e.g. "gamma >= 1/2 + c*"
};

struct NodalOptions {
    int scan_per_axis = 24;
    double seed_factor = 1e-6;   // threshold = factor * gamma * R_flat
    double dedup = 1e-6;
    int max_points = 64;         // beyond this: possibly non-isolated zeros
};

struct NodalResult {
    std::vector<NodalPoint> points;   // sorted by |y|, origin always present
    double r_flat = 0.0;
    bool possibly_non_isolated = false;
    std::vector<std::string> warnings;
};

/// Grid scan of |V| inside the escape ball plus Newton refinement.
NodalResult nodal_set(const Profile& p, const NodalOptions& opt = {});

/// Samples V(y).(y - y*)/|y - y*|^2 on spheres of radius eps*/8 .. eps* and
/// certifies c* as the minimum (clamped at zero; negative minimum fails the
/// property). Fills the eigenpair test and the implied gamma bound. Throws
/// when eps* reaches another point of `neighbors` (shrink requested).
NodalPoint outgoing_certificate(const Profile& p, const NodalPoint& point, double eps_star,
                                const Tolerances& tol = {},
                                const std::vector<NodalPoint>* neighbors = nullptr);

struct VanishingOrder {
    double order = 0.0;
    double fit_rms = 0.0;
    bool infinite_order = false;   // slope above the cap
};
/// Log-log fit of shell max |Omega| around y*. Throws when |Omega(y*)| is
/// above threshold (order 0: not a vanishing point).
VanishingOrder vanishing_order(const Profile& p, const Vec3& y_star, double cap = 8.0);

/// Monotonicity of the Bernoulli function along trajectories and the identity
/// residual max |V.grad H - (2 gamma - 1)|V|^2| on trajectory samples.
ReportEntry bernoulli_monotonicity_check(const Profile& p,
                                         const selfsim::BernoulliData& bern,
                                         const std::vector<Trajectory>& trajs,
                                         double tol);

/// Escape-envelope check for labels with |a| >= R_flat:
/// |a| e^{gamma tau/2} <= |Y| <= |a| e^{3 gamma tau/2}, |Y| strictly increasing.
ReportEntry escape_envelope_check(const Profile& p, double r_flat_value,
                                  const std::vector<Trajectory>& trajs);

}  // namespace ssguard::flow
