#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssguard/config.hpp"
#include "ssguard/ode.hpp"
#include "ssguard/profile.hpp"
#include "ssguard/report.hpp"

namespace ssguard::axisym {

/// Scalar field on the meridional half-plane r >= 0.
class AxiField {
  public:
    AxiField() = default;
    static AxiField analytic(std::string name, std::function<double(double, double)> value,
                             std::function<double(double, double)> dr = nullptr,
                             std::function<double(double, double)> dz = nullptr);
    static AxiField sampled(const Grid2& grid, std::vector<double> values,
                            int interp_order = 3);
    static AxiField zero();

    double operator()(double r, double z) const;
    double dr(double r, double z) const;
    double dz(double r, double z) const;

    bool is_sampled() const { return data_ != nullptr; }
    const Grid2* grid() const;
    const std::vector<double>* samples() const;

  private:
    struct Sampled;
    std::string name_;
    std::function<double(double, double)> value_, dr_, dz_;
    std::shared_ptr<Sampled> data_;
};

struct AxisymProfile {
    double gamma = 0.5;
    AxiField U_r, U_theta, U_z;
    std::optional<AxiField> Omega_r, Omega_theta, Omega_z;
    std::optional<AxiField> P;
    Grid2 grid;
    double curl_tol = 1e-6;
    std::string source;

    bool has_vorticity() const { return Omega_r && Omega_theta && Omega_z; }
};

/// Vorticity components derived from the velocity:
/// Omega_r = -dz U_theta, Omega_z = dr U_theta + U_theta/r,
/// Omega_theta = dz U_r - dr U_z (quotients take their axis limits).
struct DerivedVorticity {
    double r, theta, z;
};
DerivedVorticity vorticity_from_velocity(const AxisymProfile& p, double r, double z);

/// On-axis vanishing and Omega-compatibility checks as report entries.
std::vector<ReportEntry> validate_axisym(const AxisymProfile& p, const Tolerances& tol = {});

struct ResidualField2 {
    std::string name;        // axisym.res.<eq>
    Grid2 grid;
    std::vector<double> magnitude;
    double interior_sup = 0.0;
    double interior_l2 = 0.0;
};

/// Residuals of the cylindrical stationary system. Velocity-form equations
/// need P (recovered through the Cartesian adapter when absent); the swirl
/// equation and continuity never do. Vorticity equations run when components
/// are present.
std::vector<ResidualField2> axisym_residual(const AxisymProfile& p);

struct MeridionalTrajectory {
    double r0 = 0.0, z0 = 0.0;
    std::vector<double> tau, R, Z, Theta;
    ode::StepStats stats;
    bool theta_diverged = false;
};

std::vector<MeridionalTrajectory> meridional_flow(const AxisymProfile& p,
                                                  const std::vector<std::pair<double, double>>& seeds,
                                                  const std::vector<double>& tau_samples,
                                                  double rtol = 1e-10, double atol = 1e-12);

struct MeridionalFixedPoint {
    double r = 0.0, z = 0.0;
    bool on_axis = false;
    double u_theta = 0.0;
    double circulation = 0.0;            // 2 pi r U_theta
    double jac_eig_re[2] = {0, 0};       // meridional Jacobian spectrum
    double jac_eig_im[2] = {0, 0};
    std::string verdict;                 // swirl-at-fixed-point exponent verdict
};

std::vector<MeridionalFixedPoint> meridional_fixed_points(const AxisymProfile& p,
                                                          double swirl_tol = 1e-8);

/// Weighted-area growth of an advected polygon in {r > 0}:
/// max over tau of |log(area(tau)/area(0)) - 3 gamma tau|. Vertices are
/// inserted adaptively when edges stretch beyond twice the initial maximum.
ReportEntry area_growth_check(const AxisymProfile& p,
                              const std::vector<std::pair<double, double>>& polygon,
                              const std::vector<double>& tau_samples, double tol);

enum class InvariantKind { swirl, azimuthal_vorticity };

/// Relative drift of e^{(1-2g)tau} R U_theta (swirl) or e^{(1+g)tau} Omega_theta/R
/// along meridional trajectories.
ReportEntry axisym_invariant_check(const AxisymProfile& p, InvariantKind which,
                                   const std::vector<std::pair<double, double>>& seeds,
                                   const std::vector<double>& tau_samples, double tol);

struct AlphaLimitResult {
    enum class Kind {
        axis_fixed_point,
        off_axis_fixed_point,
        cycling,
        escaped,
        undecided
    } kind = Kind::undecided;
    double fp_r = 0.0, fp_z = 0.0;
    double min_axis_distance = 0.0;
    std::string note;
};

/// Integrates the backward meridional trajectory from (r0, z0) to tau_min and
/// classifies its alpha-limit surrogate.
AlphaLimitResult backward_alpha_limit(const AxisymProfile& p, double r0, double z0,
                                      double tau_min = -20.0);

/// Cartesian view of an axisymmetric profile (evaluation adapter; gradients
/// fall back to finite differences of the adapter).
Profile cartesian_adapter(const AxisymProfile& p);

}  // namespace ssguard::axisym
