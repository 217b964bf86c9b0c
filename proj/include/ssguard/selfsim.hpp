#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssguard/profile.hpp"

namespace ssguard::selfsim {

enum class ResidualKind { velocity, vorticity, lp_identity, divergence };

std::string residual_name(ResidualKind k, double p = 2.0);

struct ResidualField {
    ResidualKind kind = ResidualKind::velocity;
    double p = 2.0;                  // lp_identity only
    Grid3 grid;
    std::vector<double> magnitude;   // |residual| per node (0 where undefined)
    double interior_sup = 0.0;       // 3 cells in from every face
    double interior_l2 = 0.0;
    bool used_recovered_pressure = false;
};

/// P = Riesz(U tensor U) with zero harmonic part, solved by Fourier methods on
/// an enlarged padded box; P -> 0 at the sampled far field.
ScalarField recover_pressure(const Profile& p, double pad_factor = 2.0,
                             double* gauge_shell_mean = nullptr);

/// Residual of the requested stationary self-similar equation; the divergence
/// residual is always appended as the last element.
std::vector<ResidualField> selfsim_residual(const Profile& p, ResidualKind which,
                                            double lp_exponent = 2.0);

struct BernoulliData {
    ScalarField H;                   // evaluable everywhere (closure over U, P)
    ScalarField transport_residual;  // V . grad H - (2 gamma - 1)|V|^2
    double transport_interior_sup = 0.0;
    double farfield_coeff = 0.0;     // fitted quadratic coefficient on outer shells
    double farfield_expected = 0.0;  // gamma (2 gamma - 1) / 2
    bool used_recovered_pressure = false;
};

BernoulliData bernoulli(const Profile& p);

/// R_flat = max(1, (2 c_flat / gamma)^gamma).
double r_flat(double c_flat, double gamma);

}  // namespace ssguard::selfsim
