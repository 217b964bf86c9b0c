#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssguard/config.hpp"
#include "ssguard/field.hpp"
#include "ssguard/report.hpp"

namespace ssguard {

enum class Symmetry { cartesian, axisym };

/// A candidate self-similar profile: exponent plus velocity/vorticity/pressure
/// fields and a reference evaluation grid.
struct Profile {
    double gamma = 0.5;
    VectorField U;
    std::optional<VectorField> Omega;
    std::optional<ScalarField> P;
    std::optional<double> c_flat;
    Symmetry symmetry = Symmetry::cartesian;
    Grid3 grid;
    double curl_tol = 1e-6;   // declared Omega-vs-curl(U) consistency tolerance
    std::string source;       // provenance tag for reports

    void require_gamma() const {
        if (!(gamma > 0.0)) throw Error("profile requires gamma > 0");
    }
};

struct NormalizeResult {
    Profile profile;
    double lambda = 1.0;   // spatial rescale factor applied
};

/// Rescales so that the grid max of |grad Omega| (Frobenius) equals 1.
NormalizeResult normalize_profile(const Profile& p, double tol = 1e-8);

struct EnvelopeEstimate {
    double c_flat = 0.0;
    double attained_radius = 0.0;
    std::vector<double> shell_radii;
    std::vector<double> shell_ratios;
};

/// Smallest constant making |U| <= C |y| <y>^{-1/gamma} and
/// |Omega| + |grad U| <= C <y>^{-1/gamma} hold on sampled shells. Throws when
/// the envelope is attained at the outermost shell with a growing trend.
EnvelopeEstimate decay_envelope(const Profile& p);

/// Data-model checks as report entries: U(0) = 0, Omega vs curl U consistency
/// (sampled fields on a shared grid), finite gamma.
std::vector<ReportEntry> validate_profile(const Profile& p, const Tolerances& tol = {});

}  // namespace ssguard
