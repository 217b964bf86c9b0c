#include "ssguard/profile.hpp"

#include <algorithm>
#include <cmath>

#include "ssguard/norms.hpp"
#include "ssguard/parallel.hpp"
#include "ssguard/quadrature.hpp"

namespace ssguard {

NormalizeResult normalize_profile(const Profile& p, double tol) {
    p.require_gamma();
    if (!p.Omega) throw Error("normalize_profile requires a vorticity profile");
    const double g = grad_sup_norm(*p.Omega, p.grid);
    if (!(g > 0.0)) throw Error("zero vorticity profile cannot be normalized");

    // Omega_l(y) = Omega(y/l) has |grad Omega_l| = |grad Omega|/l, so l = g.
    const double lambda = g;
    NormalizeResult res;
    res.lambda = lambda;
    Profile& q = res.profile;
    q = p;
    q.U = p.U.rescaled(lambda, lambda);
    q.Omega = p.Omega->rescaled(lambda, 1.0);
    if (p.P) q.P = p.P->rescaled(lambda, lambda * lambda);
    q.grid.spacing *= lambda;
    q.grid.origin *= lambda;
    q.c_flat.reset();  // envelope constant is not scale covariant; recompute on demand

    const double check = grad_sup_norm(*q.Omega, q.grid);
    if (std::fabs(check - 1.0) > tol)
        throw Error("normalization failed: |grad Omega| = " + std::to_string(check));
    return res;
}

EnvelopeEstimate decay_envelope(const Profile& p) {
    p.require_gamma();
    const Grid3& g = p.grid;
    const Vec3 hi = g.max_corner();
    const double rin = std::min({std::min(-g.origin.x, hi.x), std::min(-g.origin.y, hi.y),
                                 std::min(-g.origin.z, hi.z)});
    if (!(rin > 0.0)) throw Error("decay envelope requires a grid box enclosing the origin");

    const int ndirs = 256;
    const auto dirs = quadrature::fibonacci_sphere(ndirs);
    std::vector<double> radii;
    for (int i = 1; i <= 16; ++i) radii.push_back(rin * i / 16.0);

    EnvelopeEstimate est;
    const double inv_gamma = 1.0 / p.gamma;
    for (double r : radii) {
        double ratio = 0.0;
        for (const Vec3& d : dirs) {
            const Vec3 y = d * r;
            const double jap = std::sqrt(1.0 + r * r);
            const double env_u = r * std::pow(jap, -inv_gamma);
            const double env_w = std::pow(jap, -inv_gamma);
            double v = p.U(y).norm() / env_u;
            double wmag = p.U.gradient(y).frobenius();
            if (p.Omega) wmag += (*p.Omega)(y).norm();
            v = std::max(v, wmag / env_w);
            ratio = std::max(ratio, v);
        }
        est.shell_radii.push_back(r);
        est.shell_ratios.push_back(ratio);
        if (ratio >= est.c_flat) {
            est.c_flat = ratio;
            est.attained_radius = r;
        }
    }
    const std::size_t n = est.shell_ratios.size();
    const bool growing = n >= 3 && est.shell_ratios[n - 1] > est.shell_ratios[n - 2] &&
                         est.shell_ratios[n - 2] > est.shell_ratios[n - 3];
    if (growing && est.attained_radius == est.shell_radii.back() && est.c_flat > 0.0)
        throw Error("decay envelope violated: ratio still growing at the outermost shell");
    return est;
}

std::vector<ReportEntry> validate_profile(const Profile& p, const Tolerances& tol) {
    std::vector<ReportEntry> out;
    p.require_gamma();

    const double u0 = p.U(Vec3{0, 0, 0}).norm();
    out.push_back(check_entry("profile.u0", "U(0) = 0 (Galilean normalization)", u0,
                              tol.scaled(tol.u0_abs)));

    if (p.Omega && p.Omega->is_sampled() && p.U.is_sampled() &&
        p.U.grid()->dims == p.Omega->grid()->dims) {
        // interior relative deviation of Omega from curl(U)
        const Grid3& g = *p.U.grid();
        double sup_dev = 0.0, sup_omega = 0.0;
        const auto& om = *p.Omega;
        for (int i = 0; i < g.dims[0]; ++i)
            for (int j = 0; j < g.dims[1]; ++j)
                for (int k = 0; k < g.dims[2]; ++k) {
                    if (!g.interior(i, j, k)) continue;
                    const Vec3 y = g.point(i, j, k);
                    const Vec3 c = p.U.curl(y);
                    const Vec3 o = om(y);
                    sup_dev = std::max(sup_dev, (c - o).norm());
                    sup_omega = std::max(sup_omega, o.norm());
                }
        const double rel = sup_omega > 0.0 ? sup_dev / sup_omega : sup_dev;
        out.push_back(check_entry("profile.curl_consistency",
                                  "Omega = curl(U) (interior, relative)", rel,
                                  std::max(p.curl_tol, tol.scaled(tol.curl_consistency_rel))));
    }
    return out;
}

}  // namespace ssguard
