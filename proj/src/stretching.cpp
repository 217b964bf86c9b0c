#include "ssguard/stretching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ssguard/kernels.hpp"
#include "ssguard/norms.hpp"
#include "ssguard/parallel.hpp"
#include "ssguard/quadrature.hpp"

namespace ssguard::stretching {

namespace {
constexpr long double kPiL = 3.141592653589793238462643383279502884L;
}

double cp_constant(double p) {
    if (!(p > 1.0)) throw Error("cp_constant requires p > 1");
    const long double pl = p;
    const long double c = 2.0L * powl(6.0L, 3.0L / (pl + 3.0L)) *
                          powl(3.0L / (4.0L * kPiL), 1.0L / (pl + 3.0L)) *
                          powl(pl - 1.0L, (pl - 1.0L) / (pl + 3.0L));
    return static_cast<double>(c);
}

double normalized_threshold(double p) {
    if (!(p > 1.0)) throw Error("normalized_threshold requires p > 1");
    const long double pl = p;
    const long double t = 0.5L * powl(kPiL / 1296.0L, 1.0L / pl) *
                          powl(pl - 1.0L, -1.0L + 1.0L / pl);
    return static_cast<double>(t);
}

namespace {

struct ProfileNorms {
    double omega_sup = 0.0;
    double grad_sup = 0.0;
    double lp = 0.0;
    double p = 0.0;
};

ProfileNorms compute_norms(const Profile& prof, double p, bool lp_strict = true) {
    if (!prof.Omega) throw Error("stretching requires a vorticity profile");
    ProfileNorms n;
    n.p = p;
    n.omega_sup = field_norm(*prof.Omega, prof.grid, NormRequest::sup());
    n.grad_sup = grad_sup_norm(*prof.Omega, prof.grid);
    if (p > 0.0) {
        try {
            n.lp = field_norm(*prof.Omega, prof.grid, NormRequest::lp(p));
        } catch (const Error&) {
            if (lp_strict) throw;
            n.lp = std::numeric_limits<double>::infinity();  // bound unavailable
        }
    }
    return n;
}

Vec3 direction_at(const Profile& prof, const Vec3& y, double direction_factor,
                  double omega_sup) {
    const Vec3 w = (*prof.Omega)(y);
    const double m = w.norm();
    if (!(m > direction_factor * omega_sup))
        throw Error("vorticity direction undefined: |Omega(y)| below threshold");
    return w / m;
}

struct AngularRule {
    std::vector<Vec3> dirs;
    std::vector<double> gx, gy, gz;  // w_sigma * (d.Xi) * (Xi x d), SoA
};

AngularRule make_angular(int n_polar, int n_azimuth, const Vec3& xi) {
    AngularRule rule;
    const auto& gl = quadrature::gauss_legendre(n_polar);
    const std::size_t total = static_cast<std::size_t>(n_polar) * n_azimuth;
    rule.dirs.reserve(total);
    rule.gx.reserve(total);
    rule.gy.reserve(total);
    rule.gz.reserve(total);
    const double wphi = 2.0 * M_PI / n_azimuth;
    for (int i = 0; i < n_polar; ++i) {
        const double c = gl.x[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int j = 0; j < n_azimuth; ++j) {
            const double phi = wphi * (j + 0.5);
            const Vec3 d{s * std::cos(phi), s * std::sin(phi), c};
            const double w = gl.w[i] * wphi;
            const double a = d.dot(xi);
            const Vec3 g = xi.cross(d) * (w * a);
            rule.dirs.push_back(d);
            rule.gx.push_back(g.x);
            rule.gy.push_back(g.y);
            rule.gz.push_back(g.z);
        }
    }
    return rule;
}

/// One spherical shell of the kernel quadrature: sum over directions of
/// w_sigma (d.Xi) [(Omega(y + r d) - sub) . (Xi x d)].
double shell_sum(const Profile& prof, const Vec3& y, double r, const AngularRule& rule,
                 const Vec3& sub, std::vector<double>& bx, std::vector<double>& by,
                 std::vector<double>& bz) {
    const std::size_t n = rule.dirs.size();
    bx.resize(n);
    by.resize(n);
    bz.resize(n);
    const auto& omega = *prof.Omega;
    for (std::size_t k = 0; k < n; ++k) {
        const Vec3 w = omega(y + rule.dirs[k] * r);
        bx[k] = w.x - sub.x;
        by[k] = w.y - sub.y;
        bz[k] = w.z - sub.z;
    }
    return kernels::reduce_dot3(bx.data(), by.data(), bz.data(), rule.gx.data(),
                                rule.gy.data(), rule.gz.data(), n);
}

struct PieceResult {
    double value = 0.0;
    double shell_abs_max = 0.0;  // max |Omega| seen on the outermost radius
};

/// Integrates over log-radius panels [s0, s1]; the kernel's dr/r measure is
/// uniform in s = log r.
template <class WeightFn>
PieceResult radial_integral(const Profile& prof, const Vec3& y, const AngularRule& rule,
                            const Vec3& sub, double s0, double s1, int gauss_n,
                            WeightFn&& radial_weight) {
    PieceResult res;
    std::vector<double> bx, by, bz;
    const int npanels = std::max(1, static_cast<int>(std::ceil((s1 - s0) / 1.1)));
    for (int p = 0; p < npanels; ++p) {
        const double a = s0 + (s1 - s0) * p / npanels;
        const double b = s0 + (s1 - s0) * (p + 1) / npanels;
        const auto g = quadrature::gauss_on(gauss_n, a, b);
        for (int i = 0; i < gauss_n; ++i) {
            const double r = std::exp(g.x[i]);
            const double w = radial_weight(r);
            if (w == 0.0) continue;
            res.value += g.w[i] * w * shell_sum(prof, y, r, rule, sub, bx, by, bz);
        }
    }
    const double r_out = std::exp(s1);
    double m = 0.0;
    for (std::size_t k = 0; k < rule.dirs.size(); k += 7)
        m = std::max(m, (*prof.Omega)(y + rule.dirs[k] * r_out).norm());
    res.shell_abs_max = m;
    return res;
}

struct BothPieces {
    double alpha_in = 0.0, alpha_out = 0.0, tail_bound = 0.0, inner_floor_bound = 0.0;
};

BothPieces evaluate_pieces(const Profile& prof, const Vec3& y, const Vec3& xi, double L,
                           const IntegralOptions& opt, int n_polar, int n_azimuth,
                           int gauss_radial, double grad_sup, double omega_sup) {
    const AngularRule rule = make_angular(n_polar, n_azimuth, xi);
    const double pref = 3.0 / (4.0 * M_PI);
    const Vec3 omega_y = (*prof.Omega)(y);
    BothPieces out;

    // inner: subtracted kernel over [r_min, 2L] with chi(r/L)
    const double r_min = opt.inner_floor * 2.0 * L;
    const auto inner = radial_integral(
        prof, y, rule, omega_y, std::log(r_min), std::log(2.0 * L), gauss_radial,
        [&](double r) { return pref * quadrature::smooth_cutoff(r / L); });
    out.alpha_in = inner.value;
    // remainder below r_min: |Omega(y+z) - Omega(y)| <= |grad Omega| r
    out.inner_floor_bound = 6.0 * grad_sup * r_min;

    // outer: direct kernel with (1 - chi) weight from L outward. Extend in
    // octave panels until either the shell magnitude bounds the remaining
    // tail below target, or the panel contributions decay geometrically and
    // the geometric tail estimate does.
    double s_lo = std::log(L);
    double alpha_out = 0.0;
    double shell_mag = 0.0;
    const double span = std::log(2.0);
    int panels = 0;
    double prev_delta = std::numeric_limits<double>::infinity();
    double tail_bound = std::numeric_limits<double>::infinity();
    const double scale_floor = 1e-3 * omega_sup;
    while (true) {
        const auto piece = radial_integral(
            prof, y, rule, Vec3{}, s_lo, s_lo + span, gauss_radial,
            [&](double r) { return pref * (1.0 - quadrature::smooth_cutoff(r / L)); });
        alpha_out += piece.value;
        shell_mag = piece.shell_abs_max;
        s_lo += span;
        ++panels;
        tail_bound = 3.0 * shell_mag;  // decay exponent >= 1 beyond here
        const double delta = std::fabs(piece.value);
        if (panels >= 6 && delta <= prev_delta / 1.4)
            tail_bound = std::min(tail_bound, 3.5 * delta);  // geometric continuation
        prev_delta = delta;
        const double scale =
            std::max({std::fabs(out.alpha_in), std::fabs(alpha_out), scale_floor});
        if ((panels >= 4 && tail_bound < opt.tail_rtol * scale) || panels > 40) break;
    }
    out.alpha_out = alpha_out;
    out.tail_bound = tail_bound;
    return out;
}

}  // namespace

double stretching_direct(const Profile& prof, const Vec3& y, double direction_factor) {
    if (!prof.Omega) throw Error("stretching_direct requires a vorticity profile");
    const double sup = field_norm(*prof.Omega, prof.grid, NormRequest::sup());
    const Vec3 xi = direction_at(prof, y, direction_factor, sup);
    const Mat3 g = prof.U.gradient(y);
    const double a_full = xi.dot(g * xi);
    const double a_sym = xi.dot(g.sym() * xi);
    const double slack = 1e-12 * (1.0 + g.frobenius());
    if (std::fabs(a_full - a_sym) > slack)
        throw Error("strain contraction mismatch (antisymmetric part did not cancel)");
    return a_sym;
}

StretchingResult stretching_integral(const Profile& prof, const Vec3& y, double L, double p,
                                     const IntegralOptions& opt) {
    prof.require_gamma();
    if (!prof.Omega) throw Error("stretching_integral requires a vorticity profile");
    if (!(L > 0.0)) throw Error("cutoff length must be positive");
    const Vec3 ext = prof.grid.max_corner() - prof.grid.origin;
    if (2.0 * L > std::max({ext.x, ext.y, ext.z}))
        throw Error("cutoff length exceeds the grid extent");

    const ProfileNorms norms = compute_norms(prof, p, /*lp_strict=*/false);
    const Vec3 xi = direction_at(prof, y, 1e-12, norms.omega_sup);

    const auto base = evaluate_pieces(prof, y, xi, L, opt, opt.n_polar, opt.n_azimuth,
                                      opt.gauss_radial, norms.grad_sup, norms.omega_sup);
    const auto fine =
        evaluate_pieces(prof, y, xi, L, opt, opt.n_polar * 3 / 2, opt.n_azimuth * 3 / 2,
                        opt.gauss_radial + 3, norms.grad_sup, norms.omega_sup);

    StretchingResult res;
    res.y = y;
    res.L = L;
    res.p = p;
    res.alpha_in = fine.alpha_in;
    res.alpha_out = fine.alpha_out;
    res.a_integral = fine.alpha_in + fine.alpha_out;
    res.bound_in = 6.0 * L * norms.grad_sup;
    res.bound_out = std::pow(3.0 / (4.0 * M_PI), 1.0 / p) *
                    std::pow(p - 1.0, (p - 1.0) / p) * norms.lp * std::pow(L, -3.0 / p);
    res.quad_error = std::fabs(fine.alpha_in - base.alpha_in) +
                     std::fabs(fine.alpha_out - base.alpha_out) + fine.tail_bound +
                     fine.inner_floor_bound;
    if (opt.with_direct) {
        try {
            res.a_direct = stretching_direct(prof, y);
        } catch (const Error&) {
            res.a_direct.reset();
        }
    }
    return res;
}

SmallnessReport smallness_check(const Profile& prof, double p) {
    prof.require_gamma();
    if (!(p > 3.0 * prof.gamma))
        throw Error("smallness check requires p > 3*gamma (integrable vorticity tail)");
    if (!prof.Omega) throw Error("smallness check requires a vorticity profile");
    const ProfileNorms n = compute_norms(prof, p);
    SmallnessReport rep;
    rep.p = p;
    rep.grad_sup = n.grad_sup;
    rep.lp_norm = n.lp;
    rep.size = std::pow(n.grad_sup, 3.0 / (p + 3.0)) * std::pow(n.lp, p / (p + 3.0));
    rep.threshold = 1.0 / cp_constant(p);
    rep.satisfied = rep.size >= rep.threshold;
    if (std::fabs(n.grad_sup - 1.0) <= 1e-6) {
        rep.normalized_lhs = n.lp;
        rep.normalized_rhs = normalized_threshold(p);
    }
    return rep;
}

ArgmaxResult argmax_stretching_check(const Profile& prof) {
    if (!prof.Omega) throw Error("argmax check requires a vorticity profile");
    const Grid3& g = prof.grid;
    const auto& omega = *prof.Omega;

    double best = -1.0;
    for (int i = 0; i < g.dims[0]; ++i)
        for (int j = 0; j < g.dims[1]; ++j)
            for (int k = 0; k < g.dims[2]; ++k)
                best = std::max(best, omega(g.point(i, j, k)).norm());
    if (!(best > 0.0)) throw Error("argmax check requires a nonzero vorticity profile");

    // among near-ties, prefer the node farthest from the boundary (fields with
    // an invariant direction attain the max along whole lines)
    int bi = -1, bj = 0, bk = 0, best_margin = -1;
    for (int i = 0; i < g.dims[0]; ++i)
        for (int j = 0; j < g.dims[1]; ++j)
            for (int k = 0; k < g.dims[2]; ++k) {
                if (omega(g.point(i, j, k)).norm() < best * (1.0 - 1e-12)) continue;
                const int margin = std::min({i, j, k, g.dims[0] - 1 - i, g.dims[1] - 1 - j,
                                             g.dims[2] - 1 - k});
                if (margin > best_margin) {
                    best_margin = margin;
                    bi = i;
                    bj = j;
                    bk = k;
                }
            }
    if (best_margin < 1)
        throw Error("|Omega| maximum attained on the grid boundary: domain too small");

    // per-axis quadratic refinement of the node maximum
    Vec3 y = g.point(bi, bj, bk);
    for (int a = 0; a < 3; ++a) {
        Vec3 ym = y, yp = y;
        ym[a] -= g.spacing[a];
        yp[a] += g.spacing[a];
        const double fm = omega(ym).norm(), f0 = omega(y).norm(), fp = omega(yp).norm();
        const double denom = fm - 2.0 * f0 + fp;
        if (denom < 0.0) {
            double delta = 0.5 * (fm - fp) / denom * g.spacing[a];
            delta = std::clamp(delta, -0.5 * g.spacing[a], 0.5 * g.spacing[a]);
            y[a] += delta;
        }
    }

    ArgmaxResult res;
    res.y_star = y;
    res.omega_max = omega(y).norm();
    res.a_value = stretching_direct(prof, y);
    res.residual = std::fabs(res.a_value - 1.0);
    return res;
}

}  // namespace ssguard::stretching
