#include "ssguard/axisym.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssguard/calculus.hpp"
#include "ssguard/parallel.hpp"
#include "ssguard/quadrature.hpp"
#include "ssguard/selfsim.hpp"
#include "stencil.hpp"

namespace ssguard::axisym {

// ---------------------------------------------------------------------------
// AxiField

struct AxiField::Sampled {
    Grid2 grid;
    int order = 3;
    std::vector<double> v;
    mutable std::once_flag grad_once;
    mutable std::vector<double> d_r, d_z;

    struct Window {
        int base;
        double w[4];
    };

    Window window(double coord, double origin, double h, int n) const {
        Window win{};
        const double u = (coord - origin) / h;
        if (order == 1) {
            int b = std::clamp(static_cast<int>(std::floor(u)), 0, n - 2);
            const double x = u - b;
            win.base = b;
            win.w[0] = 1.0 - x;
            win.w[1] = x;
        } else {
            int b = std::clamp(static_cast<int>(std::floor(u)) - 1, 0, n - 4);
            const double x = u - b;
            const double x0 = x, x1 = x - 1.0, x2 = x - 2.0, x3 = x - 3.0;
            win.base = b;
            win.w[0] = -x1 * x2 * x3 / 6.0;
            win.w[1] = x0 * x2 * x3 / 2.0;
            win.w[2] = -x0 * x1 * x3 / 2.0;
            win.w[3] = x0 * x1 * x2 / 6.0;
        }
        return win;
    }

    double interp(const std::vector<double>& arr, double r, double z) const {
        // clamp to the grid box (meridional fields are diagnostics-local)
        r = std::clamp(r, grid.r0, grid.r_max());
        z = std::clamp(z, grid.z0, grid.z_max());
        const Window wr = window(r, grid.r0, grid.dr, grid.nr);
        const Window wz = window(z, grid.z0, grid.dz, grid.nz);
        const int m = order == 1 ? 2 : 4;
        double acc = 0.0;
        for (int a = 0; a < m; ++a) {
            const double* line = arr.data() + static_cast<std::size_t>(wr.base + a) * grid.nz;
            double accz = 0.0;
            for (int b = 0; b < m; ++b) accz += wz.w[b] * line[wz.base + b];
            acc += wr.w[a] * accz;
        }
        return acc;
    }

    void ensure_gradients() const {
        std::call_once(grad_once, [this] {
            detail::derivative_axis2(grid, v, 0, d_r);
            detail::derivative_axis2(grid, v, 1, d_z);
        });
    }
};

AxiField AxiField::analytic(std::string name, std::function<double(double, double)> value,
                            std::function<double(double, double)> dr,
                            std::function<double(double, double)> dz) {
    AxiField f;
    f.name_ = std::move(name);
    f.value_ = std::move(value);
    f.dr_ = std::move(dr);
    f.dz_ = std::move(dz);
    return f;
}

AxiField AxiField::sampled(const Grid2& grid, std::vector<double> values, int interp_order) {
    grid.validate();
    if (values.size() != grid.size()) throw Error("sampled array does not match grid dims");
    if (interp_order != 1 && interp_order != 3) throw Error("interpolation order must be 1 or 3");
    for (double v : values)
        if (!std::isfinite(v)) throw Error("sampled array contains non-finite entries");
    AxiField f;
    f.name_ = "sampled";
    auto d = std::make_shared<Sampled>();
    d->grid = grid;
    d->order = interp_order;
    d->v = std::move(values);
    f.data_ = std::move(d);
    return f;
}

AxiField AxiField::zero() {
    return analytic(
        "zero", [](double, double) { return 0.0; }, [](double, double) { return 0.0; },
        [](double, double) { return 0.0; });
}

double AxiField::operator()(double r, double z) const {
    if (data_) return data_->interp(data_->v, r, z);
    return value_(r, z);
}

double AxiField::dr(double r, double z) const {
    if (dr_) return dr_(r, z);
    if (data_) {
        data_->ensure_gradients();
        return data_->interp(data_->d_r, r, z);
    }
    const double h = 1e-4 * (1.0 + std::fabs(r));
    // stay inside r >= 0 with a shifted stencil when needed
    if (r - 2 * h < 0.0) {
        return (-3.0 * value_(r, z) + 4.0 * value_(r + h, z) - value_(r + 2 * h, z)) /
               (2.0 * h);
    }
    return (value_(r - 2 * h, z) - 8.0 * value_(r - h, z) + 8.0 * value_(r + h, z) -
            value_(r + 2 * h, z)) /
           (12.0 * h);
}

double AxiField::dz(double r, double z) const {
    if (dz_) return dz_(r, z);
    if (data_) {
        data_->ensure_gradients();
        return data_->interp(data_->d_z, r, z);
    }
    const double h = 1e-4 * (1.0 + std::fabs(z));
    return (value_(r, z - 2 * h) - 8.0 * value_(r, z - h) + 8.0 * value_(r, z + h) -
            value_(r, z + 2 * h)) /
           (12.0 * h);
}

const Grid2* AxiField::grid() const { return data_ ? &data_->grid : nullptr; }
const std::vector<double>* AxiField::samples() const { return data_ ? &data_->v : nullptr; }

// ---------------------------------------------------------------------------

namespace {

/// q(r,z)/r with the l'Hopital limit d_r q near the axis. Assumes q(0,z) = 0.
double over_r(const AxiField& q, double r, double z, double r_eps) {
    if (r < r_eps) return q.dr(r, z);
    return q(r, z) / r;
}

double axis_eps(const AxisymProfile& p) {
    return p.U_r.is_sampled() ? 2.0 * p.grid.dr : 1e-8;
}

}  // namespace

DerivedVorticity vorticity_from_velocity(const AxisymProfile& p, double r, double z) {
    const double eps = axis_eps(p);
    DerivedVorticity w;
    w.r = -p.U_theta.dz(r, z);
    w.z = p.U_theta.dr(r, z) + over_r(p.U_theta, r, z, eps);
    w.theta = p.U_r.dz(r, z) - p.U_z.dr(r, z);
    return w;
}

std::vector<ReportEntry> validate_axisym(const AxisymProfile& p, const Tolerances& tol) {
    if (!(p.gamma > 0.0)) throw Error("profile requires gamma > 0");
    std::vector<ReportEntry> out;
    if (p.grid.r0 > 0.0) {
        auto e = info_entry("axisym.axis",
                            "U_r, U_theta (and Omega_r, Omega_theta) vanish on the axis",
                            0.0, "grid excludes the axis (r0 > 0); check skipped");
        e.verdict = Verdict::INCONCLUSIVE;
        out.push_back(std::move(e));
    } else {
        double axis_dev = 0.0;
        for (int j = 0; j < p.grid.nz; ++j) {
            const double z = p.grid.z(j);
            axis_dev = std::max(axis_dev, std::fabs(p.U_r(0.0, z)));
            axis_dev = std::max(axis_dev, std::fabs(p.U_theta(0.0, z)));
            if (p.has_vorticity()) {
                axis_dev = std::max(axis_dev, std::fabs((*p.Omega_r)(0.0, z)));
                axis_dev = std::max(axis_dev, std::fabs((*p.Omega_theta)(0.0, z)));
            }
        }
        out.push_back(check_entry("axisym.axis",
                                  "U_r, U_theta (and Omega_r, Omega_theta) vanish on the axis",
                                  axis_dev, tol.scaled(tol.axis_abs)));
    }

    if (p.has_vorticity()) {
        double dev = 0.0, scale = 0.0;
        for (int i = 3; i < p.grid.nr - 3; ++i)
            for (int j = 3; j < p.grid.nz - 3; ++j) {
                const double r = p.grid.r(i), z = p.grid.z(j);
                const auto w = vorticity_from_velocity(p, r, z);
                dev = std::max({dev, std::fabs(w.r - (*p.Omega_r)(r, z)),
                                std::fabs(w.theta - (*p.Omega_theta)(r, z)),
                                std::fabs(w.z - (*p.Omega_z)(r, z))});
                scale = std::max({scale, std::fabs(w.r), std::fabs(w.theta), std::fabs(w.z)});
            }
        const double rel = scale > 0.0 ? dev / scale : dev;
        out.push_back(check_entry("axisym.curl_consistency",
                                  "Omega components match curl(U) in cylindrical form", rel,
                                  std::max(p.curl_tol, tol.scaled(tol.curl_consistency_rel))));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Norms2 {
    double sup = 0.0, l2 = 0.0;
};

Norms2 interior_norms2(const Grid2& g, const std::vector<double>& mag) {
    Norms2 n;
    double sum = 0.0;
    for (int i = 3; i < g.nr - 3; ++i)
        for (int j = 3; j < g.nz - 3; ++j) {
            const double m = mag[g.index(i, j)];
            n.sup = std::max(n.sup, m);
            sum += m * m;
        }
    n.l2 = std::sqrt(sum * g.dr * g.dz);
    return n;
}

ResidualField2 residual_on_grid(const AxisymProfile& p, const std::string& name,
                                const std::function<double(double, double)>& f) {
    ResidualField2 rf;
    rf.name = name;
    rf.grid = p.grid;
    rf.magnitude.resize(p.grid.size());
    parallel_for_each(static_cast<std::size_t>(p.grid.nr), [&](std::size_t ii) {
        const int i = static_cast<int>(ii);
        for (int j = 0; j < p.grid.nz; ++j)
            rf.magnitude[p.grid.index(i, j)] = std::fabs(f(p.grid.r(i), p.grid.z(j)));
    });
    const auto n = interior_norms2(p.grid, rf.magnitude);
    rf.interior_sup = n.sup;
    rf.interior_l2 = n.l2;
    return rf;
}

}  // namespace

std::vector<ResidualField2> axisym_residual(const AxisymProfile& p) {
    if (!(p.gamma > 0.0)) throw Error("profile requires gamma > 0");
    const double g = p.gamma;
    const double eps = axis_eps(p);
    std::vector<ResidualField2> out;

    // pressure for the meridional momentum equations
    std::optional<AxiField> P = p.P;
    if (!P) {
        const Profile cart = cartesian_adapter(p);
        const ScalarField p3 = selfsim::recover_pressure(cart);
        P = AxiField::analytic(
            "recovered", [p3](double r, double z) { return p3(Vec3{r, 0.0, z}); },
            [p3](double r, double z) { return p3.gradient(Vec3{r, 0.0, z}).x; },
            [p3](double r, double z) { return p3.gradient(Vec3{r, 0.0, z}).z; });
    }
    const AxiField& Pf = *P;

    out.push_back(residual_on_grid(p, "axisym.res.vel_r", [&](double r, double z) {
        const double vr = g * r + p.U_r(r, z), vz = g * z + p.U_z(r, z);
        const double ut = p.U_theta(r, z);
        return (1.0 - g) * p.U_r(r, z) + vr * p.U_r.dr(r, z) + vz * p.U_r.dz(r, z) +
               Pf.dr(r, z) - over_r(p.U_theta, r, z, eps) * ut;
    }));
    out.push_back(residual_on_grid(p, "axisym.res.vel_z", [&](double r, double z) {
        const double vr = g * r + p.U_r(r, z), vz = g * z + p.U_z(r, z);
        return (1.0 - g) * p.U_z(r, z) + vr * p.U_z.dr(r, z) + vz * p.U_z.dz(r, z) +
               Pf.dz(r, z);
    }));
    out.push_back(residual_on_grid(p, "axisym.res.swirl", [&](double r, double z) {
        const double vr = g * r + p.U_r(r, z), vz = g * z + p.U_z(r, z);
        return (1.0 - g) * p.U_theta(r, z) + vr * p.U_theta.dr(r, z) +
               vz * p.U_theta.dz(r, z) +
               over_r(p.U_r, r, z, eps) * p.U_theta(r, z);
    }));
    out.push_back(residual_on_grid(p, "axisym.res.continuity", [&](double r, double z) {
        return p.U_r.dr(r, z) + over_r(p.U_r, r, z, eps) + p.U_z.dz(r, z);
    }));

    if (p.has_vorticity()) {
        out.push_back(residual_on_grid(p, "axisym.res.vort_r", [&](double r, double z) {
            const double vr = g * r + p.U_r(r, z), vz = g * z + p.U_z(r, z);
            return (*p.Omega_r)(r, z) + vr * p.Omega_r->dr(r, z) + vz * p.Omega_r->dz(r, z) -
                   ((*p.Omega_r)(r, z) * p.U_r.dr(r, z) +
                    (*p.Omega_z)(r, z) * p.U_r.dz(r, z));
        }));
        out.push_back(residual_on_grid(p, "axisym.res.vort_z", [&](double r, double z) {
            const double vr = g * r + p.U_r(r, z), vz = g * z + p.U_z(r, z);
            return (*p.Omega_z)(r, z) + vr * p.Omega_z->dr(r, z) + vz * p.Omega_z->dz(r, z) -
                   ((*p.Omega_r)(r, z) * p.U_z.dr(r, z) +
                    (*p.Omega_z)(r, z) * p.U_z.dz(r, z));
        }));
        out.push_back(residual_on_grid(p, "axisym.res.vort_theta", [&](double r, double z) {
            const double vr = g * r + p.U_r(r, z), vz = g * z + p.U_z(r, z);
            return (*p.Omega_theta)(r, z) + vr * p.Omega_theta->dr(r, z) +
                   vz * p.Omega_theta->dz(r, z) -
                   (over_r(p.U_r, r, z, eps) * (*p.Omega_theta)(r, z) -
                    2.0 * over_r(p.U_theta, r, z, eps) * (*p.Omega_r)(r, z));
        }));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<MeridionalTrajectory> meridional_flow(
    const AxisymProfile& p, const std::vector<std::pair<double, double>>& seeds,
    const std::vector<double>& tau_samples, double rtol, double atol) {
    if (!(p.gamma > 0.0)) throw Error("profile requires gamma > 0");
    for (const auto& s : seeds)
        if (s.first < 0.0) throw Error("meridional seeds need r >= 0");
    const double eps = axis_eps(p);

    std::vector<MeridionalTrajectory> out(seeds.size());
    parallel_for_each(seeds.size(), [&](std::size_t si) {
        MeridionalTrajectory& tr = out[si];
        tr.r0 = seeds[si].first;
        tr.z0 = seeds[si].second;
        if (tr.r0 == 0.0) {
            // axis seeds stay on the axis exactly: integrate z alone
            ode::DormandPrince<1> zint(
                [&](double, const std::array<double, 1>& s, std::array<double, 1>& ds) {
                    ds[0] = p.gamma * s[0] + p.U_z(0.0, s[0]);
                },
                rtol, atol);
            tr.stats = zint.integrate(0.0, {tr.z0}, tau_samples,
                                      [&](double t, const std::array<double, 1>& s) {
                                          tr.tau.push_back(t);
                                          tr.R.push_back(0.0);
                                          tr.Z.push_back(s[0]);
                                          tr.Theta.push_back(0.0);
                                      });
            return;
        }
        bool diverged = false;
        ode::DormandPrince<3> integrator(
            [&](double, const std::array<double, 3>& s, std::array<double, 3>& ds) {
                const double r = std::max(s[0], 0.0), z = s[1];
                ds[0] = p.gamma * r + p.U_r(r, z);
                ds[1] = p.gamma * z + p.U_z(r, z);
                const double ratio = over_r(p.U_theta, r, z, eps);
                // theta' = U_theta / R; flag unbounded swirl rates near the axis
                double dtheta = r < eps ? ratio : p.U_theta(r, z) / r;
                if (!std::isfinite(dtheta) || std::fabs(dtheta) > 1e10) {
                    diverged = true;
                    dtheta = 0.0;
                }
                ds[2] = dtheta;
            },
            rtol, atol);
        tr.stats = integrator.integrate(0.0, {tr.r0, tr.z0, 0.0}, tau_samples,
                                        [&](double t, const std::array<double, 3>& s) {
                                            tr.tau.push_back(t);
                                            tr.R.push_back(s[0]);
                                            tr.Z.push_back(s[1]);
                                            tr.Theta.push_back(s[2]);
                                        });
        tr.theta_diverged = diverged;
    });
    return out;
}

std::vector<MeridionalFixedPoint> meridional_fixed_points(const AxisymProfile& p,
                                                          double swirl_tol) {
    if (!(p.gamma > 0.0)) throw Error("profile requires gamma > 0");
    const double g = p.gamma;
    const double r_hi = p.grid.r_max();
    const double z_lo = p.grid.z0, z_hi = p.grid.z_max();

    auto Vr = [&](double r, double z) { return g * r + p.U_r(r, z); };
    auto Vz = [&](double r, double z) { return g * z + p.U_z(r, z); };

    std::vector<MeridionalFixedPoint> found;
    auto push_unique = [&](double r, double z) {
        for (const auto& f : found)
            if (std::hypot(f.r - r, f.z - z) < 1e-6) return;
        MeridionalFixedPoint fp;
        fp.r = r;
        fp.z = z;
        fp.on_axis = r < 1e-8 * std::max(1.0, r_hi);
        fp.u_theta = p.U_theta(r, z);
        fp.circulation = 2.0 * M_PI * r * fp.u_theta;
        // meridional Jacobian spectrum
        const double a11 = g + p.U_r.dr(r, z), a12 = p.U_r.dz(r, z);
        const double a21 = p.U_z.dr(r, z), a22 = g + p.U_z.dz(r, z);
        const double tr = a11 + a22, det = a11 * a22 - a12 * a21;
        const double disc = tr * tr / 4.0 - det;
        if (disc >= 0.0) {
            fp.jac_eig_re[0] = tr / 2.0 - std::sqrt(disc);
            fp.jac_eig_re[1] = tr / 2.0 + std::sqrt(disc);
        } else {
            fp.jac_eig_re[0] = fp.jac_eig_re[1] = tr / 2.0;
            fp.jac_eig_im[0] = -std::sqrt(-disc);
            fp.jac_eig_im[1] = std::sqrt(-disc);
        }
        if (!fp.on_axis && std::fabs(fp.u_theta) > swirl_tol) {
            char buf[160];
            if (std::fabs(g - 0.5) < 1e-9)
                std::snprintf(buf, sizeof(buf),
                              "swirl-carrying invariant circle: consistent (gamma = 1/2)");
            else
                std::snprintf(buf, sizeof(buf),
                              "swirl-carrying invariant circle forces gamma = 1/2; profile "
                              "with gamma = %.6g is inconsistent",
                              g);
            fp.verdict = buf;
        }
        found.push_back(fp);
    };

    const int nr = 24, nz = 24;
    for (int i = 0; i <= nr; ++i)
        for (int j = 0; j <= nz; ++j) {
            double r = r_hi * i / nr;
            double z = z_lo + (z_hi - z_lo) * j / nz;
            bool ok = true;
            for (int it = 0; it < 80; ++it) {
                const double fr = Vr(r, z), fz = Vz(r, z);
                const double a11 = g + p.U_r.dr(r, z), a12 = p.U_r.dz(r, z);
                const double a21 = p.U_z.dr(r, z), a22 = g + p.U_z.dz(r, z);
                const double det = a11 * a22 - a12 * a21;
                if (!std::isfinite(det) || std::fabs(det) < 1e-14) {
                    ok = false;
                    break;
                }
                const double dr = (fr * a22 - fz * a12) / det;
                const double dz = (fz * a11 - fr * a21) / det;
                r -= dr;
                z -= dz;
                if (r < 0.0) r = 0.0;
                if (std::fabs(dr) + std::fabs(dz) < 1e-14 * (1.0 + std::fabs(r) + std::fabs(z)))
                    break;
            }
            if (!ok) continue;
            if (std::hypot(Vr(r, z), Vz(r, z)) > 1e-10) continue;
            if (r > r_hi * 1.5 || z < z_lo * 1.5 - 1.0 || z > z_hi * 1.5 + 1.0) continue;
            push_unique(r, z);
        }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        return std::hypot(a.r, a.z) < std::hypot(b.r, b.z);
    });
    return found;
}

// ---------------------------------------------------------------------------

namespace {

/// Weighted polygon area int_D r dr dz = oint r^2/2 dz, exact per straight edge.
double weighted_area(const std::vector<std::pair<double, double>>& verts) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
        const double r0 = verts[i].first, r1 = verts[i + 1].first;
        const double dz = verts[i + 1].second - verts[i].second;
        acc += dz * (r0 * r0 + r0 * r1 + r1 * r1) / 6.0;
    }
    return acc;
}

}  // namespace

ReportEntry area_growth_check(const AxisymProfile& p,
                              const std::vector<std::pair<double, double>>& polygon,
                              const std::vector<double>& tau_samples, double tol) {
    if (polygon.size() < 4) throw Error("polygon needs at least 3 vertices (closed)");
    if (std::hypot(polygon.front().first - polygon.back().first,
                   polygon.front().second - polygon.back().second) > 1e-12)
        throw Error("polygon must be closed (first vertex = last)");
    for (const auto& v : polygon)
        if (!(v.first > 0.0)) throw Error("polygon must lie strictly inside {r > 0}");
    {
        // simplicity: pairwise segment crossings in the (r, z) plane
        auto orient = [](const std::pair<double, double>& a, const std::pair<double, double>& b,
                         const std::pair<double, double>& c) {
            return (b.first - a.first) * (c.second - a.second) -
                   (b.second - a.second) * (c.first - a.first);
        };
        const std::size_t m = polygon.size() - 1;
        for (std::size_t i = 0; i + 1 < m; ++i)
            for (std::size_t j = i + 2; j < m; ++j) {
                if (i == 0 && j == m - 1) continue;
                const auto &a = polygon[i], &b = polygon[i + 1];
                const auto &c = polygon[j], &d = polygon[j + 1];
                const double o1 = orient(a, b, c), o2 = orient(a, b, d);
                const double o3 = orient(c, d, a), o4 = orient(c, d, b);
                if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)))
                    throw Error("polygon self-intersects (not simple)");
            }
    }

    // label set, refined until no advected edge stretches beyond the cap
    std::vector<std::pair<double, double>> labels(polygon.begin(), polygon.end() - 1);
    double max_edge0 = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto& a = labels[i];
        const auto& b = labels[(i + 1) % labels.size()];
        max_edge0 = std::max(max_edge0, std::hypot(a.first - b.first, a.second - b.second));
    }
    const double cap = 2.0 * max_edge0;

    const double area0 = std::fabs(weighted_area([&] {
        auto v = labels;
        v.push_back(labels.front());
        return v;
    }()));
    if (!(area0 > 0.0)) throw Error("polygon has zero weighted area");

    double worst = 0.0;
    for (int round = 0; round < 10; ++round) {
        const auto trajs = meridional_flow(p, labels, tau_samples);
        // check stretching at every sample; refine labels where needed
        std::vector<std::pair<double, double>> refined;
        bool needs_refine = false;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            refined.push_back(labels[i]);
            const auto& ta = trajs[i];
            const auto& tb = trajs[(i + 1) % labels.size()];
            double stretch = 0.0;
            for (std::size_t s = 0; s < ta.tau.size(); ++s)
                stretch = std::max(stretch,
                                   std::hypot(ta.R[s] - tb.R[s], ta.Z[s] - tb.Z[s]));
            if (stretch > cap) {
                const auto& a = labels[i];
                const auto& b = labels[(i + 1) % labels.size()];
                refined.emplace_back(0.5 * (a.first + b.first), 0.5 * (a.second + b.second));
                needs_refine = true;
            }
        }
        if (needs_refine && round < 9) {
            labels = std::move(refined);
            continue;
        }
        // final evaluation
        worst = 0.0;
        for (std::size_t s = 0; s < tau_samples.size(); ++s) {
            std::vector<std::pair<double, double>> verts;
            for (const auto& tr : trajs) {
                if (tr.R[s] <= 0.0)
                    throw Error("polygon touched the axis during advection");
                verts.emplace_back(tr.R[s], tr.Z[s]);
            }
            verts.push_back(verts.front());
            const double area = std::fabs(weighted_area(verts));
            worst = std::max(worst, std::fabs(std::log(area / area0) -
                                              3.0 * p.gamma * trajs[0].tau[s]));
        }
        break;
    }
    return check_entry("axisym.area",
                       "d/dtau int_D r dr dz = 3 gamma int_D r dr dz (advected region)",
                       worst, tol);
}

ReportEntry axisym_invariant_check(const AxisymProfile& p, InvariantKind which,
                                   const std::vector<std::pair<double, double>>& seeds,
                                   const std::vector<double>& tau_samples, double tol) {
    for (const auto& s : seeds)
        if (!(s.first > 0.0)) throw Error("invariant check needs seeds with r > 0");
    if (which == InvariantKind::azimuthal_vorticity && !p.Omega_theta)
        throw Error("azimuthal-vorticity invariant requires Omega_theta");

    const auto trajs = meridional_flow(p, seeds, tau_samples);
    const double floor = 1e-12;
    double worst = 0.0;
    for (const auto& tr : trajs) {
        double i0;
        if (which == InvariantKind::swirl) {
            i0 = tr.r0 * p.U_theta(tr.r0, tr.z0);
        } else {
            i0 = (*p.Omega_theta)(tr.r0, tr.z0) / tr.r0;
        }
        for (std::size_t s = 0; s < tr.tau.size(); ++s) {
            if (tr.R[s] <= 1e-12) throw Error("trajectory hit the axis during the invariant check");
            double value;
            if (which == InvariantKind::swirl) {
                value = std::exp((1.0 - 2.0 * p.gamma) * tr.tau[s]) * tr.R[s] *
                        p.U_theta(tr.R[s], tr.Z[s]);
            } else {
                value = std::exp((1.0 + p.gamma) * tr.tau[s]) *
                        (*p.Omega_theta)(tr.R[s], tr.Z[s]) / tr.R[s];
            }
            worst = std::max(worst,
                             std::fabs(value - i0) / std::max(std::fabs(i0), floor));
        }
    }
    const char* ref = which == InvariantKind::swirl
                          ? "e^{(1-2 gamma) tau} R U_theta is conserved along trajectories"
                          : "e^{(1+gamma) tau} Omega_theta / R is conserved along trajectories";
    const char* name =
        which == InvariantKind::swirl ? "axisym.invariant.swirl" : "axisym.invariant.vort";
    return check_entry(name, ref, worst, tol);
}

AlphaLimitResult backward_alpha_limit(const AxisymProfile& p, double r0, double z0,
                                      double tau_min) {
    if (!(r0 > 0.0)) throw Error("alpha-limit surrogate needs a seed with r0 > 0");
    AlphaLimitResult res;
    if (p.gamma >= 0.5)
        res.note = "gamma >= 1/2: no boundedness guarantee for the backward trajectory; ";

    // dense backward sampling for recurrence detection
    const int nsteps = 400;
    std::vector<double> taus(nsteps);
    for (int i = 0; i < nsteps; ++i) taus[i] = tau_min * (i + 1) / nsteps;
    const auto trajs = meridional_flow(p, {{r0, z0}}, taus);
    const auto& tr = trajs[0];
    if (tr.stats.truncated) {
        res.kind = AlphaLimitResult::Kind::undecided;
        res.note += "integration truncated (stiffness)";
        return res;
    }

    res.min_axis_distance = r0;
    for (double r : tr.R) res.min_axis_distance = std::min(res.min_axis_distance, r);

    // Poincare-section recurrence: crossings of z = z0 moving in +z
    std::vector<double> crossings;
    for (std::size_t i = 1; i < tr.tau.size(); ++i) {
        if ((tr.Z[i - 1] - z0) < 0.0 && (tr.Z[i] - z0) >= 0.0) {
            const double t = (z0 - tr.Z[i - 1]) / (tr.Z[i] - tr.Z[i - 1]);
            crossings.push_back(tr.R[i - 1] + t * (tr.R[i] - tr.R[i - 1]));
        }
    }
    for (std::size_t i = 0; i < crossings.size(); ++i)
        for (std::size_t j = i + 1; j < crossings.size(); ++j)
            if (std::fabs(crossings[i] - crossings[j]) < 1e-4) {
                res.kind = AlphaLimitResult::Kind::cycling;
                res.note += "Poincare section revisited within 1e-4";
                return res;
            }

    const double r_end = tr.R.back(), z_end = tr.Z.back();
    const double start_mag = std::hypot(r0, z0);
    if (std::hypot(r_end, z_end) > 5.0 * std::max(start_mag, 1.0) &&
        std::hypot(r_end, z_end) > std::hypot(tr.R[tr.R.size() / 2], tr.Z[tr.Z.size() / 2])) {
        res.kind = AlphaLimitResult::Kind::escaped;
        return res;
    }

    // approached one of the fixed points? (exponential contraction only gets
    // within e^{lambda tau_min} of the limit, so classify by proximity to the
    // Newton-refined fixed-point list and a contracting trend)
    const auto fps = meridional_fixed_points(p);
    const MeridionalFixedPoint* nearest = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& fp : fps) {
        const double d = std::hypot(fp.r - r_end, fp.z - z_end);
        if (d < best) {
            best = d;
            nearest = &fp;
        }
    }
    const double proximity = std::max(1e-3, 0.02 * (1.0 + start_mag));
    if (nearest && best < proximity) {
        const double mid = std::hypot(tr.R[3 * tr.R.size() / 4] - nearest->r,
                                      tr.Z[3 * tr.Z.size() / 4] - nearest->z);
        if (best <= mid + 1e-12) {
            res.fp_r = nearest->r;
            res.fp_z = nearest->z;
            if (nearest->on_axis) {
                res.kind = AlphaLimitResult::Kind::axis_fixed_point;
            } else {
                res.kind = AlphaLimitResult::Kind::off_axis_fixed_point;
                res.note +=
                    "off-axis alpha limit contradicts the all-axis fixed point hypothesis";
            }
            return res;
        }
    }
    res.kind = AlphaLimitResult::Kind::undecided;
    return res;
}

// ---------------------------------------------------------------------------

Profile cartesian_adapter(const AxisymProfile& p) {
    Profile cart;
    cart.gamma = p.gamma;
    cart.symmetry = Symmetry::axisym;
    cart.source = p.source;
    cart.curl_tol = p.curl_tol;

    const double eps = axis_eps(p);
    const AxisymProfile prof = p;  // capture by value: fields share storage
    // fields on axis-excluding grids (r0 > 0, singular swirl profiles) are
    // continued linearly to zero inside r < r0 so the adapter stays finite
    const double r_lo = p.grid.r0;
    const double z_lo = p.grid.z0, z_hi = p.grid.z_max();
    auto comp_over_r = [eps, r_lo, z_lo, z_hi](const AxiField& f, double r, double z) {
        z = std::clamp(z, z_lo, z_hi);
        if (r_lo > 0.0 && r < r_lo) return f(r_lo, z) / r_lo;
        return over_r(f, r, z, eps);
    };
    cart.U = VectorField::analytic("axisym:U", [prof, comp_over_r, z_lo, z_hi](const Vec3& y) {
        const double r = std::hypot(y.x, y.y);
        const double z = y.z;
        const double ur_r = comp_over_r(prof.U_r, r, z);       // U_r / r
        const double ut_r = comp_over_r(prof.U_theta, r, z);   // U_theta / r
        return Vec3{y.x * ur_r - y.y * ut_r, y.y * ur_r + y.x * ut_r,
                    prof.U_z(std::max(r, prof.grid.r0), std::clamp(z, z_lo, z_hi))};
    });
    if (p.has_vorticity()) {
        cart.Omega = VectorField::analytic(
            "axisym:Omega", [prof, comp_over_r, z_lo, z_hi](const Vec3& y) {
                const double r = std::hypot(y.x, y.y);
                const double z = y.z;
                const double wr_r = comp_over_r(*prof.Omega_r, r, z);
                const double wt_r = comp_over_r(*prof.Omega_theta, r, z);
                return Vec3{y.x * wr_r - y.y * wt_r, y.y * wr_r + y.x * wt_r,
                            (*prof.Omega_z)(std::max(r, prof.grid.r0),
                                            std::clamp(z, z_lo, z_hi))};
            });
    }
    if (p.P) {
        const AxiField P = *p.P;
        cart.P = ScalarField::analytic("axisym:P", [P](const Vec3& y) {
            return P(std::hypot(y.x, y.y), y.z);
        });
    }
    // reference cube covering the meridional grid
    const double half = std::max({p.grid.r_max(), std::fabs(p.grid.z0), p.grid.z_max()});
    const int n = std::max(p.grid.nr, p.grid.nz) | 1;  // odd: keep a node at 0
    cart.grid = Grid3::cube(std::min(n, 65), half);
    return cart;
}

}  // namespace ssguard::axisym
