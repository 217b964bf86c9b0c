#include "ssguard/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssguard/norms.hpp"
#include "ssguard/parallel.hpp"
#include "ssguard/quadrature.hpp"

namespace ssguard::flow {

Vec3 transport_velocity(const Profile& p, const Vec3& y) { return y * p.gamma + p.U(y); }

Mat3 transport_gradient(const Profile& p, const Vec3& y) {
    Mat3 g = p.U.gradient(y);
    g(0, 0) += p.gamma;
    g(1, 1) += p.gamma;
    g(2, 2) += p.gamma;
    return g;
}

std::vector<Trajectory> integrate_flow(const Profile& p, const std::vector<Vec3>& labels,
                                       const std::vector<double>& tau_samples, double rtol,
                                       double atol) {
    p.require_gamma();
    if (tau_samples.empty()) throw Error("tau samples must be nonempty");
    for (std::size_t i = 1; i < tau_samples.size(); ++i)
        if (tau_samples[i] == tau_samples[i - 1])
            throw Error("tau samples must be strictly monotone");

    std::vector<Trajectory> out(labels.size());
    parallel_for_each(labels.size(), [&](std::size_t li) {
        Trajectory& tr = out[li];
        tr.label = labels[li];
        using State = std::array<double, 12>;  // position + row-major Jacobian
        ode::DormandPrince<12> integrator(
            [&p](double, const State& s, State& ds) {
                const Vec3 y{s[0], s[1], s[2]};
                const Vec3 v = transport_velocity(p, y);
                const Mat3 gv = transport_gradient(p, y);
                ds[0] = v.x;
                ds[1] = v.y;
                ds[2] = v.z;
                // dJ/dtau = gradV * J
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        double acc = 0.0;
                        for (int k = 0; k < 3; ++k) acc += gv(i, k) * s[3 + 3 * k + j];
                        ds[3 + 3 * i + j] = acc;
                    }
            },
            rtol, atol);
        State s0{};
        s0[0] = tr.label.x;
        s0[1] = tr.label.y;
        s0[2] = tr.label.z;
        s0[3] = s0[7] = s0[11] = 1.0;
        tr.stats = integrator.integrate(0.0, s0, tau_samples, [&](double t, const State& s) {
            tr.tau.push_back(t);
            tr.position.push_back({s[0], s[1], s[2]});
            Mat3 j;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) j(a, b) = s[3 + 3 * a + b];
            if (!(j.det() > 0.0))
                throw Error("flow map Jacobian lost positivity (integration failure)");
            tr.jacobian.push_back(j);
        });
    });
    return out;
}

ReportEntry jacobian_det_check(const Profile& p, const std::vector<Trajectory>& trajs,
                               double tol) {
    double worst = 0.0;
    for (const auto& tr : trajs)
        for (std::size_t i = 0; i < tr.tau.size(); ++i) {
            const double expected = std::exp(3.0 * p.gamma * tr.tau[i]);
            worst = std::max(worst, std::fabs(tr.jacobian[i].det() - expected) / expected);
        }
    return check_entry("flow.det", "det(grad_a Y) = exp(3 gamma tau)", worst, tol);
}

ReportEntry cauchy_check(const Profile& p, const std::vector<Trajectory>& trajs) {
    if (!p.Omega) throw Error("cauchy check requires a vorticity profile");
    double worst = 0.0, scale = 0.0;
    for (const auto& tr : trajs) {
        const Vec3 w0 = (*p.Omega)(tr.label);
        scale = std::max(scale, w0.norm());
        for (std::size_t i = 0; i < tr.tau.size(); ++i) {
            const Vec3 lhs = (*p.Omega)(tr.position[i]);
            const Vec3 rhs =
                (tr.jacobian[i] * w0) * std::exp(-(p.gamma + 1.0) * tr.tau[i]);
            worst = std::max(worst, (lhs - rhs).norm());
        }
    }
    auto e = info_entry("flow.cauchy", "Omega(Y) = e^{-(1+gamma) tau} (grad_a Y) Omega(a)",
                        worst / std::max(scale, 1e-300));
    e.note = "meaningful at the vorticity-residual level of the profile";
    return e;
}

ReportEntry weber_check(const Profile& p, const Vec3& base_label, double patch_delta,
                        const std::vector<double>& tau_samples, double tol) {
    // 5x5x5 label patch; discrete curl of W over labels must vanish
    const int n = 5;
    std::vector<Vec3> labels;
    labels.reserve(n * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                labels.push_back(base_label + Vec3{(i - 2) * patch_delta,
                                                   (j - 2) * patch_delta,
                                                   (k - 2) * patch_delta});
    const auto trajs = integrate_flow(p, labels, tau_samples);
    auto at = [&](int i, int j, int k) -> const Trajectory& {
        return trajs[(static_cast<std::size_t>(i) * n + j) * n + k];
    };
    double worst = 0.0;
    for (std::size_t s = 0; s < tau_samples.size(); ++s) {
        const double factor = std::exp((1.0 - 2.0 * p.gamma) * trajs[0].tau[s]);
        auto W = [&](int i, int j, int k) {
            const Trajectory& tr = at(i, j, k);
            const Vec3 uy = p.U(tr.position[s]);
            return tr.jacobian[s].contract_left_right(uy) * factor - p.U(tr.label);
        };
        // central differences at the patch center
        const double inv2d = 1.0 / (2.0 * patch_delta);
        const Vec3 dWx = (W(3, 2, 2) - W(1, 2, 2)) * inv2d;
        const Vec3 dWy = (W(2, 3, 2) - W(2, 1, 2)) * inv2d;
        const Vec3 dWz = (W(2, 2, 3) - W(2, 2, 1)) * inv2d;
        const Vec3 curl{dWy.z - dWz.y, dWz.x - dWx.z, dWx.y - dWy.x};
        worst = std::max(worst, curl.norm());
    }
    return check_entry("flow.weber",
                       "curl_a of e^{(1-2 gamma) tau} (grad_a Y)^T U(Y) - U(a) = 0", worst,
                       tol);
}

namespace {

bool segments_cross_projected(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d,
                              const Vec3& e1, const Vec3& e2) {
    auto orient = [&](const Vec3& p0, const Vec3& p1, const Vec3& p2) {
        const double x1 = (p1 - p0).dot(e1), y1 = (p1 - p0).dot(e2);
        const double x2 = (p2 - p0).dot(e1), y2 = (p2 - p0).dot(e2);
        return x1 * y2 - y1 * x2;
    };
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

}  // namespace

void Loop::validate() const {
    if (vertices.size() < 17) throw Error("loop needs at least 16 points (closed polyline)");
    if ((vertices.front() - vertices.back()).norm() > 1e-12)
        throw Error("loop must be closed (first vertex = last)");
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        for (std::size_t j = i + 1; j + 1 < vertices.size(); ++j)
            if ((vertices[i] - vertices[j]).norm() < 1e-12)
                throw Error("loop has coincident vertices (not simple)");
    // pairwise segment test in the loop's dominant plane (Newell normal)
    Vec3 normal{};
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        normal += vertices[i].cross(vertices[i + 1]);
    if (normal.norm() < 1e-14) return;  // degenerate projection; skip the planar test
    const Vec3 n = normal.normalized();
    const Vec3 e1 = (std::fabs(n.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0}).cross(n).normalized();
    const Vec3 e2 = n.cross(e1);
    const std::size_t m = vertices.size() - 1;  // segments
    for (std::size_t i = 0; i + 1 < m; ++i)
        for (std::size_t j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1) continue;  // shared endpoint through closure
            if (segments_cross_projected(vertices[i], vertices[i + 1], vertices[j],
                                         vertices[j + 1], e1, e2))
                throw Error("loop self-intersects (not simple)");
        }
}

Loop circle_loop(double r, double z, int n) {
    if (n < 16) throw Error("circle loop needs n >= 16");
    Loop loop;
    loop.vertices.reserve(n + 1);
    for (int i = 0; i < n; ++i) {
        const double phi = 2.0 * M_PI * i / n;
        loop.vertices.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    loop.vertices.push_back(loop.vertices.front());
    return loop;
}

namespace {

double polyline_circulation(const Profile& p, const std::vector<Vec3>& verts) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
        const Vec3 seg = verts[i + 1] - verts[i];
        acc += 0.5 * (p.U(verts[i]) + p.U(verts[i + 1])).dot(seg);
    }
    return acc;
}

bool segments_intersect_xy(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    auto orient = [](const Vec3& p0, const Vec3& p1, const Vec3& p2) {
        return (p1.x - p0.x) * (p2.y - p0.y) - (p1.y - p0.y) * (p2.x - p0.x);
    };
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

}  // namespace

CirculationResult circulation_check(const Profile& p, const Loop& loop,
                                    const std::vector<double>& tau_samples, double tol) {
    loop.validate();
    std::vector<Vec3> labels(loop.vertices.begin(), loop.vertices.end() - 1);
    const auto trajs = integrate_flow(p, labels, tau_samples);

    CirculationResult res;
    const double gamma0 = polyline_circulation(p, loop.vertices);
    const double floor = 1e-10;
    res.tau.push_back(0.0);
    res.gamma_ss.push_back(gamma0);
    double worst = 0.0;
    for (std::size_t s = 0; s < tau_samples.size(); ++s) {
        std::vector<Vec3> verts;
        verts.reserve(labels.size() + 1);
        for (const auto& tr : trajs) verts.push_back(tr.position[s]);
        verts.push_back(verts.front());
        const double g = polyline_circulation(p, verts);
        res.tau.push_back(trajs[0].tau[s]);
        res.gamma_ss.push_back(g);
        const double factor = std::exp((1.0 - 2.0 * p.gamma) * trajs[0].tau[s]);
        worst = std::max(worst,
                         std::fabs(factor * g - gamma0) / std::max(std::fabs(gamma0), floor));
        for (std::size_t i = 0; i + 1 < verts.size() && !res.self_intersected; ++i)
            for (std::size_t j = i + 2; j + 1 < verts.size(); ++j) {
                if (i == 0 && j + 2 == verts.size()) continue;  // shared endpoint
                if (segments_intersect_xy(verts[i], verts[i + 1], verts[j], verts[j + 1])) {
                    res.self_intersected = true;
                    break;
                }
            }
    }
    res.entry = check_entry("flow.circulation",
                            "e^{(1-2 gamma) tau} circulation(U, C(tau)) is conserved", worst,
                            tol);
    if (res.self_intersected)
        res.entry.note = "loop self-intersects after advection (xy projection); "
                         "circulation remains defined";
    return res;
}

namespace {

bool newton_refine(const Profile& p, Vec3& y, double fd_h) {
    for (int it = 0; it < 80; ++it) {
        const Vec3 v = transport_velocity(p, y);
        Mat3 j = transport_gradient(p, y);
        if (!std::isfinite(j.det()) || std::fabs(j.det()) < 1e-14) {
            // finite-difference Jacobian near degenerate points
            for (int a = 0; a < 3; ++a) {
                Vec3 yp = y, ym = y;
                yp[a] += fd_h;
                ym[a] -= fd_h;
                const Vec3 dv = (transport_velocity(p, yp) - transport_velocity(p, ym)) /
                                (2.0 * fd_h);
                for (int c = 0; c < 3; ++c) j(c, a) = dv[c];
            }
            if (std::fabs(j.det()) < 1e-14) return false;
        }
        Vec3 step = j.inverse() * v;
        // backtracking guards against Newton cycles on non-monotone |V|
        const double v0 = v.norm();
        Vec3 y_new = y - step;
        for (int bt = 0; bt < 5 && transport_velocity(p, y_new).norm() > v0; ++bt) {
            step *= 0.5;
            y_new = y - step;
        }
        y = y_new;
        if (step.norm() < 1e-14 * (1.0 + y.norm())) break;
    }
    return transport_velocity(p, y).norm() < 1e-10;
}

NodalPoint examine_point(const Profile& p, const Vec3& y, double direction_floor) {
    NodalPoint np;
    np.y = y;
    np.v_norm = transport_velocity(p, y).norm();
    const Mat3 s = p.U.gradient(y).sym();
    np.strain_eigs = sym3_eigenvalues(s);
    if (p.Omega) {
        np.omega = (*p.Omega)(y);
        np.omega_nonzero = np.omega.norm() > direction_floor;
    }
    return np;
}

}  // namespace

NodalResult nodal_set(const Profile& p, const NodalOptions& opt) {
    p.require_gamma();
    NodalResult res;
    double c_flat = p.c_flat.value_or(0.0);
    if (!p.c_flat) {
        try {
            c_flat = decay_envelope(p).c_flat;
        } catch (const Error& e) {
            res.warnings.push_back(std::string("decay envelope unavailable: ") + e.what());
        }
    }
    res.r_flat = selfsim::r_flat(c_flat, p.gamma);
    const double seed_threshold =
        std::max(opt.seed_factor * p.gamma * res.r_flat, 1e-14);

    // lattice scan: local minima of |V| are Newton seeds; the threshold is the
    // acceptance cut for refined points
    const int n = opt.scan_per_axis;
    const double R = res.r_flat;
    std::vector<double> vmag(static_cast<std::size_t>(n) * n * n,
                             std::numeric_limits<double>::infinity());
    auto lat = [&](int i) { return -R + 2.0 * R * i / (n - 1); };
    auto id = [&](int i, int j, int k) {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    };
    parallel_for_each(static_cast<std::size_t>(n), [&](std::size_t ii) {
        const int i = static_cast<int>(ii);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Vec3 y{lat(i), lat(j), lat(k)};
                if (y.norm() > R) continue;
                vmag[id(i, j, k)] = transport_velocity(p, y).norm();
            }
    });
    std::vector<std::pair<double, Vec3>> candidates;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double v = vmag[id(i, j, k)];
                if (!std::isfinite(v)) continue;
                bool is_min = true;
                for (int di = -1; di <= 1 && is_min; ++di)
                    for (int dj = -1; dj <= 1 && is_min; ++dj)
                        for (int dk = -1; dk <= 1; ++dk) {
                            const int a = i + di, b = j + dj, c = k + dk;
                            if (a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n)
                                continue;
                            if (vmag[id(a, b, c)] < v) {
                                is_min = false;
                                break;
                            }
                        }
                if (is_min) candidates.emplace_back(v, Vec3{lat(i), lat(j), lat(k)});
            }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (candidates.size() > 200) candidates.resize(200);
    std::vector<Vec3> seeds;
    for (const auto& [v, y] : candidates) seeds.push_back(y);

    const double fd_h = 1e-6 * std::max(1.0, R);
    std::vector<Vec3> found;
    // profiles obeying the U(0) = 0 normalization always have the origin as a
    // nodal point; others (e.g. a ring with self-induced axial flow) get the
    // origin only as a Newton seed
    if (transport_velocity(p, {0, 0, 0}).norm() <= seed_threshold)
        found.push_back({0, 0, 0});
    else
        seeds.insert(seeds.begin(), Vec3{0, 0, 0});
    std::size_t dropped = 0;
    for (const Vec3& seed : seeds) {
        Vec3 y = seed;
        if (!newton_refine(p, y, fd_h)) {
            ++dropped;
            continue;
        }
        if (y.norm() > R + opt.dedup) continue;  // refined outside the escape ball
        bool dup = false;
        for (const Vec3& f : found)
            if ((y - f).norm() < opt.dedup) {
                dup = true;
                break;
            }
        if (!dup) found.push_back(y);
        if (static_cast<int>(found.size()) > opt.max_points) {
            res.possibly_non_isolated = true;
            break;
        }
    }
    if (dropped)
        res.warnings.push_back(std::to_string(dropped) +
                               " seeds dropped (no Newton convergence)");

    std::sort(found.begin(), found.end(),
              [](const Vec3& a, const Vec3& b) { return a.norm() < b.norm(); });
    const double direction_floor =
        p.Omega ? 1e-12 * field_norm(*p.Omega, p.grid, NormRequest::sup()).value : 0.0;
    for (const Vec3& y : found) res.points.push_back(examine_point(p, y, direction_floor));
    return res;
}

NodalPoint outgoing_certificate(const Profile& p, const NodalPoint& point, double eps_star,
                                const Tolerances& tol,
                                const std::vector<NodalPoint>* neighbors) {
    NodalPoint np = point;
    np.eps_star = eps_star;
    const Vec3 y0 = point.y;
    if (neighbors)
        for (const auto& other : *neighbors) {
            const double d = (other.y - y0).norm();
            if (d > 1e-12 && d <= eps_star)
                throw Error("eps_star reaches another nodal point; shrink requested");
        }

    const auto dirs = quadrature::fibonacci_sphere(512);
    double cmin = std::numeric_limits<double>::infinity();
    for (double frac : {0.125, 0.25, 0.5, 1.0}) {
        const double r = frac * eps_star;
        auto q_of = [&](const Vec3& d) {
            const Vec3 y = y0 + d * r;
            return transport_velocity(p, y).dot(y - y0) / (r * r);
        };
        Vec3 best_d = dirs[0];
        double best_q = q_of(best_d);
        for (const Vec3& d : dirs) {
            const double q = q_of(d);
            if (q < best_q) {
                best_q = q;
                best_d = d;
            }
        }
        // polish the worst direction with a shrinking tangent pattern search
        double step = 0.2;
        while (step > 1e-7) {
            const Vec3 t1 = (std::fabs(best_d.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0})
                                .cross(best_d)
                                .normalized();
            const Vec3 t2 = best_d.cross(t1);
            bool improved = false;
            for (const Vec3& delta :
                 {t1 * step, t1 * -step, t2 * step, t2 * -step,
                  (t1 + t2) * (step * 0.7071), (t1 - t2) * (step * 0.7071),
                  (t1 + t2) * (-step * 0.7071), (t1 - t2) * (-step * 0.7071)}) {
                const Vec3 d = (best_d + delta).normalized();
                const double q = q_of(d);
                if (q < best_q) {
                    best_q = q;
                    best_d = d;
                    improved = true;
                }
            }
            if (!improved) step *= 0.4;
        }
        cmin = std::min(cmin, best_q);
    }
    np.outgoing_holds = cmin >= 0.0;
    np.c_star = std::max(cmin, 0.0);

    if (p.Omega && np.omega_nonzero) {
        const Vec3 xi = np.omega.normalized();
        const Mat3 s = p.U.gradient(y0).sym();
        const double mismatch = (s * xi - xi).norm();
        np.eigenpair_ok = mismatch <= tol.scaled(tol.eigenpair_abs);
        if (np.outgoing_holds) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "gamma >= 1/2 + %.6g (empirical certificate)",
                          *np.c_star);
            np.implied = buf;
        }
    }
    if (!np.outgoing_holds) np.implied = "outgoing property FAILS at this nodal point";
    return np;
}

VanishingOrder vanishing_order(const Profile& p, const Vec3& y_star, double cap) {
    if (!p.Omega) throw Error("vanishing order requires a vorticity profile");
    const double sup = field_norm(*p.Omega, p.grid, NormRequest::sup());
    const double at_star = (*p.Omega)(y_star).norm();
    if (at_star > 1e-6 * sup)
        throw Error("order 0: |Omega(y*)| is above threshold (not a vanishing point)");

    const auto dirs = quadrature::fibonacci_sphere(128);
    std::vector<double> lr, lm;
    for (int i = 0; i < 12; ++i) {
        const double r = 1e-3 * std::pow(100.0, i / 11.0);  // 1e-3 .. 1e-1
        double m = 0.0;
        for (const Vec3& d : dirs) m = std::max(m, (*p.Omega)(y_star + d * r).norm());
        if (m <= 0.0) continue;
        lr.push_back(std::log(r));
        lm.push_back(std::log(m));
    }
    VanishingOrder vo;
    if (lr.size() < 4) {
        vo.infinite_order = true;  // shells are identically zero
        vo.order = std::numeric_limits<double>::infinity();
        return vo;
    }
    const auto fit = quadrature::fit_line(lr, lm);
    vo.order = fit.slope;
    vo.fit_rms = fit.rms_residual;
    vo.infinite_order = fit.slope > cap;
    return vo;
}

ReportEntry bernoulli_monotonicity_check(const Profile& p,
                                         const selfsim::BernoulliData& bern,
                                         const std::vector<Trajectory>& trajs, double tol) {
    double identity_worst = 0.0;
    double monotone_violation = 0.0;
    const bool decreasing = p.gamma < 0.5;
    for (const auto& tr : trajs) {
        double prev_h = bern.H(tr.label);
        double prev_tau = 0.0;
        for (std::size_t i = 0; i < tr.tau.size(); ++i) {
            const Vec3 y = tr.position[i];
            const double h = bern.H(y);
            identity_worst = std::max(identity_worst, std::fabs(bern.transport_residual(y)));
            const double dtau = tr.tau[i] - prev_tau;
            if (dtau > 0.0 && p.gamma != 0.5) {
                const double dh = h - prev_h;
                if (decreasing) monotone_violation = std::max(monotone_violation, dh);
                else monotone_violation = std::max(monotone_violation, -dh);
            }
            prev_h = h;
            prev_tau = tr.tau[i];
        }
    }
    auto e = check_entry("flow.bernoulli",
                         "dH/dtau = (2 gamma - 1)|V(Y)|^2 along trajectories",
                         identity_worst, tol);
    if (p.gamma != 0.5 && monotone_violation > tol) {
        e.verdict = Verdict::FAIL;
        e.note = decreasing ? "H increased along a trajectory despite gamma < 1/2"
                            : "H decreased along a trajectory despite gamma > 1/2";
    }
    return e;
}

ReportEntry escape_envelope_check(const Profile& p, double r_flat_value,
                                  const std::vector<Trajectory>& trajs) {
    double worst = 0.0;
    bool monotone = true;
    for (const auto& tr : trajs) {
        const double a = tr.label.norm();
        if (a < r_flat_value) continue;
        double prev = a;
        for (std::size_t i = 0; i < tr.tau.size(); ++i) {
            if (tr.tau[i] < 0.0) continue;
            const double r = tr.position[i].norm();
            const double lo = a * std::exp(0.5 * p.gamma * tr.tau[i]);
            const double hi = a * std::exp(1.5 * p.gamma * tr.tau[i]);
            worst = std::max({worst, (lo - r) / lo, (r - hi) / hi});
            if (r <= prev) monotone = false;
            prev = r;
        }
    }
    auto e = check_entry(
        "flow.escape",
        "|a| e^{gamma tau/2} <= |Y| <= |a| e^{3 gamma tau/2} for |a| >= R_flat",
        std::max(worst, 0.0), 1e-8);
    if (!monotone) {
        e.verdict = Verdict::FAIL;
        e.note = "|Y| not strictly increasing for an outer label";
    }
    return e;
}

}  // namespace ssguard::flow
