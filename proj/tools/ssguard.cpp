// ssguard: numerical guardrail checks for candidate self-similar blowup
// profiles of incompressible 3D Euler. See README.md for the check catalog.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ssguard/axisym.hpp"
#include "ssguard/criteria.hpp"
#include "ssguard/fixtures.hpp"
#include "ssguard/flow.hpp"
#include "ssguard/norms.hpp"
#include "ssguard/quadrature.hpp"
#include "ssguard/selfsim.hpp"
#include "ssguard/ssp_io.hpp"
#include "ssguard/stretching.hpp"

using namespace ssguard;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

ReportEntry timed(ReportEntry e, const Timer& t) {
    e.wall_ms = t.ms();
    return e;
}

std::vector<double> parse_tau_span(const std::string& spec, int samples, bool backward) {
    double a = 0.0, b = 0.0;
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw Error("tau span must be a:b");
    a = std::stod(spec.substr(0, colon));
    b = std::stod(spec.substr(colon + 1));
    if (backward && b > a) std::swap(a, b);
    if (a == b) throw Error("tau span must be nondegenerate");
    std::vector<double> taus;
    for (int i = 1; i <= samples; ++i) taus.push_back(a + (b - a) * i / samples);
    return taus;
}

void emit(const DiagnosticReport& rep, const std::string& out_path) {
    if (out_path.empty()) {
        rep.write(std::cout);
    } else {
        std::ofstream f(out_path);
        if (!f) throw Error("cannot write report: " + out_path);
        rep.write(f);
        std::cout << "report written to " << out_path << "\n";
    }
}

std::string meta_of(const Profile& p) {
    std::ostringstream ss;
    ss << "gamma=" << p.gamma << " symmetry="
       << (p.symmetry == Symmetry::axisym ? "axisym" : "cartesian") << " grid="
       << p.grid.dims[0] << "x" << p.grid.dims[1] << "x" << p.grid.dims[2];
    if (!p.source.empty()) ss << " source=" << p.source;
    return ss.str();
}

std::string meta_of(const axisym::AxisymProfile& p) {
    std::ostringstream ss;
    ss << "gamma=" << p.gamma << " symmetry=axisym grid=" << p.grid.nr << "x" << p.grid.nz
       << "x1";
    if (!p.source.empty()) ss << " source=" << p.source;
    return ss.str();
}

std::vector<Vec3> auto_points(const Profile& p, int count) {
    // deterministic interior points away from the boundary third
    std::vector<Vec3> pts;
    const Grid3& g = p.grid;
    const auto dirs = quadrature::fibonacci_sphere(count);
    const Vec3 hi = g.max_corner();
    const double rin = 0.45 * std::min({hi.x - g.origin.x, hi.y - g.origin.y,
                                        hi.z - g.origin.z});
    for (int i = 0; i < count; ++i) pts.push_back(dirs[i] * (rin * (0.2 + 0.75 * i / count)));
    return pts;
}

void append_axisym_battery(DiagnosticReport& rep, const axisym::AxisymProfile& ap,
                           const Tolerances& tols) {
    for (auto& e : axisym::validate_axisym(ap, tols)) rep.add(e);
    {
        Timer t;
        for (const auto& rf : axisym::axisym_residual(ap)) {
            // swirl/continuity are exact identities for candidate solutions;
            // meridional momentum residuals flag non-solutions
            rep.add(timed(check_entry(rf.name, "stationary cylindrical system residual",
                                      rf.interior_sup, tols.scaled(tols.residual_abs)),
                          t));
        }
    }
    {
        Timer t;
        const auto fps = axisym::meridional_fixed_points(ap);
        auto e = info_entry("axisym.fixed_points", "zeros of (gamma r + U_r, gamma z + U_z)",
                            static_cast<double>(fps.size()));
        std::string note;
        for (const auto& fp : fps) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "(%.6g, %.6g)%s%s ", fp.r, fp.z,
                          fp.on_axis ? " axis" : " off-axis",
                          fp.verdict.empty() ? "" : (" | " + fp.verdict).c_str());
            note += buf;
        }
        e.note = note;
        rep.add(timed(std::move(e), t));
        for (const auto& fp : fps) {
            if (!fp.verdict.empty()) {
                auto v = info_entry("axisym.swirl_fixed_point",
                                    "swirl at a meridional fixed point pins the exponent",
                                    fp.u_theta, fp.verdict);
                v.verdict = fp.verdict.find("inconsistent") != std::string::npos
                                ? Verdict::FAIL
                                : Verdict::INFO;
                rep.add(v);
            }
        }
    }
    // tau spans that keep trajectories inside the sampled (r, z) box: the
    // outward drift is at least gamma, so cap tau by the room to the boundary
    auto tau_inside = [&](double r_start) {
        const double room = 0.9 * ap.grid.r_max() / std::max(r_start, 1e-6);
        return std::clamp(std::log(std::max(room, 1.01)) / (2.0 * ap.gamma), 0.05, 1.5);
    };
    {
        Timer t;
        std::vector<std::pair<double, double>> poly;
        const double rmid = ap.grid.r0 + 0.45 * (ap.grid.r_max() - ap.grid.r0);
        const double rad = 0.15 * (ap.grid.r_max() - ap.grid.r0);
        for (int i = 0; i <= 48; ++i) {
            const double th = 2.0 * M_PI * i / 48;
            poly.emplace_back(rmid + rad * std::cos(th), rad * std::sin(th));
        }
        const double tmax = tau_inside(rmid + rad);
        try {
            rep.add(timed(axisym::area_growth_check(ap, poly, {0.5 * tmax, tmax},
                                                    tols.scaled(tols.area_rel)),
                          t));
        } catch (const Error& e) {
            auto entry = info_entry("axisym.area", "weighted-area growth", 0.0, e.what());
            entry.verdict = Verdict::INCONCLUSIVE;
            rep.add(timed(std::move(entry), t));
        }
    }
    {
        Timer t;
        const double r_lo = std::max(ap.grid.r0 + 0.3 * (ap.grid.r_max() - ap.grid.r0), 1e-3);
        const double r_hi = 0.5 * (r_lo + ap.grid.r_max());
        std::vector<std::pair<double, double>> seeds{{r_lo, 0.0}, {r_hi, 0.0}};
        const double tmax = tau_inside(r_hi);
        try {
            rep.add(timed(axisym::axisym_invariant_check(
                              ap, axisym::InvariantKind::swirl, seeds,
                              {tmax / 3, 2 * tmax / 3, tmax},
                              tols.scaled(tols.invariant_rel)),
                          t));
        } catch (const Error& e) {
            auto entry =
                info_entry("axisym.invariant.swirl", "transported swirl", 0.0, e.what());
            entry.verdict = Verdict::INCONCLUSIVE;
            rep.add(timed(std::move(entry), t));
        }
    }
}

void append_cartesian_battery(DiagnosticReport& rep, const Profile& p,
                              const Tolerances& tols) {
    for (auto& e : validate_profile(p, tols)) rep.add(e);

    {
        Timer t;
        if (p.Omega) {
            const double sup = field_norm(*p.Omega, p.grid, NormRequest::sup());
            rep.add(timed(info_entry("norm.omega_sup", "sup |Omega|", sup), t));
            const double gsup = grad_sup_norm(*p.Omega, p.grid);
            rep.add(info_entry("norm.grad_omega_sup", "sup |grad Omega| (unit normalization)",
                               gsup));
        }
    }
    {
        Timer t;
        try {
            const auto env = decay_envelope(p);
            auto e = info_entry("envelope.c_flat",
                                "smallest C with |U| <= C |y|<y>^{-1/g}, "
                                "|Omega|+|grad U| <= C <y>^{-1/g}",
                                env.c_flat);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "attained at |y| = %.4g", env.attained_radius);
            e.note = buf;
            rep.add(timed(std::move(e), t));
        } catch (const Error& e) {
            auto entry = info_entry("envelope.c_flat", "decay envelope", 0.0, e.what());
            entry.verdict = Verdict::FAIL;
            rep.add(timed(std::move(entry), t));
        }
    }

    bool saw_div = false;
    for (auto kind : {selfsim::ResidualKind::velocity, selfsim::ResidualKind::vorticity,
                      selfsim::ResidualKind::lp_identity}) {
        if (kind != selfsim::ResidualKind::velocity && !p.Omega) continue;
        Timer t;
        try {
            const auto res = selfsim_residual(p, kind, 2.0);
            for (const auto& rf : res) {
                if (rf.kind == selfsim::ResidualKind::divergence) {
                    if (saw_div) continue;
                    saw_div = true;
                }
                auto e = check_entry(residual_name(rf.kind, rf.p),
                                     "stationary self-similar equation residual",
                                     rf.interior_sup, tols.scaled(tols.residual_abs));
                if (rf.used_recovered_pressure) e.note = "pressure recovered (Riesz form)";
                rep.add(timed(std::move(e), t));
            }
        } catch (const Error& e) {
            auto entry = info_entry(residual_name(kind), "residual", 0.0, e.what());
            entry.verdict = Verdict::INCONCLUSIVE;
            rep.add(timed(std::move(entry), t));
        }
    }

    {
        Timer t;
        try {
            const auto b = selfsim::bernoulli(p);
            rep.add(timed(check_entry("bernoulli.transport",
                                      "V . grad H = (2 gamma - 1)|V|^2",
                                      b.transport_interior_sup,
                                      tols.scaled(tols.residual_abs)),
                          t));
            rep.add(check_entry("bernoulli.farfield",
                                "H ~ gamma(2 gamma - 1)|y|^2/2 at large |y|",
                                std::fabs(b.farfield_coeff - b.farfield_expected),
                                tols.scaled(1e-2)));
        } catch (const Error& e) {
            auto entry = info_entry("bernoulli.transport", "Bernoulli data", 0.0, e.what());
            entry.verdict = Verdict::INCONCLUSIVE;
            rep.add(timed(std::move(entry), t));
        }
    }

    if (p.Omega) {
        Timer t;
        try {
            const auto am = stretching::argmax_stretching_check(p);
            auto e = check_entry("stretch.argmax", "A(argmax |Omega|) = 1", am.residual,
                                 tols.scaled(tols.argmax_residual));
            char buf[96];
            std::snprintf(buf, sizeof(buf), "A = %.6g at (%.4g, %.4g, %.4g)", am.a_value,
                          am.y_star.x, am.y_star.y, am.y_star.z);
            e.note = buf;
            rep.add(timed(std::move(e), t));
        } catch (const Error& e) {
            auto entry = info_entry("stretch.argmax", "A at the vorticity maximum", 0.0,
                                    e.what());
            entry.verdict = Verdict::INCONCLUSIVE;
            rep.add(timed(std::move(entry), t));
        }
        Timer t2;
        try {
            if (field_norm(*p.Omega, p.grid, NormRequest::sup()).value == 0.0)
                throw Error("zero vorticity profile: the smallness bound constrains "
                            "nontrivial profiles only");
            const double psm = std::max(2.0, 3.0 * p.gamma + 0.5);
            const auto sm = stretching::smallness_check(p, psm);
            auto e = info_entry("stretch.smallness",
                                "scaling-invariant size >= 1/C_p for profiles", sm.size);
            char buf[128];
            std::snprintf(buf, sizeof(buf), "p = %.3g threshold = %.6g verdict = %s", sm.p,
                          sm.threshold, sm.satisfied ? "SATISFIED" : "VIOLATED");
            e.note = buf;
            e.verdict = sm.satisfied ? Verdict::PASS : Verdict::FAIL;
            e.residual = sm.satisfied ? 0.0 : sm.threshold - sm.size;
            e.tol = 0.0;
            rep.add(timed(std::move(e), t2));
        } catch (const Error& e) {
            auto entry = info_entry("stretch.smallness", "smallness bound", 0.0, e.what());
            entry.verdict = Verdict::INCONCLUSIVE;
            rep.add(entry);
        }
    }

    {
        Timer t;
        const auto labels = auto_points(p, 6);
        const std::vector<double> taus{0.5, 1.0, 1.5, 2.0};
        const auto trajs =
            flow::integrate_flow(p, labels, taus, tols.ode_rtol, tols.ode_atol);
        rep.add(timed(flow::jacobian_det_check(p, trajs, tols.scaled(tols.det_rel)), t));
        if (p.Omega) rep.add(flow::cauchy_check(p, trajs));
        Timer t2;
        rep.add(timed(flow::weber_check(p, labels[0], 0.05, taus,
                                        tols.scaled(10 * tols.det_rel)),
                      t2));
    }
    {
        Timer t;
        const double rad =
            0.3 * std::min({p.grid.max_corner().x, p.grid.max_corner().y,
                            p.grid.max_corner().z});
        const auto res = flow::circulation_check(p, flow::circle_loop(rad, 0.0, 64),
                                                 {0.5, 1.0, 1.5},
                                                 tols.scaled(tols.circulation_rel));
        rep.add(timed(res.entry, t));
    }
    {
        Timer t;
        auto nres = flow::nodal_set(p);
        auto e = info_entry("nodal.count", "zeros of V = gamma y + U inside B_Rflat",
                            static_cast<double>(nres.points.size()));
        char buf[64];
        std::snprintf(buf, sizeof(buf), "R_flat = %.6g", nres.r_flat);
        e.note = buf;
        rep.add(timed(std::move(e), t));
        for (auto& np : nres.points) {
            double eps = 0.25 * nres.r_flat;
            flow::NodalPoint cert;
            for (int attempt = 0;; ++attempt) {
                try {
                    cert = flow::outgoing_certificate(p, np, eps, tols, &nres.points);
                    break;
                } catch (const Error&) {
                    if (attempt >= 6) throw;
                    eps *= 0.5;  // radius reached another nodal point: shrink
                }
            }
            auto ce = info_entry("nodal.outgoing", "V(y).(y - y*) >= c |y - y*|^2 near y*",
                                 cert.c_star.value_or(0.0));
            char nb[160];
            std::snprintf(nb, sizeof(nb), "y* = (%.4g, %.4g, %.4g) %s%s", np.y.x, np.y.y,
                          np.y.z, cert.outgoing_holds ? "holds" : "FAILS",
                          cert.implied.empty() ? "" : (" | " + cert.implied).c_str());
            ce.note = nb;
            rep.add(ce);
        }
        const double trace_worst = [&] {
            double w = 0.0;
            for (const auto& np : nres.points)
                w = std::max(w, std::fabs(np.strain_eigs[0] + np.strain_eigs[1] +
                                          np.strain_eigs[2]));
            return w;
        }();
        rep.add(check_entry("nodal.trace", "strain eigenvalues sum to 0 (incompressible)",
                            trace_worst, tols.scaled(1e-6)));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"guardrail diagnostics for candidate self-similar Euler blowup profiles"};
    app.require_subcommand(1);
    std::string out_path;

    // ---- check
    auto* cmd_check = app.add_subcommand("check", "run the full applicable battery");
    std::string check_file;
    double gamma_override = 0.0, tol_scale = 1.0;
    cmd_check->add_option("file", check_file, "ssp-1 profile file")->required();
    cmd_check->add_option("--gamma-override", gamma_override, "override the header gamma");
    cmd_check->add_option("--tol-scale", tol_scale, "scale all check tolerances");
    cmd_check->add_option("-o,--output", out_path, "write the report to a file");

    // ---- residual
    auto* cmd_res = app.add_subcommand("residual", "self-similar equation residuals");
    std::string res_file, res_which = "velocity";
    double res_p = 2.0;
    cmd_res->add_option("file", res_file)->required();
    cmd_res->add_option("--which", res_which, "velocity|vorticity|lp|div");
    cmd_res->add_option("--p", res_p, "exponent for the lp identity");
    cmd_res->add_option("-o,--output", out_path);

    // ---- stretching
    auto* cmd_st = app.add_subcommand("stretching", "vortex-stretching factor");
    std::string st_file, st_points = "auto";
    double st_L = 0.5, st_p = 2.0;
    int st_quad = 16;
    cmd_st->add_option("file", st_file)->required();
    cmd_st->add_option("--points", st_points, "points file or 'auto'");
    cmd_st->add_option("--L", st_L, "cutoff length");
    cmd_st->add_option("--p", st_p, "tail exponent");
    cmd_st->add_option("--quad-order", st_quad, "polar quadrature order");
    cmd_st->add_option("-o,--output", out_path);

    // ---- flow
    auto* cmd_flow = app.add_subcommand("flow", "Lagrangian trajectories and identities");
    std::string flow_file, flow_seeds = "auto", flow_tau = "0:2";
    bool flow_backward = false;
    int flow_samples = 8;
    cmd_flow->add_option("file", flow_file)->required();
    cmd_flow->add_option("--seeds", flow_seeds, "seeds file or 'auto'");
    cmd_flow->add_option("--tau", flow_tau, "tau span a:b");
    cmd_flow->add_option("--samples", flow_samples, "output samples");
    cmd_flow->add_flag("--backward", flow_backward, "integrate backward");
    cmd_flow->add_option("-o,--output", out_path);

    // ---- nodal
    auto* cmd_nodal = app.add_subcommand("nodal", "stagnation points of V");
    std::string nodal_file;
    double eps_star = 0.0;
    cmd_nodal->add_option("file", nodal_file)->required();
    cmd_nodal->add_option("--eps-star", eps_star, "certificate radius (default R_flat/4)");
    cmd_nodal->add_option("-o,--output", out_path);

    // ---- circulation
    auto* cmd_circ = app.add_subcommand("circulation", "Kelvin circulation drift");
    std::string circ_file, circ_loop, circ_tau = "0:2";
    std::vector<double> circ_circle;
    cmd_circ->add_option("file", circ_file)->required();
    cmd_circ->add_option("--loop", circ_loop, "loop vertex file (one point per line)");
    cmd_circ->add_option("--circle", circ_circle, "r z n")->expected(3);
    cmd_circ->add_option("--tau", circ_tau, "tau span a:b");
    cmd_circ->add_option("-o,--output", out_path);

    // ---- axisym
    auto* cmd_axi = app.add_subcommand("axisym", "meridional-plane diagnostics");
    std::string axi_file, axi_action;
    double axi_r0 = 1.0, axi_z0 = 0.0, axi_tau_min = -20.0;
    cmd_axi->add_option("file", axi_file)->required();
    cmd_axi->add_option("action", axi_action,
                        "residual|flow|fixed-points|area|invariants|alpha-limit")
        ->required();
    cmd_axi->add_option("--r0", axi_r0, "alpha-limit seed r0");
    cmd_axi->add_option("--z0", axi_z0, "alpha-limit seed z0");
    cmd_axi->add_option("--tau-min", axi_tau_min, "alpha-limit backward horizon");
    cmd_axi->add_option("-o,--output", out_path);

    // ---- criteria
    auto* cmd_crit = app.add_subcommand("criteria", "closed-form exponent criteria");
    double crit_gamma_bound_p = 0.0;
    std::vector<std::string> crit_ell;
    std::vector<std::string> crit_alpha;
    std::vector<double> crit_viscous;
    double crit_mu = 0.5, crit_L0 = 1.0, crit_tstar = 1.0, crit_p = 2.0, crit_cin = 1.0,
           crit_cout = 1.0;
    cmd_crit->add_option("--gamma-bound", crit_gamma_bound_p, "print p/(p+3) for this p");
    cmd_crit->add_option("--ell-mu", crit_ell, "holder.txt energy.txt")->expected(2);
    cmd_crit->add_option("--mu", crit_mu);
    cmd_crit->add_option("--L0", crit_L0);
    cmd_crit->add_option("--tstar", crit_tstar);
    cmd_crit->add_option("--alpha-bound", crit_alpha, "gradw.txt up.txt")->expected(2);
    cmd_crit->add_option("--p", crit_p);
    cmd_crit->add_option("--c-in", crit_cin);
    cmd_crit->add_option("--c-out", crit_cout);
    cmd_crit->add_option("--viscous", crit_viscous, "Gamma C gamma")->expected(3);

    // ---- fixture
    auto* cmd_fix = app.add_subcommand("fixture", "write a synthetic profile file");
    std::string fix_family, fix_out;
    std::vector<std::string> fix_params;
    cmd_fix->add_option("family", fix_family,
                        "trivial|gaussian-column|gaussian-ring|burgers|linear-strain|"
                        "manufactured-swirl|off-axis-zero")
        ->required();
    cmd_fix->add_option("--param", fix_params, "name=value (repeatable)");
    cmd_fix->add_option("-o,--output", fix_out, "output ssp file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Tolerances tols;

        if (*cmd_check) {
            tols.scale = tol_scale;
            DiagnosticReport rep;
            if (io::file_is_axisym(check_file)) {
                auto ap = io::load_axisym(check_file);
                if (gamma_override > 0.0) ap.gamma = gamma_override;
                rep.profile_meta = meta_of(ap);
                append_axisym_battery(rep, ap, tols);
            } else {
                auto p = io::load_profile(check_file);
                if (gamma_override > 0.0) p.gamma = gamma_override;
                rep.profile_meta = meta_of(p);
                append_cartesian_battery(rep, p, tols);
            }
            emit(rep, out_path);
            return rep.exit_code();
        }

        if (*cmd_res) {
            const auto p = io::load_profile(res_file);
            DiagnosticReport rep;
            rep.profile_meta = meta_of(p);
            selfsim::ResidualKind kind = selfsim::ResidualKind::velocity;
            if (res_which == "vorticity") kind = selfsim::ResidualKind::vorticity;
            else if (res_which == "lp") kind = selfsim::ResidualKind::lp_identity;
            else if (res_which == "div") kind = selfsim::ResidualKind::divergence;
            else if (res_which != "velocity") throw Error("unknown --which: " + res_which);
            Timer t;
            for (const auto& rf : selfsim::selfsim_residual(p, kind, res_p)) {
                auto e = check_entry(selfsim::residual_name(rf.kind, rf.p),
                                     "stationary self-similar equation residual",
                                     rf.interior_sup, tols.scaled(tols.residual_abs));
                char buf[64];
                std::snprintf(buf, sizeof(buf), "interior L2 = %.6g", rf.interior_l2);
                e.note = buf;
                rep.add(timed(std::move(e), t));
            }
            emit(rep, out_path);
            return rep.exit_code();
        }

        if (*cmd_st) {
            const auto p = io::load_profile(st_file);
            DiagnosticReport rep;
            rep.profile_meta = meta_of(p);
            std::vector<Vec3> pts = st_points == "auto" ? auto_points(p, 5)
                                                        : io::load_points(st_points);
            stretching::IntegralOptions opt;
            opt.n_polar = st_quad;
            opt.n_azimuth = 2 * st_quad;
            for (const Vec3& y : pts) {
                Timer t;
                try {
                    const auto r = stretching::stretching_integral(p, y, st_L, st_p, opt);
                    auto e = info_entry("stretch.integral",
                                        "A(y) from the subtracted singular integral",
                                        r.a_integral);
                    char buf[200];
                    std::snprintf(buf, sizeof(buf),
                                  "y=(%.3g,%.3g,%.3g) in=%.6g out=%.6g err=%.2g direct=%s",
                                  y.x, y.y, y.z, r.alpha_in, r.alpha_out, r.quad_error,
                                  r.a_direct ? std::to_string(*r.a_direct).c_str() : "n/a");
                    e.note = buf;
                    rep.add(timed(std::move(e), t));
                } catch (const Error& e) {
                    auto entry = info_entry("stretch.integral", "A(y)", 0.0, e.what());
                    entry.verdict = Verdict::INCONCLUSIVE;
                    rep.add(timed(std::move(entry), t));
                }
            }
            emit(rep, out_path);
            return rep.exit_code();
        }

        if (*cmd_flow) {
            const auto p = io::load_profile(flow_file);
            DiagnosticReport rep;
            rep.profile_meta = meta_of(p);
            const auto taus = parse_tau_span(flow_tau, flow_samples, flow_backward);
            const auto labels = flow_seeds == "auto" ? auto_points(p, 6)
                                                     : io::load_points(flow_seeds);
            Timer t;
            const auto trajs =
                flow::integrate_flow(p, labels, taus, tols.ode_rtol, tols.ode_atol);
            rep.add(timed(flow::jacobian_det_check(p, trajs, tols.scaled(tols.det_rel)), t));
            if (p.Omega) rep.add(flow::cauchy_check(p, trajs));
            if (!flow_backward)
                rep.add(flow::weber_check(p, labels[0], 0.05, taus,
                                          tols.scaled(10 * tols.det_rel)));
            emit(rep, out_path);
            return rep.exit_code();
        }

        if (*cmd_nodal) {
            const auto p = io::load_profile(nodal_file);
            DiagnosticReport rep;
            rep.profile_meta = meta_of(p);
            Timer t;
            auto res = flow::nodal_set(p);
            auto e = info_entry("nodal.count", "zeros of V inside B_Rflat",
                                static_cast<double>(res.points.size()));
            char buf[64];
            std::snprintf(buf, sizeof(buf), "R_flat = %.6g", res.r_flat);
            e.note = buf;
            rep.add(timed(std::move(e), t));
            const double eps0 = eps_star > 0.0 ? eps_star : 0.25 * res.r_flat;
            for (const auto& np : res.points) {
                double eps = eps0;
                flow::NodalPoint cert;
                for (int attempt = 0;; ++attempt) {
                    try {
                        cert = flow::outgoing_certificate(p, np, eps, tols, &res.points);
                        break;
                    } catch (const Error&) {
                        if (attempt >= 6) throw;
                        eps *= 0.5;  // radius reached another nodal point: shrink
                    }
                }
                auto ce = info_entry("nodal.outgoing", "local outgoing certificate",
                                     cert.c_star.value_or(0.0));
                char nb[200];
                std::snprintf(nb, sizeof(nb),
                              "y*=(%.6g,%.6g,%.6g) |V|=%.2g eigs=(%.4g,%.4g,%.4g) %s %s",
                              np.y.x, np.y.y, np.y.z, np.v_norm, np.strain_eigs[0],
                              np.strain_eigs[1], np.strain_eigs[2],
                              cert.outgoing_holds ? "holds" : "FAILS", cert.implied.c_str());
                ce.note = nb;
                rep.add(ce);
            }
            for (const auto& w : res.warnings) {
                auto we = info_entry("nodal.warning", "nodal search diagnostics", 0.0, w);
                we.verdict = Verdict::INCONCLUSIVE;
                rep.add(we);
            }
            emit(rep, out_path);
            return rep.exit_code();
        }

        if (*cmd_circ) {
            const auto p = io::load_profile(circ_file);
            DiagnosticReport rep;
            rep.profile_meta = meta_of(p);
            flow::Loop loop;
            if (!circ_circle.empty()) {
                loop = flow::circle_loop(circ_circle[0], circ_circle[1],
                                         static_cast<int>(circ_circle[2]));
            } else if (!circ_loop.empty()) {
                loop.vertices = io::load_points(circ_loop);
            } else {
                throw Error("circulation needs --loop or --circle");
            }
            const auto taus = parse_tau_span(circ_tau, 6, false);
            Timer t;
            auto res =
                flow::circulation_check(p, loop, taus, tols.scaled(tols.circulation_rel));
            rep.add(timed(res.entry, t));
            emit(rep, out_path);
            return rep.exit_code();
        }

        if (*cmd_axi) {
            const auto ap = io::load_axisym(axi_file);
            DiagnosticReport rep;
            rep.profile_meta = meta_of(ap);
            if (axi_action == "residual") {
                Timer t;
                for (const auto& rf : axisym::axisym_residual(ap))
                    rep.add(timed(check_entry(rf.name, "cylindrical residual",
                                              rf.interior_sup,
                                              tols.scaled(tols.residual_abs)),
                                  t));
            } else if (axi_action == "flow") {
                Timer t;
                const double rmid = ap.grid.r0 + 0.5 * (ap.grid.r_max() - ap.grid.r0);
                const auto trajs = axisym::meridional_flow(ap, {{rmid, 0.0}}, {0.5, 1.0});
                auto e = info_entry("axisym.flow", "meridional trajectory endpoint",
                                    std::hypot(trajs[0].R.back(), trajs[0].Z.back()));
                char buf[96];
                std::snprintf(buf, sizeof(buf), "(R,Z) = (%.6g, %.6g) theta = %.6g",
                              trajs[0].R.back(), trajs[0].Z.back(), trajs[0].Theta.back());
                e.note = buf;
                rep.add(timed(std::move(e), t));
            } else if (axi_action == "fixed-points") {
                Timer t;
                const auto fps = axisym::meridional_fixed_points(ap);
                for (const auto& fp : fps) {
                    auto e = info_entry("axisym.fixed_point", "gamma r + U_r = gamma z + U_z = 0",
                                        std::hypot(fp.r, fp.z));
                    char buf[200];
                    std::snprintf(buf, sizeof(buf),
                                  "(r,z)=(%.8g,%.8g)%s U_theta=%.6g circ=%.6g %s", fp.r,
                                  fp.z, fp.on_axis ? " axis" : "", fp.u_theta,
                                  fp.circulation, fp.verdict.c_str());
                    e.note = buf;
                    if (!fp.verdict.empty() &&
                        fp.verdict.find("inconsistent") != std::string::npos)
                        e.verdict = Verdict::FAIL;
                    rep.add(timed(std::move(e), t));
                }
            } else if (axi_action == "area") {
                Timer t;
                std::vector<std::pair<double, double>> poly;
                const double rmid = ap.grid.r0 + 0.55 * (ap.grid.r_max() - ap.grid.r0);
                const double rad = 0.2 * (ap.grid.r_max() - ap.grid.r0);
                for (int i = 0; i <= 48; ++i) {
                    const double th = 2.0 * M_PI * i / 48;
                    poly.emplace_back(rmid + rad * std::cos(th), rad * std::sin(th));
                }
                rep.add(timed(axisym::area_growth_check(ap, poly, {0.5, 1.0},
                                                        tols.scaled(tols.area_rel)),
                              t));
            } else if (axi_action == "invariants") {
                Timer t;
                const double r_lo =
                    std::max(ap.grid.r0 + 0.3 * (ap.grid.r_max() - ap.grid.r0), 1e-3);
                std::vector<std::pair<double, double>> seeds{{r_lo, 0.0}};
                rep.add(timed(
                    axisym::axisym_invariant_check(ap, axisym::InvariantKind::swirl, seeds,
                                                   {0.5, 1.0, 1.5},
                                                   tols.scaled(tols.invariant_rel)),
                    t));
                if (ap.Omega_theta) {
                    rep.add(axisym::axisym_invariant_check(
                        ap, axisym::InvariantKind::azimuthal_vorticity, seeds,
                        {0.5, 1.0, 1.5}, tols.scaled(tols.invariant_rel)));
                }
            } else if (axi_action == "alpha-limit") {
                Timer t;
                const auto res = axisym::backward_alpha_limit(ap, axi_r0, axi_z0, axi_tau_min);
                const char* kinds[] = {"axis-fixed-point", "off-axis-fixed-point", "cycling",
                                       "escaped", "undecided"};
                auto e = info_entry("axisym.alpha_limit",
                                    "backward trajectory alpha-limit surrogate",
                                    res.min_axis_distance);
                char buf[200];
                std::snprintf(buf, sizeof(buf), "%s at (%.6g, %.6g) %s",
                              kinds[static_cast<int>(res.kind)], res.fp_r, res.fp_z,
                              res.note.c_str());
                e.note = buf;
                rep.add(timed(std::move(e), t));
            } else {
                throw Error("unknown axisym action: " + axi_action);
            }
            emit(rep, out_path);
            return rep.exit_code();
        }

        if (*cmd_crit) {
            if (crit_gamma_bound_p > 0.0) {
                std::cout << criteria::gamma_lower_bound(crit_gamma_bound_p) << "\n";
                return 0;
            }
            if (!crit_ell.empty()) {
                const auto hs = io::load_series(crit_ell[0]);
                const auto es = io::load_series(crit_ell[1]);
                criteria::TimeSeries holder{hs.t, hs.v, crit_tstar};
                criteria::TimeSeries energy{es.t, es.v, crit_tstar};
                const auto res = criteria::ell_mu_criterion(holder, energy, crit_mu, crit_L0);
                std::cout << "integral " << res.integral << "\n";
                std::cout << "fit_exponent " << res.fit_exponent << " band " << res.fit_band
                          << "\n";
                std::cout << "verdict " << criteria::verdict_text(res.verdict) << "\n";
                return 0;
            }
            if (!crit_alpha.empty()) {
                const auto gs = io::load_series(crit_alpha[0]);
                const auto us = io::load_series(crit_alpha[1]);
                criteria::TimeSeries gradw{gs.t, gs.v, crit_tstar};
                criteria::TimeSeries up{us.t, us.v, crit_tstar};
                const auto res =
                    criteria::alpha_pointwise_bound(gradw, up, crit_p, crit_cin, crit_cout);
                std::cout << "integral " << res.integral << "\n";
                for (std::size_t i = 0; i < res.bound.size(); ++i)
                    std::cout << gradw.t[i] << " " << res.bound[i] << " " << res.r_star[i]
                              << "\n";
                return 0;
            }
            if (!crit_viscous.empty()) {
                const auto res = criteria::viscous_criterion(
                    crit_viscous[0], crit_viscous[1], crit_viscous[2]);
                if (res.finite)
                    std::cout << "bound " << res.bound << "\n";
                else
                    std::cout << "divergent\n";
                std::cout << res.verdict << "\n";
                return 0;
            }
            throw Error("criteria needs one of --gamma-bound, --ell-mu, --alpha-bound, "
                        "--viscous");
        }

        if (*cmd_fix) {
            std::map<std::string, double> params;
            for (const auto& kv : fix_params) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw Error("--param expects name=value");
                params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
            }
            if (!fixtures::family_known(fix_family))
                throw Error("unknown fixture family: " + fix_family);
            if (fixtures::family_is_axisym(fix_family)) {
                io::save_axisym(fixtures::build_axisym(fix_family, params), fix_out);
            } else {
                const auto p = fixtures::build_cartesian(fix_family, params);
                io::save_profile(fixtures::sampled_copy(p), fix_out);
            }
            std::cout << "wrote " << fix_out << "\n";
            std::cout << "expected outcomes: " << fixtures::expected_outcomes(fix_family)
                      << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
