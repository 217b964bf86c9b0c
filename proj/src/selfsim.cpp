#include "ssguard/selfsim.hpp"

#include <cmath>

#include "ssguard/calculus.hpp"
#include "ssguard/parallel.hpp"
#include "ssguard/quadrature.hpp"

namespace ssguard::selfsim {

std::string residual_name(ResidualKind k, double p) {
    switch (k) {
        case ResidualKind::velocity: return "res.velocity";
        case ResidualKind::vorticity: return "res.vorticity";
        case ResidualKind::lp_identity: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "res.lp.%g", p);
            return buf;
        }
        case ResidualKind::divergence: return "res.div";
    }
    return "res";
}

ScalarField recover_pressure(const Profile& p, double pad_factor, double* gauge_shell_mean) {
    p.require_gamma();
    if (p.gamma >= 1.0)
        throw Error("pressure recovery requires gamma < 1 (decaying velocity)");
    return calculus::pressure_from_velocity(p.U, p.grid, pad_factor, gauge_shell_mean);
}

namespace {

struct InteriorNorms {
    double sup = 0.0, l2 = 0.0;
};

InteriorNorms interior_norms(const Grid3& g, const std::vector<double>& mag) {
    InteriorNorms n;
    double sum = 0.0;
    std::size_t count = 0;
    for (int i = 0; i < g.dims[0]; ++i)
        for (int j = 0; j < g.dims[1]; ++j)
            for (int k = 0; k < g.dims[2]; ++k) {
                if (!g.interior(i, j, k)) continue;
                const double m = mag[g.index(i, j, k)];
                n.sup = std::max(n.sup, m);
                sum += m * m;
                ++count;
            }
    const double cell = g.spacing.x * g.spacing.y * g.spacing.z;
    n.l2 = count ? std::sqrt(sum * cell) : 0.0;
    return n;
}

ResidualField make_residual(const Profile& prof, ResidualKind kind, double lp_p,
                            const ScalarField* P, bool recovered,
                            const ScalarField* omega_pow = nullptr) {
    const Grid3& g = prof.grid;
    ResidualField rf;
    rf.kind = kind;
    rf.p = lp_p;
    rf.grid = g;
    rf.magnitude.assign(g.size(), 0.0);
    rf.used_recovered_pressure = recovered;
    const double gamma = prof.gamma;

    parallel_for_each(static_cast<std::size_t>(g.dims[0]), [&](std::size_t ii) {
        const int i = static_cast<int>(ii);
        for (int j = 0; j < g.dims[1]; ++j)
            for (int k = 0; k < g.dims[2]; ++k) {
                const Vec3 y = g.point(i, j, k);
                double mag = 0.0;
                switch (kind) {
                    case ResidualKind::velocity: {
                        const Vec3 u = prof.U(y);
                        const Mat3 gu = prof.U.gradient(y);
                        const Vec3 adv = gu * (y * gamma + u);
                        const Vec3 gp = P ? P->gradient(y) : Vec3{};
                        mag = (u * (1.0 - gamma) + adv + gp).norm();
                        break;
                    }
                    case ResidualKind::vorticity: {
                        const Vec3 w = (*prof.Omega)(y);
                        const Mat3 gw = prof.Omega->gradient(y);
                        const Mat3 gu = prof.U.gradient(y);
                        const Vec3 lhs = w + gw * (y * gamma + prof.U(y));
                        const Vec3 rhs = gu * w;
                        mag = (lhs - rhs).norm();
                        break;
                    }
                    case ResidualKind::lp_identity: {
                        const Vec3 w = (*prof.Omega)(y);
                        const double m = w.norm();
                        if (m <= 1e-12) break;  // direction undefined, skip
                        const Mat3 gu = prof.U.gradient(y);
                        const Vec3 V = y * gamma + prof.U(y);
                        const double mp = std::pow(m, lp_p);
                        double transport;
                        if (omega_pow) {
                            // sampled route: stencil gradient of the |Omega|^p grid
                            transport = V.dot(omega_pow->gradient(y)) / lp_p;
                        } else {
                            // chain rule through the vorticity gradient
                            const Mat3 gw = prof.Omega->gradient(y);
                            transport = std::pow(m, lp_p - 2.0) * w.dot(gw * V);
                        }
                        const double stretch = std::pow(m, lp_p - 2.0) * w.dot(gu * w);
                        mag = std::fabs(mp + transport - stretch);
                        break;
                    }
                    case ResidualKind::divergence:
                        mag = std::fabs(prof.U.gradient(y).trace());
                        break;
                }
                rf.magnitude[g.index(i, j, k)] = mag;
            }
    });
    const auto n = interior_norms(g, rf.magnitude);
    rf.interior_sup = n.sup;
    rf.interior_l2 = n.l2;
    return rf;
}

}  // namespace

std::vector<ResidualField> selfsim_residual(const Profile& p, ResidualKind which,
                                            double lp_exponent) {
    p.require_gamma();
    if ((which == ResidualKind::vorticity || which == ResidualKind::lp_identity) && !p.Omega)
        throw Error("residual requires a vorticity profile");

    std::optional<ScalarField> recovered;
    const ScalarField* P = nullptr;
    bool used_recovered = false;
    if (which == ResidualKind::velocity) {
        if (p.P) {
            P = &*p.P;
        } else {
            recovered = recover_pressure(p);
            P = &*recovered;
            used_recovered = true;
        }
    }

    // sampled vorticity: differentiate the |Omega|^p grid itself rather than
    // chaining through grad Omega (keeps the identity check two-route)
    std::optional<ScalarField> omega_pow;
    if (which == ResidualKind::lp_identity && p.Omega->is_sampled()) {
        const Grid3& g = *p.Omega->grid();
        std::vector<double> mp(g.size());
        for (int i = 0; i < g.dims[0]; ++i)
            for (int j = 0; j < g.dims[1]; ++j)
                for (int k = 0; k < g.dims[2]; ++k)
                    mp[g.index(i, j, k)] =
                        std::pow((*p.Omega)(g.point(i, j, k)).norm(), lp_exponent);
        omega_pow = ScalarField::sampled(g, std::move(mp), 3);
    }

    std::vector<ResidualField> out;
    out.push_back(make_residual(p, which, lp_exponent, P, used_recovered,
                                omega_pow ? &*omega_pow : nullptr));
    if (which != ResidualKind::divergence)
        out.push_back(make_residual(p, ResidualKind::divergence, lp_exponent, nullptr, false));
    return out;
}

BernoulliData bernoulli(const Profile& p) {
    p.require_gamma();
    const double gamma = p.gamma;

    std::optional<ScalarField> pressure = p.P;
    bool recovered = false;
    if (!pressure) {
        pressure = recover_pressure(p);
        recovered = true;
    }

    const VectorField U = p.U;
    const ScalarField P = *pressure;
    auto H_value = [U, P, gamma](const Vec3& y) {
        const Vec3 V = y * gamma + U(y);
        return 0.5 * V.norm2() + P(y) + 0.5 * gamma * (gamma - 1.0) * y.norm2();
    };
    auto H_grad = [U, P, gamma](const Vec3& y) {
        const Vec3 V = y * gamma + U(y);
        Mat3 gv = U.gradient(y);
        gv(0, 0) += gamma;
        gv(1, 1) += gamma;
        gv(2, 2) += gamma;
        // grad(|V|^2/2) = (grad V)^T V
        const Vec3 gkin = gv.contract_left_right(V);
        return gkin + P.gradient(y) + y * (gamma * (gamma - 1.0));
    };

    BernoulliData data;
    data.used_recovered_pressure = recovered;
    data.H = ScalarField::analytic("bernoulli", H_value, H_grad);
    const ScalarField H = data.H;
    data.transport_residual =
        ScalarField::analytic("bernoulli-transport", [U, H, gamma](const Vec3& y) {
            const Vec3 V = y * gamma + U(y);
            return V.dot(H.gradient(y)) - (2.0 * gamma - 1.0) * V.norm2();
        });

    const Grid3& g = p.grid;
    double sup = 0.0;
    for (int i = 0; i < g.dims[0]; ++i)
        for (int j = 0; j < g.dims[1]; ++j)
            for (int k = 0; k < g.dims[2]; ++k) {
                if (!g.interior(i, j, k)) continue;
                sup = std::max(sup, std::fabs(data.transport_residual(g.point(i, j, k))));
            }
    data.transport_interior_sup = sup;

    // far-field quadratic coefficient: shell means of H fitted against r^2
    const Vec3 hi = g.max_corner();
    const double rin = std::min({std::min(-g.origin.x, hi.x), std::min(-g.origin.y, hi.y),
                                 std::min(-g.origin.z, hi.z)});
    const auto dirs = quadrature::fibonacci_sphere(128);
    std::vector<double> r2s, means;
    for (double fr : {0.80, 0.85, 0.90, 0.95, 1.0}) {
        const double r = fr * rin;
        double mean = 0.0;
        for (const Vec3& d : dirs) mean += data.H(d * r);
        mean /= static_cast<double>(dirs.size());
        r2s.push_back(r * r);
        means.push_back(mean);
    }
    data.farfield_coeff = quadrature::fit_line(r2s, means).slope;
    data.farfield_expected = 0.5 * gamma * (2.0 * gamma - 1.0);
    return data;
}

double r_flat(double c_flat, double gamma) {
    if (c_flat < 0.0) throw Error("c_flat must be nonnegative");
    if (!(gamma > 0.0)) throw Error("gamma must be positive");
    return std::max(1.0, std::pow(2.0 * c_flat / gamma, gamma));
}

}  // namespace ssguard::selfsim
