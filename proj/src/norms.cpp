#include "ssguard/norms.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "ssguard/calculus.hpp"
#include "ssguard/kernels.hpp"
#include "ssguard/parallel.hpp"
#include "ssguard/quadrature.hpp"

namespace ssguard {

namespace {

void axis_weights(const Grid3& g, int axis, std::vector<double>& w, NormRequest::Rule rule) {
    const int n = g.dims[axis];
    w.assign(n, 1.0);
    if (rule == NormRequest::Rule::trapezoid && g.boundary != BoundaryPolicy::periodic)
        w[0] = w[n - 1] = 0.5;
}

std::vector<double> node_weights(const Grid3& g, NormRequest::Rule rule) {
    std::vector<double> wx, wy, wz;
    axis_weights(g, 0, wx, rule);
    axis_weights(g, 1, wy, rule);
    axis_weights(g, 2, wz, rule);
    const double cell = g.spacing.x * g.spacing.y * g.spacing.z;
    std::vector<double> w(g.size());
    for (int i = 0; i < g.dims[0]; ++i)
        for (int j = 0; j < g.dims[1]; ++j)
            for (int k = 0; k < g.dims[2]; ++k)
                w[g.index(i, j, k)] = cell * wx[i] * wy[j] * wz[k];
    return w;
}

struct TailFit {
    double contribution_p = 0.0;  // added to the integral of |f|^p
    double q = 0.0;               // fitted decay exponent
    bool divergent = false;
    bool active = false;
};

/// Fits |f| ~ C r^-q on the three outermost inscribed shells and integrates
/// the continuation beyond the box.
template <class FieldT>
TailFit fit_tail(const FieldT& f, const Grid3& g, double p, double sup_scale) {
    TailFit t;
    const Vec3 hi = g.max_corner();
    const double rin =
        std::min({std::min(-g.origin.x, hi.x), std::min(-g.origin.y, hi.y),
                  std::min(-g.origin.z, hi.z)});
    if (!(rin > 0.0)) return t;  // box does not enclose the origin; no radial model
    const double fracs[3] = {0.8, 0.9, 1.0};
    std::vector<double> lr, lm;
    double m_outer = 0.0;
    for (double fr : fracs) {
        const double r = fr * rin;
        const double m = shell_max(f, r, 256);
        m_outer = m;
        if (m <= 1e-14 * std::max(sup_scale, 1e-300)) return t;  // negligible shells
        lr.push_back(std::log(r));
        lm.push_back(std::log(m));
    }
    const auto fit = quadrature::fit_line(lr, lm);
    t.active = true;
    t.q = -fit.slope;
    if (t.q * p <= 3.0 + 0.02) {
        t.divergent = true;
        return t;
    }
    // integral over r > rin of (m_outer (r/rin)^-q)^p r^2 dr times 4 pi
    t.contribution_p =
        4.0 * M_PI * std::pow(m_outer, p) * rin * rin * rin / (t.q * p - 3.0);
    return t;
}

template <class FieldT>
double magnitude_at(const FieldT& f, const Vec3& y) {
    if constexpr (std::is_same_v<FieldT, VectorField>)
        return f(y).norm();
    else
        return std::fabs(f(y));
}

template <class FieldT>
NormResult norm_impl(const FieldT& f, const Grid3& grid, const NormRequest& req) {
    req.validate();
    const Grid3& g = f.is_sampled() ? *f.grid() : grid;
    g.validate();

    if (req.kind == NormRequest::Kind::sup) {
        NormResult r;
        if constexpr (std::is_same_v<FieldT, VectorField>) {
            const auto s = sample_vector(f, g);
            r.value = std::sqrt(parallel_reduce<double>(
                g.size(), 0.0,
                [&](std::size_t b, std::size_t e) {
                    return kernels::reduce_max_sq3(s[0].data() + b, s[1].data() + b,
                                                   s[2].data() + b, e - b);
                },
                [](double a, double b) { return std::max(a, b); }));
        } else {
            const auto s = sample_scalar(f, g);
            r.value = parallel_reduce<double>(
                g.size(), 0.0,
                [&](std::size_t b, std::size_t e) {
                    return kernels::reduce_max_abs(s.data() + b, e - b);
                },
                [](double a, double b) { return std::max(a, b); });
        }
        return r;
    }

    if (req.kind == NormRequest::Kind::grad_sup) {
        NormResult r;
        if constexpr (std::is_same_v<FieldT, VectorField>) {
            r.value = grad_sup_norm(f, g);
        } else {
            r.value = std::sqrt(parallel_reduce<double>(
                g.size(), 0.0,
                [&](std::size_t b, std::size_t e) {
                    double m = 0.0;
                    for (std::size_t i = b; i < e; ++i) {
                        const int nk = g.dims[2], nj = g.dims[1];
                        const int k = static_cast<int>(i % nk);
                        const int j = static_cast<int>((i / nk) % nj);
                        const int ii = static_cast<int>(i / (static_cast<std::size_t>(nj) * nk));
                        m = std::max(m, f.gradient(g.point(ii, j, k)).norm2());
                    }
                    return m;
                },
                [](double a, double b) { return std::max(a, b); }));
        }
        return r;
    }

    if (req.kind == NormRequest::Kind::holder) {
        // max over sampled pairs within distance L0 of |f(x)-f(y)| / |x-y|^mu
        const int wx = std::max(1, static_cast<int>(std::floor(req.L0 / g.spacing.x)));
        const int wy = std::max(1, static_cast<int>(std::floor(req.L0 / g.spacing.y)));
        const int wz = std::max(1, static_cast<int>(std::floor(req.L0 / g.spacing.z)));
        std::vector<double> mag;  // |f| is not enough for vectors; store components
        std::array<std::vector<double>, 3> comp;
        if constexpr (std::is_same_v<FieldT, VectorField>)
            comp = sample_vector(f, g);
        else
            comp[0] = sample_scalar(f, g);
        const double L0sq = req.L0 * req.L0;
        NormResult r;
        r.value = parallel_reduce<double>(
            static_cast<std::size_t>(g.dims[0]), 0.0,
            [&](std::size_t ib, std::size_t ie) {
                double best = 0.0;
                for (std::size_t i = ib; i < ie; ++i)
                    for (int j = 0; j < g.dims[1]; ++j)
                        for (int k = 0; k < g.dims[2]; ++k) {
                            const std::size_t idx = g.index(static_cast<int>(i), j, k);
                            for (int di = 0; di <= wx; ++di) {
                                if (static_cast<int>(i) + di >= g.dims[0]) break;
                                const int jlo = di == 0 ? 0 : -wy;
                                for (int dj = jlo; dj <= wy; ++dj) {
                                    const int jj = j + dj;
                                    if (jj < 0 || jj >= g.dims[1]) continue;
                                    const int klo = (di == 0 && dj == 0) ? 1 : -wz;
                                    for (int dk = klo; dk <= wz; ++dk) {
                                        const int kk = k + dk;
                                        if (kk < 0 || kk >= g.dims[2]) continue;
                                        const double dsq = di * di * g.spacing.x * g.spacing.x +
                                                           dj * dj * g.spacing.y * g.spacing.y +
                                                           dk * dk * g.spacing.z * g.spacing.z;
                                        if (dsq > L0sq || dsq == 0.0) continue;
                                        const std::size_t jdx =
                                            g.index(static_cast<int>(i) + di, jj, kk);
                                        double diff2 = 0.0;
                                        if constexpr (std::is_same_v<FieldT, VectorField>) {
                                            for (int c = 0; c < 3; ++c) {
                                                const double d = comp[c][idx] - comp[c][jdx];
                                                diff2 += d * d;
                                            }
                                        } else {
                                            const double d = comp[0][idx] - comp[0][jdx];
                                            diff2 = d * d;
                                        }
                                        const double ratio =
                                            std::sqrt(diff2) / std::pow(dsq, 0.5 * req.mu);
                                        best = std::max(best, ratio);
                                    }
                                }
                            }
                        }
                return best;
            },
            [](double a, double b) { return std::max(a, b); });
        return r;
    }

    // Lp
    const auto w = node_weights(g, req.rule);
    double sum_p = 0.0;
    double sup = 0.0;
    if constexpr (std::is_same_v<FieldT, VectorField>) {
        const auto s = sample_vector(f, g);
        sup = std::sqrt(parallel_reduce<double>(
            g.size(), 0.0,
            [&](std::size_t b, std::size_t e) {
                return kernels::reduce_max_sq3(s[0].data() + b, s[1].data() + b,
                                               s[2].data() + b, e - b);
            },
            [](double a, double b) { return std::max(a, b); }));
        if (req.p == 2.0) {
            sum_p = parallel_reduce<double>(
                g.size(), 0.0,
                [&](std::size_t b, std::size_t e) {
                    return kernels::reduce_weighted_sq3(s[0].data() + b, s[1].data() + b,
                                                        s[2].data() + b, w.data() + b, e - b);
                },
                [](double a, double b) { return a + b; });
        } else {
            sum_p = parallel_reduce<double>(
                g.size(), 0.0,
                [&](std::size_t b, std::size_t e) {
                    double acc = 0.0;
                    for (std::size_t i = b; i < e; ++i) {
                        const double m2 = s[0][i] * s[0][i] + s[1][i] * s[1][i] +
                                          s[2][i] * s[2][i];
                        acc += w[i] * std::pow(m2, 0.5 * req.p);
                    }
                    return acc;
                },
                [](double a, double b) { return a + b; });
        }
    } else {
        const auto s = sample_scalar(f, g);
        sup = parallel_reduce<double>(
            g.size(), 0.0,
            [&](std::size_t b, std::size_t e) {
                return kernels::reduce_max_abs(s.data() + b, e - b);
            },
            [](double a, double b) { return std::max(a, b); });
        sum_p = parallel_reduce<double>(
            g.size(), 0.0,
            [&](std::size_t b, std::size_t e) {
                double acc = 0.0;
                for (std::size_t i = b; i < e; ++i)
                    acc += w[i] * std::pow(std::fabs(s[i]), req.p);
                return acc;
            },
            [](double a, double b) { return a + b; });
    }
    NormResult r;
    if (g.boundary != BoundaryPolicy::periodic) {
        const TailFit tail = fit_tail(f, g, req.p, sup);
        if (tail.divergent)
            throw Error("Lp tail divergent: fitted decay exponent q=" +
                        std::to_string(tail.q) + " gives q*p <= 3 (non-integrable)");
        r.fitted_decay = tail.q;
        r.value = std::pow(sum_p + tail.contribution_p, 1.0 / req.p);
        r.tail_estimate = r.value - std::pow(sum_p, 1.0 / req.p);
    } else {
        r.value = std::pow(sum_p, 1.0 / req.p);
    }
    return r;
}

}  // namespace

void NormRequest::validate() const {
    if (kind == Kind::lp && !(p >= 1.0)) throw Error("Lp norm requires p >= 1");
    if (kind == Kind::holder) {
        if (!(mu > 0.0 && mu < 1.0)) throw Error("holder seminorm requires 0 < mu < 1");
        if (!(L0 > 0.0)) throw Error("holder seminorm requires L0 > 0");
    }
}

NormResult field_norm(const ScalarField& f, const Grid3& grid, const NormRequest& req) {
    return norm_impl(f, grid, req);
}
NormResult field_norm(const VectorField& f, const Grid3& grid, const NormRequest& req) {
    return norm_impl(f, grid, req);
}

double grad_sup_norm(const VectorField& f, const Grid3& grid) {
    const Grid3& g = f.is_sampled() ? *f.grid() : grid;
    const double max_sq = parallel_reduce<double>(
        static_cast<std::size_t>(g.dims[0]), 0.0,
        [&](std::size_t ib, std::size_t ie) {
            double m = 0.0;
            for (std::size_t i = ib; i < ie; ++i)
                for (int j = 0; j < g.dims[1]; ++j)
                    for (int k = 0; k < g.dims[2]; ++k) {
                        const Mat3 gm = f.gradient(g.point(static_cast<int>(i), j, k));
                        m = std::max(m, gm.row[0].norm2() + gm.row[1].norm2() +
                                            gm.row[2].norm2());
                    }
            return m;
        },
        [](double a, double b) { return std::max(a, b); });
    return std::sqrt(max_sq);
}

double shell_max(const VectorField& f, double radius, int ndirs) {
    const auto dirs = quadrature::fibonacci_sphere(ndirs);
    double m = 0.0;
    for (const Vec3& d : dirs) m = std::max(m, f(d * radius).norm2());
    return std::sqrt(m);
}

double shell_max(const ScalarField& f, double radius, int ndirs) {
    const auto dirs = quadrature::fibonacci_sphere(ndirs);
    double m = 0.0;
    for (const Vec3& d : dirs) m = std::max(m, std::fabs(f(d * radius)));
    return m;
}

}  // namespace ssguard
