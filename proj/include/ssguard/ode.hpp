#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "ssguard/grid.hpp"

namespace ssguard::ode {

struct StepStats {
    long steps = 0;
    long rejected = 0;
    double rtol = 0.0, atol = 0.0;
    bool truncated = false;   // stopped early (step-size underflow)
    double reached = 0.0;     // last accepted time
};

/// Adaptive Dormand–Prince 5(4). Integrates dy/dt = f(t, y) from t0 to t1
/// (either direction) and calls `observe(t, y)` at every requested output time
/// (linear Hermite-free sampling: integration steps land exactly on outputs).
template <std::size_t N>
class DormandPrince {
  public:
    using State = std::array<double, N>;
    using Rhs = std::function<void(double, const State&, State&)>;

    DormandPrince(Rhs f, double rtol = 1e-10, double atol = 1e-12)
        : f_(std::move(f)), rtol_(rtol), atol_(atol) {}

    /// Integrates to each time in `outputs` (strictly monotone, starting after
    /// t0). Returns stats; `observe` receives the state at each output time.
    StepStats integrate(double t0, const State& y0, const std::vector<double>& outputs,
                        const std::function<void(double, const State&)>& observe) {
        StepStats stats;
        stats.rtol = rtol_;
        stats.atol = atol_;
        State y = y0;
        double t = t0;
        stats.reached = t;
        for (double tout : outputs) {
            const double dir = tout > t ? 1.0 : -1.0;
            double h = dir * std::max(1e-6, 0.01 * std::fabs(tout - t));
            State k1;
            f_(t, y, k1);
            while (dir * (tout - t) > 0.0) {
                if (dir * (t + h - tout) > 0.0) h = tout - t;
                State y5, err;
                step(t, y, k1, h, y5, err);
                double err_norm = 0.0;
                for (std::size_t i = 0; i < N; ++i) {
                    const double sc = atol_ + rtol_ * std::max(std::fabs(y[i]), std::fabs(y5[i]));
                    err_norm = std::max(err_norm, std::fabs(err[i]) / sc);
                }
                if (err_norm <= 1.0) {
                    t += h;
                    y = y5;
                    f_(t, y, k1);  // FSAL not exploited; keep it simple
                    ++stats.steps;
                    stats.reached = t;
                } else {
                    ++stats.rejected;
                }
                const double factor =
                    std::clamp(0.9 * std::pow(std::max(err_norm, 1e-16), -0.2), 0.2, 5.0);
                h *= factor;
                if (std::fabs(h) < 1e-14 * (1.0 + std::fabs(t))) {
                    stats.truncated = true;
                    return stats;
                }
            }
            observe(t, y);
        }
        return stats;
    }

  private:
    void step(double t, const State& y, const State& k1, double h, State& y5, State& err) {
        constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        constexpr double a21 = 1.0 / 5;
        constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                         a54 = -212.0 / 729;
        constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                         a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                         b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                         e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

        State k2, k3, k4, k5, k6, k7, tmp;
        auto axpy = [&](State& out, const State& base,
                        std::initializer_list<std::pair<double, const State*>> terms) {
            for (std::size_t i = 0; i < N; ++i) {
                double acc = base[i];
                for (const auto& [c, k] : terms) acc += h * c * (*k)[i];
                out[i] = acc;
            }
        };
        axpy(tmp, y, {{a21, &k1}});
        f_(t + c2 * h, tmp, k2);
        axpy(tmp, y, {{a31, &k1}, {a32, &k2}});
        f_(t + c3 * h, tmp, k3);
        axpy(tmp, y, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
        f_(t + c4 * h, tmp, k4);
        axpy(tmp, y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
        f_(t + c5 * h, tmp, k5);
        axpy(tmp, y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
        f_(t + h, tmp, k6);
        axpy(y5, y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        f_(t + h, y5, k7);
        for (std::size_t i = 0; i < N; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * k7[i]);
    }

    Rhs f_;
    double rtol_, atol_;
};

}  // namespace ssguard::ode
