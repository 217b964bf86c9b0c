#pragma once

#include <string>
#include <vector>

#include "ssguard/grid.hpp"

namespace ssguard::criteria {

/// Exponent lower bound p/(p+3) for bounded-in-time L^p velocity, p >= 2.
double gamma_lower_bound(double p);

struct TimeSeries {
    std::vector<double> t;    // strictly increasing, strictly below t_star
    std::vector<double> v;    // nonnegative
    double t_star = 1.0;
    void validate() const;
};

enum class EllMuVerdict { regularity, blowup_consistent, inconclusive };
std::string verdict_text(EllMuVerdict v);

struct EllMuResult {
    std::vector<double> ell;        // the length scale series
    double integral = 0.0;          // trapezoid of ell^{-5/2} up to the last sample
    double fit_exponent = 0.0;      // beta in ell ~ (t*-t)^beta near t*
    double fit_band = 0.0;          // uncertainty band on beta from the fit residual
    bool divergent = false;         // continuation of the integral diverges
    EllMuVerdict verdict = EllMuVerdict::inconclusive;
};

/// ell_mu(t) = min(L0, (holder/energy)^{-2/(2 mu + 5)}); the time integral of
/// ell^{-5/2} stays finite exactly when the fitted near-t* exponent is below
/// 2/5. A fit band straddling the critical exponent yields "inconclusive".
EllMuResult ell_mu_criterion(const TimeSeries& holder, const TimeSeries& energy, double mu,
                             double L0);

struct AlphaBoundResult {
    std::vector<double> bound;       // optimized pointwise bound per sample
    std::vector<double> r_star;      // minimizing cutoff radius per sample
    double integral = 0.0;           // trapezoid (blowup requires divergence)
};

/// Minimizes B(R) = c_in R G(t) + c_out R^{-1-3/p} E(t) over R > 0 per sample
/// (golden-section search cross-checked against the closed-form minimizer).
AlphaBoundResult alpha_pointwise_bound(const TimeSeries& gradw, const TimeSeries& up,
                                       double p, double c_in = 1.0, double c_out = 1.0);

struct ViscousResult {
    bool finite = false;
    double bound = 0.0;   // 16 (Gamma + C^4/(6 gamma - 3)) when finite
    std::string verdict;
};

/// L4-in-time L2 budget for the split vorticity: finite exactly when
/// gamma > 1/2 (pole at gamma = 1/2).
ViscousResult viscous_criterion(double Gamma, double C, double gamma);

}  // namespace ssguard::criteria
