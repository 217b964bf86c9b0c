#include "ssguard/criteria.hpp"

#include <cmath>

#include "ssguard/quadrature.hpp"

namespace ssguard::criteria {

double gamma_lower_bound(double p) {
    if (!(p >= 2.0)) throw Error("gamma_lower_bound is stated for p >= 2");
    return p / (p + 3.0);
}

void TimeSeries::validate() const {
    if (t.size() != v.size() || t.size() < 2)
        throw Error("time series needs matching (t, v) with >= 2 samples");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i && !(t[i] > t[i - 1])) throw Error("times must be strictly increasing");
        if (!(t[i] < t_star)) throw Error("times must lie strictly below t_star");
        if (v[i] < 0.0) throw Error("series values must be nonnegative");
    }
}

EllMuResult ell_mu_criterion(const TimeSeries& holder, const TimeSeries& energy, double mu,
                             double L0) {
    holder.validate();
    energy.validate();
    if (!(mu > 0.0 && mu < 1.0)) throw Error("requires 0 < mu < 1");
    if (!(L0 > 0.0)) throw Error("requires L0 > 0");
    if (holder.t.size() != energy.t.size() || holder.t_star != energy.t_star)
        throw Error("series must share a time base");
    for (std::size_t i = 0; i < holder.t.size(); ++i) {
        if (holder.t[i] != energy.t[i]) throw Error("series must share a time base");
        if (energy.v[i] == 0.0) throw Error("energy series contains zeros");
    }

    EllMuResult res;
    const double expo = -2.0 / (2.0 * mu + 5.0);
    std::vector<double> integrand(holder.t.size());
    for (std::size_t i = 0; i < holder.t.size(); ++i) {
        const double ratio = holder.v[i] / energy.v[i];
        const double ell = std::min(L0, std::pow(ratio, expo));
        res.ell.push_back(ell);
        integrand[i] = std::pow(ell, -2.5);
    }
    res.integral = quadrature::trapezoid(holder.t, integrand);

    // power-law fit of ell against (t* - t) on the last quartile
    const std::size_t n = holder.t.size();
    const std::size_t start = n - std::max<std::size_t>(n / 4, 3);
    std::vector<double> lx, ly;
    for (std::size_t i = start; i < n; ++i) {
        lx.push_back(std::log(holder.t_star - holder.t[i]));
        ly.push_back(std::log(res.ell[i]));
    }
    const auto fit = quadrature::fit_line(lx, ly);
    res.fit_exponent = fit.slope;
    // crude band: residual mapped through the fit's time span
    const double span = std::fabs(lx.front() - lx.back());
    res.fit_band = span > 0.0 ? 4.0 * fit.rms_residual / span : 0.0;

    const double critical = 2.0 / 5.0;
    if (res.fit_exponent - res.fit_band >= critical - 1e-9) {
        res.divergent = true;
        res.verdict = EllMuVerdict::blowup_consistent;
    } else if (res.fit_exponent + res.fit_band < critical - 1e-9) {
        res.divergent = false;
        res.verdict = EllMuVerdict::regularity;
    } else {
        res.verdict = EllMuVerdict::inconclusive;
    }
    return res;
}

std::string verdict_text(EllMuVerdict v) {
    switch (v) {
        case EllMuVerdict::regularity:
            return "length-scale integral converges: no blowup possible from this scaling";
        case EllMuVerdict::blowup_consistent:
            return "length-scale integral diverges: consistent with blowup";
        case EllMuVerdict::inconclusive:
            return "fit band straddles the critical exponent 2/5: inconclusive";
    }
    return "";
}

AlphaBoundResult alpha_pointwise_bound(const TimeSeries& gradw, const TimeSeries& up,
                                       double p, double c_in, double c_out) {
    gradw.validate();
    up.validate();
    if (gradw.t.size() != up.t.size()) throw Error("series must share a time base");
    if (!(p >= 1.0)) throw Error("requires p >= 1");
    for (std::size_t i = 0; i < gradw.t.size(); ++i)
        if (gradw.v[i] <= 0.0 || up.v[i] <= 0.0)
            throw Error("bound optimization requires strictly positive series");

    AlphaBoundResult res;
    const double q = 1.0 + 3.0 / p;
    for (std::size_t i = 0; i < gradw.t.size(); ++i) {
        const double G = gradw.v[i], E = up.v[i];
        auto B = [&](double logR) {
            const double R = std::exp(logR);
            return c_in * R * G + c_out * std::pow(R, -q) * E;
        };
        // golden-section in log R
        double lo = std::log(1e-12), hi = std::log(1e12);
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = B(x1), f2 = B(x2);
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = B(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = B(x2);
            }
        }
        const double r_search = std::exp(0.5 * (lo + hi));
        const double b_search = B(0.5 * (lo + hi));
        // closed-form minimizer R* = ((1 + 3/p) c_out E / (c_in G))^{p/(2p+3)}
        const double r_closed = std::pow(q * c_out * E / (c_in * G), p / (2.0 * p + 3.0));
        const double b_closed = c_in * r_closed * G + c_out * std::pow(r_closed, -q) * E;
        if (std::fabs(b_search - b_closed) > 1e-8 * b_closed)
            throw Error("optimizer disagrees with the closed-form minimizer");
        res.bound.push_back(b_closed);
        res.r_star.push_back(r_closed);
        (void)r_search;
    }
    res.integral = quadrature::trapezoid(gradw.t, res.bound);
    return res;
}

ViscousResult viscous_criterion(double Gamma, double C, double gamma) {
    if (Gamma < 0.0 || C < 0.0) throw Error("budgets must be nonnegative");
    if (!(gamma > 0.0)) throw Error("gamma must be positive");
    ViscousResult res;
    if (C == 0.0) {
        res.finite = true;
        res.bound = 16.0 * Gamma;
        res.verdict = "regularity criterion met (no inner part): no blowup";
        return res;
    }
    if (gamma > 0.5) {
        res.finite = true;
        res.bound = 16.0 * (Gamma + std::pow(C, 4.0) / (6.0 * gamma - 3.0));
        res.verdict =
            "regularity criterion met: no blowup; a viscous blowup of this shape needs "
            "gamma <= 1/2";
        return res;
    }
    res.finite = false;
    res.verdict = "inner contribution divergent (gamma <= 1/2)";
    return res;
}

}  // namespace ssguard::criteria
