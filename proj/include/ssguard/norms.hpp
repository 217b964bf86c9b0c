#pragma once

#include "ssguard/field.hpp"
#include "ssguard/grid.hpp"

namespace ssguard {

struct NormRequest {
    enum class Kind { lp, sup, grad_sup, holder };
    enum class Rule { trapezoid, midpoint };

    Kind kind = Kind::sup;
    double p = 2.0;       // lp
    double mu = 0.5;      // holder exponent, 0 < mu < 1
    double L0 = 1.0;      // holder pair-distance cap
    Rule rule = Rule::trapezoid;

    static NormRequest lp(double p, Rule rule = Rule::trapezoid) {
        NormRequest r;
        r.kind = Kind::lp;
        r.p = p;
        r.rule = rule;
        return r;
    }
    static NormRequest sup() { return {}; }
    static NormRequest grad_sup() {
        NormRequest r;
        r.kind = Kind::grad_sup;
        return r;
    }
    static NormRequest holder(double mu, double L0) {
        NormRequest r;
        r.kind = Kind::holder;
        r.mu = mu;
        r.L0 = L0;
        return r;
    }
    void validate() const;
};

struct NormResult {
    double value = 0.0;
    double tail_estimate = 0.0;   // estimated truncation contribution (Lp only)
    double fitted_decay = 0.0;    // fitted outer-shell exponent q in |f| ~ r^-q
    operator double() const { return value; }
};

/// Norm/seminorm of a field over the given evaluation grid. Lp quadrature adds
/// a power-law tail fitted on the three outermost shells and throws when the
/// fit implies a non-integrable tail.
NormResult field_norm(const ScalarField& f, const Grid3& grid, const NormRequest& req);
NormResult field_norm(const VectorField& f, const Grid3& grid, const NormRequest& req);

/// max over grid nodes of the Frobenius norm of grad(f); the sup-norm
/// convention used for the unit normalization.
double grad_sup_norm(const VectorField& f, const Grid3& grid);

/// Shell maximum of |f| over quasi-uniform sphere directions.
double shell_max(const VectorField& f, double radius, int ndirs = 512);
double shell_max(const ScalarField& f, double radius, int ndirs = 512);

}  // namespace ssguard
