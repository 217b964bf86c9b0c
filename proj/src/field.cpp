#include "ssguard/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "ssguard/parallel.hpp"
#include "stencil.hpp"

namespace ssguard {

namespace detail {

struct AxisWindow {
    int base;        // leftmost node of the interpolation window
    double w[4];     // weights (order 1 uses the first two)
};

struct SampledData {
    Grid3 grid;
    int ncomp = 1;
    int order = 3;
    Extrapolation extrap;
    std::array<std::vector<double>, 3> comp;

    mutable std::once_flag grad_once;
    mutable std::array<std::array<std::vector<double>, 3>, 3> dcomp;  // [comp][axis]

    bool periodic() const { return grid.boundary == BoundaryPolicy::periodic; }

    AxisWindow window(int axis, double coord) const {
        const int n = grid.dims[axis];
        const double u = (coord - grid.origin[axis]) / grid.spacing[axis];
        AxisWindow win{};
        if (order == 1) {
            int b = static_cast<int>(std::floor(u));
            if (!periodic()) b = std::clamp(b, 0, n - 2);
            const double x = u - b;
            win.base = b;
            win.w[0] = 1.0 - x;
            win.w[1] = x;
            win.w[2] = win.w[3] = 0.0;
        } else {
            int b = static_cast<int>(std::floor(u)) - 1;
            if (!periodic()) b = std::clamp(b, 0, n - 4);
            const double x = u - b;
            // cubic Lagrange weights on nodes {0,1,2,3}
            const double x0 = x, x1 = x - 1.0, x2 = x - 2.0, x3 = x - 3.0;
            win.base = b;
            win.w[0] = -x1 * x2 * x3 / 6.0;
            win.w[1] = x0 * x2 * x3 / 2.0;
            win.w[2] = -x0 * x1 * x3 / 2.0;
            win.w[3] = x0 * x1 * x2 / 6.0;
        }
        return win;
    }

    int wrap(int idx, int n) const { return ((idx % n) + n) % n; }

    double interp_inside(const std::vector<double>& arr, const Vec3& p) const {
        const AxisWindow wi = window(0, p.x), wj = window(1, p.y), wk = window(2, p.z);
        const int m = order == 1 ? 2 : 4;
        const int n0 = grid.dims[0], n1 = grid.dims[1], n2 = grid.dims[2];
        double acc = 0.0;
        for (int a = 0; a < m; ++a) {
            const int i = periodic() ? wrap(wi.base + a, n0) : wi.base + a;
            double accj = 0.0;
            for (int b = 0; b < m; ++b) {
                const int j = periodic() ? wrap(wj.base + b, n1) : wj.base + b;
                const double* line = arr.data() + (static_cast<std::size_t>(i) * n1 + j) * n2;
                double acck = 0.0;
                for (int c = 0; c < m; ++c) {
                    const int k = periodic() ? wrap(wk.base + c, n2) : wk.base + c;
                    acck += wk.w[c] * line[k];
                }
                accj += wj.w[b] * acck;
            }
            acc += wi.w[a] * accj;
        }
        return acc;
    }

    /// Maps an exterior point to a box point along the ray through the
    /// coordinate origin; returns the value scale (lambda^-power). Falls back
    /// to clamping when the ray misses the box.
    Vec3 map_exterior(const Vec3& p, double& scale) const {
        scale = extrap.kind == Extrapolation::Kind::zero ? 0.0 : 1.0;
        if (extrap.kind == Extrapolation::Kind::zero) return grid.origin;
        const Vec3 lo = grid.origin, hi = grid.max_corner();
        double lam_lo = 0.0, lam_hi = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (int a = 0; a < 3 && ok; ++a) {
            const double c = p[a];
            if (c == 0.0) {
                if (lo[a] > 0.0 || hi[a] < 0.0) ok = false;
                continue;
            }
            double l0 = lo[a] / c, l1 = hi[a] / c;
            if (l0 > l1) std::swap(l0, l1);
            lam_lo = std::max(lam_lo, l0);
            lam_hi = std::min(lam_hi, l1);
        }
        if (!ok || lam_lo > lam_hi || lam_hi <= 0.0) {
            // clamp into the box, no scaling
            return {std::clamp(p.x, lo.x, hi.x), std::clamp(p.y, lo.y, hi.y),
                    std::clamp(p.z, lo.z, hi.z)};
        }
        const double lam = std::clamp(1.0, std::max(lam_lo, 1e-300), lam_hi);
        scale = std::pow(lam, -extrap.power);
        return p * lam;
    }

    double eval(int c, const Vec3& p) const {
        if (periodic() || grid.contains(p)) return interp_inside(comp[c], p);
        double scale = 0.0;
        const Vec3 q = map_exterior(p, scale);
        return scale == 0.0 ? 0.0 : scale * interp_inside(comp[c], q);
    }

    void ensure_gradients() const {
        std::call_once(grad_once, [this] {
            for (int c = 0; c < ncomp; ++c)
                for (int a = 0; a < 3; ++a)
                    detail::derivative_axis(grid, comp[c], a, dcomp[c][a]);
        });
    }

    double eval_derivative(int c, int axis, const Vec3& p) const {
        ensure_gradients();
        if (periodic() || grid.contains(p)) return interp_inside(dcomp[c][axis], p);
        // Finite differences of the extrapolated evaluation.
        const double h = 0.5 * std::min({grid.spacing.x, grid.spacing.y, grid.spacing.z});
        Vec3 pp = p, pm = p;
        pp[axis] += h;
        pm[axis] -= h;
        return (eval(c, pp) - eval(c, pm)) / (2.0 * h);
    }
};

}  // namespace detail

using detail::SampledData;

// ---------------------------------------------------------------------------
// ScalarField

ScalarField ScalarField::analytic(std::string name, std::function<double(const Vec3&)> value,
                                  std::function<Vec3(const Vec3&)> gradient) {
    ScalarField f;
    f.name_ = std::move(name);
    f.value_ = std::move(value);
    f.grad_ = std::move(gradient);
    return f;
}

ScalarField ScalarField::sampled(const Grid3& grid, std::vector<double> values,
                                 int interp_order, Extrapolation extrap) {
    grid.validate();
    if (values.size() != grid.size()) throw Error("sampled array does not match grid dims");
    if (interp_order != 1 && interp_order != 3) throw Error("interpolation order must be 1 or 3");
    for (double v : values)
        if (!std::isfinite(v)) throw Error("sampled array contains non-finite entries");
    ScalarField f;
    f.name_ = "sampled";
    auto d = std::make_shared<SampledData>();
    d->grid = grid;
    d->ncomp = 1;
    d->order = interp_order;
    d->extrap = extrap;
    d->comp[0] = std::move(values);
    f.data_ = std::move(d);
    return f;
}

double ScalarField::operator()(const Vec3& y) const {
    if (data_) return data_->eval(0, y);
    return value_(y);
}

Vec3 ScalarField::gradient(const Vec3& y) const {
    if (grad_) return grad_(y);
    if (data_)
        return {data_->eval_derivative(0, 0, y), data_->eval_derivative(0, 1, y),
                data_->eval_derivative(0, 2, y)};
    // 5-point central differences on the analytic evaluation
    const double h = 1e-3 * (1.0 + y.norm());
    Vec3 g;
    for (int a = 0; a < 3; ++a) {
        Vec3 p1 = y, p2 = y, m1 = y, m2 = y;
        p1[a] += h;
        p2[a] += 2 * h;
        m1[a] -= h;
        m2[a] -= 2 * h;
        g[a] = (value_(m2) - 8 * value_(m1) + 8 * value_(p1) - value_(p2)) / (12 * h);
    }
    return g;
}

const Grid3* ScalarField::grid() const { return data_ ? &data_->grid : nullptr; }
const std::vector<double>* ScalarField::samples() const {
    return data_ ? &data_->comp[0] : nullptr;
}

ScalarField ScalarField::rescaled(double lambda, double value_scale) const {
    if (data_) {
        Grid3 g = data_->grid;
        g.spacing *= lambda;
        g.origin *= lambda;
        std::vector<double> v = data_->comp[0];
        if (value_scale != 1.0)
            for (double& x : v) x *= value_scale;
        return sampled(g, std::move(v), data_->order, data_->extrap);
    }
    ScalarField f = *this;
    const auto base_v = value_;
    const auto base_g = grad_;
    f.value_ = [base_v, lambda, value_scale](const Vec3& y) {
        return value_scale * base_v(y / lambda);
    };
    if (base_g)
        f.grad_ = [base_g, lambda, value_scale](const Vec3& y) {
            return base_g(y / lambda) * (value_scale / lambda);
        };
    else
        f.grad_ = nullptr;
    return f;
}

// ---------------------------------------------------------------------------
// VectorField

VectorField VectorField::analytic(std::string name, std::function<Vec3(const Vec3&)> value,
                                  std::function<Mat3(const Vec3&)> gradient) {
    VectorField f;
    f.name_ = std::move(name);
    f.value_ = std::move(value);
    f.grad_ = std::move(gradient);
    return f;
}

VectorField VectorField::sampled(const Grid3& grid, std::vector<double> x, std::vector<double> y,
                                 std::vector<double> z, int interp_order, Extrapolation extrap) {
    grid.validate();
    if (x.size() != grid.size() || y.size() != grid.size() || z.size() != grid.size())
        throw Error("sampled array does not match grid dims");
    if (interp_order != 1 && interp_order != 3) throw Error("interpolation order must be 1 or 3");
    for (const auto* arr : {&x, &y, &z})
        for (double v : *arr)
            if (!std::isfinite(v)) throw Error("sampled array contains non-finite entries");
    VectorField f;
    f.name_ = "sampled";
    auto d = std::make_shared<SampledData>();
    d->grid = grid;
    d->ncomp = 3;
    d->order = interp_order;
    d->extrap = extrap;
    d->comp = {std::move(x), std::move(y), std::move(z)};
    f.data_ = std::move(d);
    return f;
}

Vec3 VectorField::operator()(const Vec3& y) const {
    if (data_) return {data_->eval(0, y), data_->eval(1, y), data_->eval(2, y)};
    return value_(y);
}

Mat3 VectorField::gradient(const Vec3& y) const {
    if (grad_) return grad_(y);
    Mat3 g;
    if (data_) {
        for (int c = 0; c < 3; ++c)
            for (int a = 0; a < 3; ++a) g(c, a) = data_->eval_derivative(c, a, y);
        return g;
    }
    const double h = 1e-3 * (1.0 + y.norm());
    for (int a = 0; a < 3; ++a) {
        Vec3 p1 = y, p2 = y, m1 = y, m2 = y;
        p1[a] += h;
        p2[a] += 2 * h;
        m1[a] -= h;
        m2[a] -= 2 * h;
        const Vec3 d =
            (value_(m2) - 8 * value_(m1) + 8 * value_(p1) - value_(p2)) / (12 * h);
        for (int c = 0; c < 3; ++c) g(c, a) = d[c];
    }
    return g;
}

const Grid3* VectorField::grid() const { return data_ ? &data_->grid : nullptr; }
const std::vector<double>* VectorField::component(int c) const {
    return data_ ? &data_->comp[c] : nullptr;
}

VectorField VectorField::rescaled(double lambda, double value_scale) const {
    if (data_) {
        Grid3 g = data_->grid;
        g.spacing *= lambda;
        g.origin *= lambda;
        std::array<std::vector<double>, 3> v = data_->comp;
        if (value_scale != 1.0)
            for (auto& arr : v)
                for (double& x : arr) x *= value_scale;
        return sampled(g, std::move(v[0]), std::move(v[1]), std::move(v[2]), data_->order,
                       data_->extrap);
    }
    VectorField f = *this;
    const auto base_v = value_;
    const auto base_g = grad_;
    f.value_ = [base_v, lambda, value_scale](const Vec3& y) {
        return value_scale * base_v(y / lambda);
    };
    if (base_g)
        f.grad_ = [base_g, lambda, value_scale](const Vec3& y) {
            return base_g(y / lambda) * (value_scale / lambda);
        };
    else
        f.grad_ = nullptr;
    return f;
}

// ---------------------------------------------------------------------------

std::vector<double> sample_scalar(const ScalarField& f, const Grid3& g) {
    std::vector<double> out(g.size());
    parallel_for_each(static_cast<std::size_t>(g.dims[0]), [&](std::size_t i) {
        for (int j = 0; j < g.dims[1]; ++j)
            for (int k = 0; k < g.dims[2]; ++k)
                out[g.index(static_cast<int>(i), j, k)] =
                    f(g.point(static_cast<int>(i), j, k));
    });
    return out;
}

std::array<std::vector<double>, 3> sample_vector(const VectorField& f, const Grid3& g) {
    std::array<std::vector<double>, 3> out;
    for (auto& a : out) a.resize(g.size());
    parallel_for_each(static_cast<std::size_t>(g.dims[0]), [&](std::size_t i) {
        for (int j = 0; j < g.dims[1]; ++j)
            for (int k = 0; k < g.dims[2]; ++k) {
                const Vec3 v = f(g.point(static_cast<int>(i), j, k));
                const std::size_t idx = g.index(static_cast<int>(i), j, k);
                out[0][idx] = v.x;
                out[1][idx] = v.y;
                out[2][idx] = v.z;
            }
    });
    return out;
}

}  // namespace ssguard
