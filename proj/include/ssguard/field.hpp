#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssguard/grid.hpp"
#include "ssguard/vec.hpp"

namespace ssguard {

/// Continuation of a sampled field beyond its grid box.
///   zero      — field is 0 outside,
///   envelope  — power-law continuation along rays through the coordinate
///               origin: f(y) = f(y_b) * (|y|/|y_b|)^power with y_b the box
///               exit point of the ray.
struct Extrapolation {
    enum class Kind { zero, envelope } kind = Kind::zero;
    double power = 0.0;

    static Extrapolation none() { return {}; }
    static Extrapolation envelope(double power) { return {Kind::envelope, power}; }
};

namespace detail {
struct SampledData;  // interpolation state shared by scalar/vector fields
}

/// A scalar field over R^3: either a named analytic closed form (optionally
/// with a registered gradient) or grid samples with interpolation order 1
/// (trilinear) or 3 (tricubic).
class ScalarField {
  public:
    ScalarField() = default;

    static ScalarField analytic(std::string name,
                                std::function<double(const Vec3&)> value,
                                std::function<Vec3(const Vec3&)> gradient = nullptr);
    static ScalarField sampled(const Grid3& grid, std::vector<double> values,
                               int interp_order = 3,
                               Extrapolation extrap = Extrapolation::none());

    double operator()(const Vec3& y) const;
    /// Closed-form gradient when registered; for sampled fields, interpolation
    /// of once-computed 4th-order stencil derivative grids; finite differences
    /// otherwise (and outside the grid box).
    Vec3 gradient(const Vec3& y) const;

    bool is_sampled() const { return data_ != nullptr; }
    const Grid3* grid() const;
    const std::vector<double>* samples() const;
    const std::string& name() const { return name_; }
    bool has_closed_form_gradient() const { return static_cast<bool>(grad_); }

    /// Spatially rescaled field y -> value_scale * f(y / lambda). Sampled
    /// fields keep their arrays (times value_scale) on a geometrically scaled
    /// grid, so rescaling is exact.
    ScalarField rescaled(double lambda, double value_scale = 1.0) const;

  private:
    std::string name_;
    std::function<double(const Vec3&)> value_;
    std::function<Vec3(const Vec3&)> grad_;
    std::shared_ptr<detail::SampledData> data_;  // scalar: one component
    friend class VectorField;
};

/// A 3-vector field over R^3; components of sampled fields are stored as
/// separate arrays (structure-of-arrays), row-major per component.
class VectorField {
  public:
    VectorField() = default;

    static VectorField analytic(std::string name,
                                std::function<Vec3(const Vec3&)> value,
                                std::function<Mat3(const Vec3&)> gradient = nullptr);
    static VectorField sampled(const Grid3& grid, std::vector<double> x,
                               std::vector<double> y, std::vector<double> z,
                               int interp_order = 3,
                               Extrapolation extrap = Extrapolation::none());

    Vec3 operator()(const Vec3& y) const;
    /// Gradient matrix G with G(i,j) = d U_i / d y_j.
    Mat3 gradient(const Vec3& y) const;

    double divergence(const Vec3& y) const { return gradient(y).trace(); }
    Vec3 curl(const Vec3& y) const {
        const Mat3 g = gradient(y);
        return {g(2, 1) - g(1, 2), g(0, 2) - g(2, 0), g(1, 0) - g(0, 1)};
    }

    bool is_sampled() const { return data_ != nullptr; }
    const Grid3* grid() const;
    const std::vector<double>* component(int c) const;
    const std::string& name() const { return name_; }
    bool has_closed_form_gradient() const { return static_cast<bool>(grad_); }

    /// y -> value_scale * F(y / lambda), exact for sampled fields.
    VectorField rescaled(double lambda, double value_scale = 1.0) const;

  private:
    std::string name_;
    std::function<Vec3(const Vec3&)> value_;
    std::function<Mat3(const Vec3&)> grad_;
    std::shared_ptr<detail::SampledData> data_;
};

/// Samples an analytic (or any) field onto a grid.
std::vector<double> sample_scalar(const ScalarField& f, const Grid3& g);
std::array<std::vector<double>, 3> sample_vector(const VectorField& f, const Grid3& g);

}  // namespace ssguard
