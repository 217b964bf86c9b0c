#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

#include "ssguard/vec.hpp"

namespace ssguard {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BoundaryPolicy { decay_to_zero, periodic };

/// Uniform Cartesian grid over a box. Values are stored row-major with the
/// last index fastest: index(i,j,k) = (i*ny + j)*nz + k.
struct Grid3 {
    std::array<int, 3> dims{4, 4, 4};
    Vec3 spacing{1, 1, 1};
    Vec3 origin{0, 0, 0};
    BoundaryPolicy boundary = BoundaryPolicy::decay_to_zero;

    void validate() const {
        for (int a = 0; a < 3; ++a) {
            if (dims[a] < 4) throw Error("grid dims must be >= 4 (stencil support)");
            if (!(spacing[a] > 0.0)) throw Error("grid spacing must be strictly positive");
        }
    }

    std::size_t size() const {
        return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    }
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * dims[1] + j) * dims[2] + k;
    }
    Vec3 point(int i, int j, int k) const {
        return {origin.x + i * spacing.x, origin.y + j * spacing.y, origin.z + k * spacing.z};
    }
    Vec3 max_corner() const {
        return {origin.x + (dims[0] - 1) * spacing.x,
                origin.y + (dims[1] - 1) * spacing.y,
                origin.z + (dims[2] - 1) * spacing.z};
    }
    bool contains(const Vec3& p) const {
        const Vec3 hi = max_corner();
        return p.x >= origin.x && p.x <= hi.x && p.y >= origin.y && p.y <= hi.y &&
               p.z >= origin.z && p.z <= hi.z;
    }
    /// Box sized for interior-region bookkeeping: cells at least `margin`
    /// layers from every face.
    bool interior(int i, int j, int k, int margin = 3) const {
        return i >= margin && i < dims[0] - margin && j >= margin && j < dims[1] - margin &&
               k >= margin && k < dims[2] - margin;
    }

    /// Centered cube grid helper: n^3 nodes spanning [-half, half]^3.
    static Grid3 cube(int n, double half, BoundaryPolicy bp = BoundaryPolicy::decay_to_zero) {
        Grid3 g;
        g.dims = {n, n, n};
        const double h = 2.0 * half / (n - 1);
        g.spacing = {h, h, h};
        g.origin = {-half, -half, -half};
        g.boundary = bp;
        g.validate();
        return g;
    }
};

/// Meridional-plane grid for axisymmetric fields: nodes (r0 + i*dr, z0 + j*dz),
/// row-major with z fastest.
struct Grid2 {
    int nr = 4, nz = 4;
    double dr = 1.0, dz = 1.0;
    double r0 = 0.0, z0 = 0.0;

    void validate() const {
        if (nr < 4 || nz < 4) throw Error("grid dims must be >= 4 (stencil support)");
        if (!(dr > 0.0) || !(dz > 0.0)) throw Error("grid spacing must be strictly positive");
        if (r0 < 0.0) throw Error("meridional grid must have r >= 0");
    }
    std::size_t size() const { return static_cast<std::size_t>(nr) * nz; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * nz + j; }
    double r(int i) const { return r0 + i * dr; }
    double z(int j) const { return z0 + j * dz; }
    double r_max() const { return r0 + (nr - 1) * dr; }
    double z_max() const { return z0 + (nz - 1) * dz; }
};

}  // namespace ssguard
