#pragma once

// 5-point 4th-order first-derivative stencils on uniform grids, with shifted
// one-sided closures at non-periodic boundaries. Shared by the field layer
// (lazy gradient grids) and the differential operators.

#include <vector>

#include "ssguard/grid.hpp"

namespace ssguard::detail {

struct Stencil5 {
    int shift;        // index of the leftmost node relative to the point
    double w[5];      // weights, to be divided by (12 h)
};

inline Stencil5 stencil_for(int i, int n) {
    if (i == 0) return {0, {-25, 48, -36, 16, -3}};
    if (i == 1) return {-1, {-3, -10, 18, -6, 1}};
    if (i == n - 2) return {-3, {-1, 6, -18, 10, 3}};
    if (i == n - 1) return {-4, {3, -16, 36, -48, 25}};
    return {-2, {1, -8, 0, 8, -1}};
}

/// d(in)/d(axis) on the grid, 4th order. Periodic grids use the centered
/// stencil with wraparound everywhere.
void derivative_axis(const Grid3& g, const std::vector<double>& in, int axis,
                     std::vector<double>& out);

/// Same for meridional (r,z) grids; axis 0 = r, 1 = z.
void derivative_axis2(const Grid2& g, const std::vector<double>& in, int axis,
                      std::vector<double>& out);

}  // namespace ssguard::detail
