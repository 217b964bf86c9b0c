#include "ssguard/vec.hpp"

#include <algorithm>

namespace ssguard {

std::array<double, 3> sym3_eigenvalues(const Mat3& s) {
    // Trigonometric closed form for real symmetric 3x3 matrices.
    const double p1 = s(0, 1) * s(0, 1) + s(0, 2) * s(0, 2) + s(1, 2) * s(1, 2);
    const double q = s.trace() / 3.0;
    if (p1 == 0.0) {
        std::array<double, 3> ev{s(0, 0), s(1, 1), s(2, 2)};
        std::sort(ev.begin(), ev.end());
        return ev;
    }
    const double d0 = s(0, 0) - q, d1 = s(1, 1) - q, d2 = s(2, 2) - q;
    const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Mat3 b = s;
    b(0, 0) -= q;
    b(1, 1) -= q;
    b(2, 2) -= q;
    b = b * (1.0 / p);
    const double r = std::clamp(b.det() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    const double e2 = 3.0 * q - e1 - e3;
    std::array<double, 3> ev{e3, e2, e1};
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace ssguard
