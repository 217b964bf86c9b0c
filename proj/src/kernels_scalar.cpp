#include "ssguard/kernels.hpp"

#include <cmath>

namespace ssguard::kernels::detail {

double reduce_max_abs_scalar(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

double reduce_max_sq3_scalar(const double* x, const double* y, const double* z, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
        m = std::max(m, s);
    }
    return m;
}

double reduce_sum_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

double reduce_dot_scalar(const double* x, const double* w, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * w[i];
    return s;
}

double reduce_dot3_scalar(const double* ax, const double* ay, const double* az,
                          const double* bx, const double* by, const double* bz, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += ax[i] * bx[i] + ay[i] * by[i] + az[i] * bz[i];
    return s;
}

double reduce_weighted_sq3_scalar(const double* x, const double* y, const double* z,
                                  const double* w, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += w[i] * (x[i] * x[i] + y[i] * y[i] + z[i] * z[i]);
    return s;
}

}  // namespace ssguard::kernels::detail
