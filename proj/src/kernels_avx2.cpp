// AVX2 variants of the reduction kernels. This translation unit is the only
// one compiled with -mavx2; the dispatcher guards every call with a CPUID
// check, so the rest of the binary stays baseline-x86-64.

#include "ssguard/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace ssguard::kernels::detail {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_max_sd(lo, sh));
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

}  // namespace

double reduce_max_abs_avx2(const double* x, std::size_t n) {
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_and_pd(_mm256_loadu_pd(x + i), kAbsMask);
        m = _mm256_max_pd(m, v);
    }
    double r = hmax(m);
    for (; i < n; ++i) r = std::max(r, std::fabs(x[i]));
    return r;
}

double reduce_max_sq3_avx2(const double* x, const double* y, const double* z, std::size_t n) {
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vz = _mm256_loadu_pd(z + i);
        __m256d s = _mm256_fmadd_pd(vz, vz, _mm256_fmadd_pd(vy, vy, _mm256_mul_pd(vx, vx)));
        m = _mm256_max_pd(m, s);
    }
    double r = hmax(m);
    for (; i < n; ++i) {
        const double s = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
        r = std::max(r, s);
    }
    return r;
}

double reduce_sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double reduce_dot_avx2(const double* x, const double* w, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(w + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * w[i];
    return s;
}

double reduce_dot3_avx2(const double* ax, const double* ay, const double* az,
                        const double* bx, const double* by, const double* bz, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(ax + i), _mm256_loadu_pd(bx + i), acc);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(ay + i), _mm256_loadu_pd(by + i), acc);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(az + i), _mm256_loadu_pd(bz + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += ax[i] * bx[i] + ay[i] * by[i] + az[i] * bz[i];
    return s;
}

double reduce_weighted_sq3_avx2(const double* x, const double* y, const double* z,
                                const double* w, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vz = _mm256_loadu_pd(z + i);
        __m256d s = _mm256_fmadd_pd(vz, vz, _mm256_fmadd_pd(vy, vy, _mm256_mul_pd(vx, vx)));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), s, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * (x[i] * x[i] + y[i] * y[i] + z[i] * z[i]);
    return s;
}

}  // namespace ssguard::kernels::detail

#endif  // x86-64
