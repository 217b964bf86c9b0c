#include "ssguard/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ssguard::kernels {

namespace {

bool avx2_available() {
#if defined(SSGUARD_HAVE_AVX2_TU) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa detect() {
    if (const char* env = std::getenv("SSGUARD_ISA")) {
        const std::string s(env);
        if (s == "scalar") return Isa::scalar;
        if (s == "avx2" && avx2_available()) return Isa::avx2;
    }
    return avx2_available() ? Isa::avx2 : Isa::scalar;
}

Isa g_isa = detect();

}  // namespace

Isa active_isa() { return g_isa; }

std::string isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void force_isa(Isa isa) {
    if (isa == Isa::avx2 && !avx2_available())
        throw std::runtime_error("avx2 not available on this cpu");
    g_isa = isa;
}

#if defined(SSGUARD_HAVE_AVX2_TU)
#define SSGUARD_DISPATCH(fn, ...) \
    return g_isa == Isa::avx2 ? detail::fn##_avx2(__VA_ARGS__) : detail::fn##_scalar(__VA_ARGS__)
#else
#define SSGUARD_DISPATCH(fn, ...) return detail::fn##_scalar(__VA_ARGS__)
#endif

double reduce_max_abs(const double* x, std::size_t n) { SSGUARD_DISPATCH(reduce_max_abs, x, n); }

double reduce_max_sq3(const double* x, const double* y, const double* z, std::size_t n) {
    SSGUARD_DISPATCH(reduce_max_sq3, x, y, z, n);
}

double reduce_sum(const double* x, std::size_t n) { SSGUARD_DISPATCH(reduce_sum, x, n); }

double reduce_dot(const double* x, const double* w, std::size_t n) {
    SSGUARD_DISPATCH(reduce_dot, x, w, n);
}

double reduce_dot3(const double* ax, const double* ay, const double* az,
                   const double* bx, const double* by, const double* bz, std::size_t n) {
    SSGUARD_DISPATCH(reduce_dot3, ax, ay, az, bx, by, bz, n);
}

double reduce_weighted_sq3(const double* x, const double* y, const double* z,
                           const double* w, std::size_t n) {
    SSGUARD_DISPATCH(reduce_weighted_sq3, x, y, z, w, n);
}

#undef SSGUARD_DISPATCH

}  // namespace ssguard::kernels
