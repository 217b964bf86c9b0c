#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops used by the norm quadratures, grid reductions and
// the singular-integral contraction. Each kernel has a scalar reference
// implementation and an AVX2 variant; the active one is selected at runtime
// from CPUID (override with SSGUARD_ISA=scalar|avx2). The two variants are
// equivalence-tested against each other in tests/test_kernels.cpp.

namespace ssguard::kernels {

enum class Isa { scalar, avx2 };

/// Instruction set the dispatcher resolved to (after env override).
Isa active_isa();
std::string isa_name(Isa isa);

/// Force a specific ISA (used by the equivalence tests). Throws if the ISA
/// is not available on this machine.
void force_isa(Isa isa);

/// max_i |x_i|; 0 for empty input.
double reduce_max_abs(const double* x, std::size_t n);

/// max_i (x_i^2 + y_i^2 + z_i^2); 0 for empty input. Caller takes the sqrt.
double reduce_max_sq3(const double* x, const double* y, const double* z, std::size_t n);

/// sum_i x_i
double reduce_sum(const double* x, std::size_t n);

/// sum_i x_i * w_i
double reduce_dot(const double* x, const double* w, std::size_t n);

/// sum_i (ax_i*bx_i + ay_i*by_i + az_i*bz_i) — the quadrature contraction of a
/// vector sample stream against precomputed direction/weight vectors.
double reduce_dot3(const double* ax, const double* ay, const double* az,
                   const double* bx, const double* by, const double* bz, std::size_t n);

/// sum_i w_i * (x_i^2 + y_i^2 + z_i^2)
double reduce_weighted_sq3(const double* x, const double* y, const double* z,
                           const double* w, std::size_t n);

namespace detail {
// Scalar reference implementations, exposed for the equivalence tests.
double reduce_max_abs_scalar(const double*, std::size_t);
double reduce_max_sq3_scalar(const double*, const double*, const double*, std::size_t);
double reduce_sum_scalar(const double*, std::size_t);
double reduce_dot_scalar(const double*, const double*, std::size_t);
double reduce_dot3_scalar(const double*, const double*, const double*,
                          const double*, const double*, const double*, std::size_t);
double reduce_weighted_sq3_scalar(const double*, const double*, const double*,
                                  const double*, std::size_t);

#if defined(__x86_64__) || defined(_M_X64)
#define SSGUARD_HAVE_AVX2_TU 1
double reduce_max_abs_avx2(const double*, std::size_t);
double reduce_max_sq3_avx2(const double*, const double*, const double*, std::size_t);
double reduce_sum_avx2(const double*, std::size_t);
double reduce_dot_avx2(const double*, const double*, std::size_t);
double reduce_dot3_avx2(const double*, const double*, const double*,
                        const double*, const double*, const double*, std::size_t);
double reduce_weighted_sq3_avx2(const double*, const double*, const double*,
                                const double*, std::size_t);
#endif
}  // namespace detail

}  // namespace ssguard::kernels
