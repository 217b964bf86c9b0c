#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "ssguard/kernels.hpp"

using namespace ssguard;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

}  // namespace

TEST_CASE("scalar and simd variants agree on random inputs") {
#ifndef SSGUARD_HAVE_AVX2_TU
    return;  // nothing to compare on this platform
#else
    if (kernels::active_isa() != kernels::Isa::avx2) return;  // cpu without avx2
    std::mt19937_64 rng(20240811);
    // sizes straddling the vector width, including remainders and empty input
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 64u, 257u, 4096u}) {
        const auto x = random_vec(rng, n), y = random_vec(rng, n), z = random_vec(rng, n);
        const auto w = random_vec(rng, n), b1 = random_vec(rng, n), b2 = random_vec(rng, n);
        const double tol = 1e-13 * (1.0 + static_cast<double>(n));

        CHECK(kernels::detail::reduce_max_abs_avx2(x.data(), n) ==
              kernels::detail::reduce_max_abs_scalar(x.data(), n));
        CHECK(kernels::detail::reduce_max_sq3_avx2(x.data(), y.data(), z.data(), n) ==
              doctest::Approx(kernels::detail::reduce_max_sq3_scalar(x.data(), y.data(),
                                                                     z.data(), n))
                  .epsilon(1e-15));
        CHECK(kernels::detail::reduce_sum_avx2(x.data(), n) ==
              doctest::Approx(kernels::detail::reduce_sum_scalar(x.data(), n)).epsilon(tol));
        CHECK(kernels::detail::reduce_dot_avx2(x.data(), w.data(), n) ==
              doctest::Approx(kernels::detail::reduce_dot_scalar(x.data(), w.data(), n))
                  .epsilon(tol));
        CHECK(kernels::detail::reduce_dot3_avx2(x.data(), y.data(), z.data(), w.data(),
                                                b1.data(), b2.data(), n) ==
              doctest::Approx(kernels::detail::reduce_dot3_scalar(x.data(), y.data(), z.data(),
                                                                  w.data(), b1.data(),
                                                                  b2.data(), n))
                  .epsilon(tol));
        CHECK(kernels::detail::reduce_weighted_sq3_avx2(x.data(), y.data(), z.data(), w.data(),
                                                        n) ==
              doctest::Approx(kernels::detail::reduce_weighted_sq3_scalar(
                                  x.data(), y.data(), z.data(), w.data(), n))
                  .epsilon(tol));
    }
#endif
}

TEST_CASE("dispatch honors forced isa") {
    const auto original = kernels::active_isa();
    std::vector<double> v{1.0, -3.0, 2.0};
    kernels::force_isa(kernels::Isa::scalar);
    CHECK(kernels::reduce_max_abs(v.data(), v.size()) == 3.0);
    kernels::force_isa(original);
    CHECK(kernels::reduce_max_abs(v.data(), v.size()) == 3.0);
}

TEST_CASE("reductions on exact values") {
    std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9};
    CHECK(kernels::reduce_sum(x.data(), x.size()) == 45.0);
    std::vector<double> w(x.size(), 2.0);
    CHECK(kernels::reduce_dot(x.data(), w.data(), x.size()) == 90.0);
    CHECK(kernels::reduce_max_abs(x.data(), x.size()) == 9.0);
}
