#include "ssguard/calculus.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>

#include "ssguard/parallel.hpp"
#include "stencil.hpp"

namespace ssguard::calculus {

namespace {

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
std::mutex g_fftw_mutex;

struct Rfft3 {
    std::array<int, 3> n;
    std::size_t nreal, ncplx;
    std::vector<double> real;
    std::vector<std::complex<double>> cplx;
    fftw_plan fwd = nullptr, inv = nullptr;

    explicit Rfft3(const std::array<int, 3>& dims) : n(dims) {
        nreal = static_cast<std::size_t>(n[0]) * n[1] * n[2];
        ncplx = static_cast<std::size_t>(n[0]) * n[1] * (n[2] / 2 + 1);
        real.resize(nreal);
        cplx.resize(ncplx);
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fwd = fftw_plan_dft_r2c_3d(n[0], n[1], n[2], real.data(),
                                   reinterpret_cast<fftw_complex*>(cplx.data()), FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_3d(n[0], n[1], n[2],
                                   reinterpret_cast<fftw_complex*>(cplx.data()), real.data(),
                                   FFTW_ESTIMATE);
        if (!fwd || !inv) throw Error("fftw plan creation failed");
    }
    ~Rfft3() {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
    }
    Rfft3(const Rfft3&) = delete;
    Rfft3& operator=(const Rfft3&) = delete;

    void forward() { fftw_execute(fwd); }
    void inverse_normalized() {
        fftw_execute(inv);
        const double s = 1.0 / static_cast<double>(nreal);
        for (double& v : real) v *= s;
    }
    std::size_t cindex(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n[1] + j) * (n[2] / 2 + 1) + k;
    }
};

double wavenumber(int idx, int n, double period) {
    const int f = idx <= n / 2 ? idx : idx - n;
    return 2.0 * M_PI * f / period;
}

Grid3 padded_grid(const Grid3& g, double pad_factor) {
    Grid3 p = g;
    p.boundary = BoundaryPolicy::periodic;
    for (int a = 0; a < 3; ++a) {
        int np = static_cast<int>(std::lround(g.dims[a] * pad_factor));
        if (np < g.dims[a]) np = g.dims[a];
        // keep the pad-node count even so base nodes embed exactly
        if ((np - g.dims[a]) % 2) ++np;
        p.dims[a] = np;
        p.origin[a] = g.origin[a] - 0.5 * (np - g.dims[a]) * g.spacing[a];
    }
    return p;
}

VectorField stencil_curl(const VectorField& f, const Grid3& g) {
    const auto s = sample_vector(f, g);
    std::vector<double> dzy, dyz, dxz, dzx, dyx, dxy;
    detail::derivative_axis(g, s[2], 1, dzy);  // d w / dy
    detail::derivative_axis(g, s[1], 2, dyz);  // d v / dz
    detail::derivative_axis(g, s[0], 2, dxz);  // d u / dz
    detail::derivative_axis(g, s[2], 0, dzx);  // d w / dx
    detail::derivative_axis(g, s[1], 0, dyx);  // d v / dx
    detail::derivative_axis(g, s[0], 1, dxy);  // d u / dy
    std::vector<double> cx(g.size()), cy(g.size()), cz(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        cx[i] = dzy[i] - dyz[i];
        cy[i] = dxz[i] - dzx[i];
        cz[i] = dyx[i] - dxy[i];
    }
    return VectorField::sampled(g, std::move(cx), std::move(cy), std::move(cz), 3);
}

VectorField spectral_curl(const VectorField& f, const Grid3& g) {
    if (g.boundary != BoundaryPolicy::periodic)
        throw Error("spectral differentiation requires a periodic grid");
    const auto s = sample_vector(f, g);
    const double Lx = g.dims[0] * g.spacing.x, Ly = g.dims[1] * g.spacing.y,
                 Lz = g.dims[2] * g.spacing.z;
    Rfft3 fft(g.dims);
    std::array<std::vector<std::complex<double>>, 3> hat;
    for (int c = 0; c < 3; ++c) {
        fft.real = s[c];
        fft.forward();
        hat[c] = fft.cplx;
    }
    std::array<std::vector<double>, 3> out;
    const std::complex<double> I(0.0, 1.0);
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < g.dims[0]; ++i) {
            const double kx = wavenumber(i, g.dims[0], Lx);
            for (int j = 0; j < g.dims[1]; ++j) {
                const double ky = wavenumber(j, g.dims[1], Ly);
                for (int k = 0; k <= g.dims[2] / 2; ++k) {
                    const double kz = wavenumber(k, g.dims[2], Lz);
                    const std::size_t idx = fft.cindex(i, j, k);
                    const std::complex<double> hx = hat[0][idx], hy = hat[1][idx],
                                               hz = hat[2][idx];
                    std::complex<double> v;
                    if (c == 0) v = I * (ky * hz - kz * hy);
                    if (c == 1) v = I * (kz * hx - kx * hz);
                    if (c == 2) v = I * (kx * hy - ky * hx);
                    fft.cplx[idx] = v;
                }
            }
        }
        fft.inverse_normalized();
        out[c] = fft.real;
    }
    Grid3 og = g;
    return VectorField::sampled(og, std::move(out[0]), std::move(out[1]), std::move(out[2]), 3);
}

}  // namespace

VectorField curl_field(const VectorField& f, const Grid3& grid, DiffMethod method) {
    if (f.has_closed_form_gradient()) {
        auto base = f;
        return VectorField::analytic("curl(" + f.name() + ")",
                                     [base](const Vec3& y) { return base.curl(y); });
    }
    return method == DiffMethod::spectral ? spectral_curl(f, grid) : stencil_curl(f, grid);
}

ScalarField divergence_field(const VectorField& f, const Grid3& grid, DiffMethod method) {
    if (f.has_closed_form_gradient()) {
        auto base = f;
        return ScalarField::analytic("div(" + f.name() + ")",
                                     [base](const Vec3& y) { return base.divergence(y); });
    }
    if (method == DiffMethod::spectral && grid.boundary != BoundaryPolicy::periodic)
        throw Error("spectral differentiation requires a periodic grid");
    const auto s = sample_vector(f, grid);
    if (method == DiffMethod::spectral) {
        // d_x u + d_y v + d_z w via one FFT pass per component
        const double Lx = grid.dims[0] * grid.spacing.x, Ly = grid.dims[1] * grid.spacing.y,
                     Lz = grid.dims[2] * grid.spacing.z;
        Rfft3 fft(grid.dims);
        std::vector<std::complex<double>> acc(fft.ncplx, {0.0, 0.0});
        const std::complex<double> I(0.0, 1.0);
        for (int c = 0; c < 3; ++c) {
            fft.real = s[c];
            fft.forward();
            for (int i = 0; i < grid.dims[0]; ++i)
                for (int j = 0; j < grid.dims[1]; ++j)
                    for (int k = 0; k <= grid.dims[2] / 2; ++k) {
                        const double kc = c == 0 ? wavenumber(i, grid.dims[0], Lx)
                                        : c == 1 ? wavenumber(j, grid.dims[1], Ly)
                                                 : wavenumber(k, grid.dims[2], Lz);
                        acc[fft.cindex(i, j, k)] += I * kc * fft.cplx[fft.cindex(i, j, k)];
                    }
        }
        fft.cplx = acc;
        fft.inverse_normalized();
        return ScalarField::sampled(grid, fft.real, 3);
    }
    std::vector<double> dx, dy, dz;
    detail::derivative_axis(grid, s[0], 0, dx);
    detail::derivative_axis(grid, s[1], 1, dy);
    detail::derivative_axis(grid, s[2], 2, dz);
    for (std::size_t i = 0; i < grid.size(); ++i) dx[i] += dy[i] + dz[i];
    return ScalarField::sampled(grid, std::move(dx), 3);
}

VectorField gradient_field(const ScalarField& f, const Grid3& grid, DiffMethod method) {
    if (f.has_closed_form_gradient()) {
        auto base = f;
        return VectorField::analytic("grad(" + f.name() + ")",
                                     [base](const Vec3& y) { return base.gradient(y); });
    }
    if (method == DiffMethod::spectral && grid.boundary != BoundaryPolicy::periodic)
        throw Error("spectral differentiation requires a periodic grid");
    const auto s = sample_scalar(f, grid);
    if (method == DiffMethod::spectral) {
        const double L[3] = {grid.dims[0] * grid.spacing.x, grid.dims[1] * grid.spacing.y,
                             grid.dims[2] * grid.spacing.z};
        Rfft3 fft(grid.dims);
        fft.real = s;
        fft.forward();
        const auto hat = fft.cplx;
        const std::complex<double> I(0.0, 1.0);
        std::array<std::vector<double>, 3> out;
        for (int c = 0; c < 3; ++c) {
            for (int i = 0; i < grid.dims[0]; ++i)
                for (int j = 0; j < grid.dims[1]; ++j)
                    for (int k = 0; k <= grid.dims[2] / 2; ++k) {
                        const double kc = c == 0 ? wavenumber(i, grid.dims[0], L[0])
                                        : c == 1 ? wavenumber(j, grid.dims[1], L[1])
                                                 : wavenumber(k, grid.dims[2], L[2]);
                        fft.cplx[fft.cindex(i, j, k)] = I * kc * hat[fft.cindex(i, j, k)];
                    }
            fft.inverse_normalized();
            out[c] = fft.real;
        }
        return VectorField::sampled(grid, std::move(out[0]), std::move(out[1]),
                                    std::move(out[2]), 3);
    }
    std::array<std::vector<double>, 3> out;
    for (int a = 0; a < 3; ++a) detail::derivative_axis(grid, s, a, out[a]);
    return VectorField::sampled(grid, std::move(out[0]), std::move(out[1]), std::move(out[2]),
                                3);
}

VectorField biot_savart_velocity(const VectorField& omega, const Grid3& grid, double pad_factor,
                                 double gamma) {
    const Grid3 pg = padded_grid(grid, pad_factor);
    const auto w = sample_vector(omega, pg);
    const double L[3] = {pg.dims[0] * pg.spacing.x, pg.dims[1] * pg.spacing.y,
                         pg.dims[2] * pg.spacing.z};
    Rfft3 fft(pg.dims);
    std::array<std::vector<std::complex<double>>, 3> what;
    for (int c = 0; c < 3; ++c) {
        fft.real = w[c];
        fft.forward();
        what[c] = fft.cplx;
    }
    const std::complex<double> I(0.0, 1.0);
    std::array<std::vector<double>, 3> u;
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < pg.dims[0]; ++i) {
            const double kx = wavenumber(i, pg.dims[0], L[0]);
            for (int j = 0; j < pg.dims[1]; ++j) {
                const double ky = wavenumber(j, pg.dims[1], L[1]);
                for (int k = 0; k <= pg.dims[2] / 2; ++k) {
                    const double kz = wavenumber(k, pg.dims[2], L[2]);
                    const double k2 = kx * kx + ky * ky + kz * kz;
                    const std::size_t idx = fft.cindex(i, j, k);
                    if (k2 == 0.0) {
                        fft.cplx[idx] = 0.0;
                        continue;
                    }
                    const std::complex<double> hx = what[0][idx], hy = what[1][idx],
                                               hz = what[2][idx];
                    std::complex<double> v;
                    if (c == 0) v = I * (ky * hz - kz * hy) / k2;
                    if (c == 1) v = I * (kz * hx - kx * hz) / k2;
                    if (c == 2) v = I * (kx * hy - ky * hx) / k2;
                    fft.cplx[idx] = v;
                }
            }
        }
        fft.inverse_normalized();
        u[c] = fft.real;
    }
    // restrict to the requested grid
    std::array<std::vector<double>, 3> out;
    for (auto& a : out) a.resize(grid.size());
    const int oi = static_cast<int>(std::lround((grid.origin.x - pg.origin.x) / grid.spacing.x));
    const int oj = static_cast<int>(std::lround((grid.origin.y - pg.origin.y) / grid.spacing.y));
    const int ok = static_cast<int>(std::lround((grid.origin.z - pg.origin.z) / grid.spacing.z));
    for (int i = 0; i < grid.dims[0]; ++i)
        for (int j = 0; j < grid.dims[1]; ++j)
            for (int k = 0; k < grid.dims[2]; ++k) {
                const std::size_t src = pg.index(i + oi, j + oj, k + ok);
                const std::size_t dst = grid.index(i, j, k);
                for (int c = 0; c < 3; ++c) out[c][dst] = u[c][src];
            }
    const Extrapolation ex = gamma > 0.0 ? Extrapolation::envelope((gamma - 1.0) / gamma)
                                         : Extrapolation::none();
    return VectorField::sampled(grid, std::move(out[0]), std::move(out[1]), std::move(out[2]),
                                3, ex);
}

ScalarField pressure_from_velocity(const VectorField& U, const Grid3& grid, double pad_factor,
                                   double* gauge_shell_mean) {
    const Grid3 pg = padded_grid(grid, pad_factor);
    const double L[3] = {pg.dims[0] * pg.spacing.x, pg.dims[1] * pg.spacing.y,
                         pg.dims[2] * pg.spacing.z};
    // stress components W_ab = U_a U_b, six of them
    const auto uu = sample_vector(U, pg);
    Rfft3 fft(pg.dims);
    std::vector<std::complex<double>> phat(fft.ncplx, {0.0, 0.0});
    const int pairs[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
    for (const auto& pr : pairs) {
        const int a = pr[0], b = pr[1];
        for (std::size_t i = 0; i < fft.nreal; ++i) fft.real[i] = uu[a][i] * uu[b][i];
        fft.forward();
        const double mult = a == b ? 1.0 : 2.0;
        for (int i = 0; i < pg.dims[0]; ++i) {
            const double kv[3] = {wavenumber(i, pg.dims[0], L[0]), 0.0, 0.0};
            for (int j = 0; j < pg.dims[1]; ++j) {
                const double ky = wavenumber(j, pg.dims[1], L[1]);
                for (int k = 0; k <= pg.dims[2] / 2; ++k) {
                    const double kz = wavenumber(k, pg.dims[2], L[2]);
                    const double kk[3] = {kv[0], ky, kz};
                    const double k2 = kk[0] * kk[0] + kk[1] * kk[1] + kk[2] * kk[2];
                    if (k2 == 0.0) continue;
                    const std::size_t idx = fft.cindex(i, j, k);
                    phat[idx] -= mult * kk[a] * kk[b] / k2 * fft.cplx[idx];
                }
            }
        }
    }
    fft.cplx = phat;
    fft.inverse_normalized();
    // restrict and apply the decay gauge: remove the mean over the outermost shell
    std::vector<double> p(grid.size());
    const int oi = static_cast<int>(std::lround((grid.origin.x - pg.origin.x) / grid.spacing.x));
    const int oj = static_cast<int>(std::lround((grid.origin.y - pg.origin.y) / grid.spacing.y));
    const int ok = static_cast<int>(std::lround((grid.origin.z - pg.origin.z) / grid.spacing.z));
    for (int i = 0; i < grid.dims[0]; ++i)
        for (int j = 0; j < grid.dims[1]; ++j)
            for (int k = 0; k < grid.dims[2]; ++k)
                p[grid.index(i, j, k)] = fft.real[pg.index(i + oi, j + oj, k + ok)];
    double shell_sum = 0.0;
    std::size_t shell_count = 0;
    for (int i = 0; i < grid.dims[0]; ++i)
        for (int j = 0; j < grid.dims[1]; ++j)
            for (int k = 0; k < grid.dims[2]; ++k) {
                const bool face = i == 0 || i == grid.dims[0] - 1 || j == 0 ||
                                  j == grid.dims[1] - 1 || k == 0 || k == grid.dims[2] - 1;
                if (face) {
                    shell_sum += p[grid.index(i, j, k)];
                    ++shell_count;
                }
            }
    const double mean = shell_count ? shell_sum / shell_count : 0.0;
    for (double& v : p) v -= mean;
    if (gauge_shell_mean) *gauge_shell_mean = mean;
    return ScalarField::sampled(grid, std::move(p), 3);
}

}  // namespace ssguard::calculus
