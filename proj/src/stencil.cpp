#include "stencil.hpp"

#include "ssguard/parallel.hpp"

namespace ssguard::detail {

void derivative_axis(const Grid3& g, const std::vector<double>& in, int axis,
                     std::vector<double>& out) {
    const int n0 = g.dims[0], n1 = g.dims[1], n2 = g.dims[2];
    const long strides[3] = {static_cast<long>(n1) * n2, n2, 1};
    const int n = g.dims[axis];
    const long s = strides[axis];
    const double inv12h = 1.0 / (12.0 * g.spacing[axis]);
    const bool periodic = g.boundary == BoundaryPolicy::periodic;
    out.assign(in.size(), 0.0);

    // iterate over all lines along `axis`
    const int na = axis == 0 ? n1 : n0;
    const int nb = axis == 2 ? n1 : n2;
    parallel_for_each(static_cast<std::size_t>(na) * nb, [&](std::size_t line) {
        const int a = static_cast<int>(line) / nb;
        const int b = static_cast<int>(line) % nb;
        long base = 0;
        if (axis == 0) base = static_cast<long>(a) * n2 + b;          // vary i
        else if (axis == 1) base = static_cast<long>(a) * n1 * n2 + b;  // vary j
        else base = static_cast<long>(a) * n1 * n2 + static_cast<long>(b) * n2;  // vary k
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            if (periodic) {
                static const double wc[5] = {1, -8, 0, 8, -1};
                for (int m = 0; m < 5; ++m) {
                    int idx = i - 2 + m;
                    idx = ((idx % n) + n) % n;
                    acc += wc[m] * in[base + static_cast<long>(idx) * s];
                }
            } else {
                const Stencil5 st = stencil_for(i, n);
                for (int m = 0; m < 5; ++m)
                    acc += st.w[m] * in[base + static_cast<long>(i + st.shift + m) * s];
            }
            out[base + static_cast<long>(i) * s] = acc * inv12h;
        }
    });
}

void derivative_axis2(const Grid2& g, const std::vector<double>& in, int axis,
                      std::vector<double>& out) {
    const int n = axis == 0 ? g.nr : g.nz;
    const int nlines = axis == 0 ? g.nz : g.nr;
    const long s = axis == 0 ? g.nz : 1;
    const double inv12h = 1.0 / (12.0 * (axis == 0 ? g.dr : g.dz));
    out.assign(in.size(), 0.0);
    for (int line = 0; line < nlines; ++line) {
        const long base = axis == 0 ? line : static_cast<long>(line) * g.nz;
        for (int i = 0; i < n; ++i) {
            const Stencil5 st = stencil_for(i, n);
            double acc = 0.0;
            for (int m = 0; m < 5; ++m)
                acc += st.w[m] * in[base + static_cast<long>(i + st.shift + m) * s];
            out[base + static_cast<long>(i) * s] = acc * inv12h;
        }
    }
}

}  // namespace ssguard::detail
