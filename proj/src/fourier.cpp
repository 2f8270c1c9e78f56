#include "ultrawave/fourier.hpp"

#include <cmath>

namespace ultrawave {

namespace {

TestFunction dual_table(const TestFunction& f) {
    return TestFunction(f.prime(), f.dim(), f.resolution(), f.support());
}

TestFunction transform_direct(const TestFunction& f, int sign) {
    TestFunction out = dual_table(f);
    const auto& grid = f.grid();
    const int n = f.dim();
    const std::int64_t side = grid.side();
    const std::int64_t size = grid.size();
    const RootTable roots(side, sign);
    const double volume = grid.cell_volume_double();

    std::vector<std::int64_t> digits(static_cast<std::size_t>(size * n));
    for (std::int64_t i = 0; i < size; ++i)
        grid.digits(i, std::span(digits).subspan(static_cast<std::size_t>(i * n), static_cast<std::size_t>(n)));

    parallel_for(size, [&](std::int64_t d) {
        const std::int64_t* dd = &digits[static_cast<std::size_t>(d * n)];
        CompensatedSum acc;
        for (std::int64_t c = 0; c < size; ++c) {
            const complex v = f[c];
            if (v == complex{}) continue;
            const std::int64_t* cc = &digits[static_cast<std::size_t>(c * n)];
            std::int64_t phase = 0;
            for (int j = 0; j < n; ++j) phase = (phase + cc[j] * dd[j]) % side;
            acc.add(roots[phase] * v);
        }
        out[d] = acc.value() * volume;
    });
    return out;
}

// Radix-p decimation in time: out[K] = sum_j in[j*stride] w^{jK}, w = roots[order/len].
void radix_p_dft(const complex* in, std::int64_t stride, complex* out, std::int64_t len, int p,
                 const RootTable& roots, std::vector<complex>& scratch) {
    if (len == 1) {
        out[0] = in[0];
        return;
    }
    const std::int64_t sub = len / p;
    for (int r = 0; r < p; ++r) radix_p_dft(in + r * stride, stride * p, out + r * sub, sub, p, roots, scratch);
    const std::int64_t step = roots.order() / len;
    complex* y = scratch.data();
    for (std::int64_t k = 0; k < sub; ++k) {
        for (int r = 0; r < p; ++r) y[r] = out[r * sub + k];
        for (int s = 0; s < p; ++s) {
            const std::int64_t K = k + sub * s;
            complex acc = y[0];
            for (int r = 1; r < p; ++r) acc += roots[(r * K % len) * step] * y[r];
            out[s * sub + k] = acc;
        }
    }
}

TestFunction transform_fast(const TestFunction& f, int sign) {
    TestFunction out = dual_table(f);
    out.values() = f.values();
    const auto& grid = f.grid();
    const int n = f.dim();
    const int p = f.prime();
    const std::int64_t side = grid.side();
    const RootTable roots(side, sign);

    std::int64_t stride = grid.size();
    for (int axis = 0; axis < n; ++axis) {
        stride /= side;
        const std::int64_t lines = grid.size() / side;
        auto& values = out.values();
        parallel_for(lines, [&](std::int64_t line) {
            const std::int64_t outer = line / stride, inner = line % stride;
            const std::int64_t base = outer * stride * side + inner;
            std::vector<complex> in(static_cast<std::size_t>(side)), res(static_cast<std::size_t>(side));
            std::vector<complex> scratch(static_cast<std::size_t>(p));
            for (std::int64_t k = 0; k < side; ++k) in[static_cast<std::size_t>(k)] = values[static_cast<std::size_t>(base + k * stride)];
            radix_p_dft(in.data(), 1, res.data(), side, p, roots, scratch);
            for (std::int64_t k = 0; k < side; ++k) values[static_cast<std::size_t>(base + k * stride)] = res[static_cast<std::size_t>(k)];
        });
    }
    out *= grid.cell_volume_double();
    return out;
}

}  // namespace

TestFunction fourier_direct(const TestFunction& f) { return transform_direct(f, +1); }
TestFunction inverse_fourier_direct(const TestFunction& g) { return transform_direct(g, -1); }
TestFunction fourier_fast(const TestFunction& f) { return transform_fast(f, +1); }
TestFunction inverse_fourier_fast(const TestFunction& g) { return transform_fast(g, -1); }

TestFunction fourier(const TestFunction& f) { return fourier_fast(f); }
TestFunction inverse_fourier(const TestFunction& g) { return inverse_fourier_fast(g); }

double fourier_outside_support(const TestFunction& f, int margin) {
    // Resolving f on a finer grid widens the dual support to B_{l+margin}.
    const TestFunction wide = fourier(f.refine(f.support(), f.resolution() + margin));
    double worst = 0.0;
    for (std::int64_t i = 0; i < wide.size(); ++i) {
        const auto k = wide.grid().norm_exponent(i);
        if (k && *k > f.resolution()) worst = std::max(worst, std::abs(wide[i]));
    }
    return worst;
}

}  // namespace ultrawave
