#include "amalgam/transforms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "amalgam/errors.hpp"
#include "amalgam/fft.hpp"

namespace amalgam {

namespace {

// (-1)^(i+j) for the centred-grid phase; N is a multiple of 4, so the
// remaining constant phase e^{-iπN/2} equals one.
double checker(std::size_t i) noexcept { return (i & 1U) ? -1.0 : 1.0; }

std::vector<std::size_t> extents_of(const Grid& g) {
    return g.dimension() == 1 ? std::vector<std::size_t>{g.samples_per_axis()}
                              : std::vector<std::size_t>{g.samples_per_axis(), g.samples_per_axis()};
}

double sign_of_index(const Grid& g, std::size_t flat) {
    if (g.dimension() == 1) return checker(flat);
    const std::size_t n = g.samples_per_axis();
    return checker(flat / n + flat % n);
}

SampledFunction centred_dft(const SampledFunction& f, fft::Direction dir, double scale, const Grid& out_grid) {
    const Grid& g = f.grid();
    std::vector<Complex> in(f.size());
    for (std::size_t j = 0; j < in.size(); ++j) in[j] = sign_of_index(g, j) * f[j];
    std::vector<Complex> out(f.size());
    auto ext = extents_of(g);
    fft::transform(in, out, ext, dir);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] *= scale * sign_of_index(g, k);
    return SampledFunction(out_grid, std::move(out));
}

// Index range [first, last] of nonzero samples; nullopt for the zero function.
std::optional<std::pair<std::size_t, std::size_t>> nonzero_range(std::span<const Complex> v) {
    auto nz = [](const Complex& z) { return z != Complex(0.0); };
    auto first = std::find_if(v.begin(), v.end(), nz);
    if (first == v.end()) return std::nullopt;
    auto last = std::find_if(v.rbegin(), v.rend(), nz);
    return std::pair<std::size_t, std::size_t>{static_cast<std::size_t>(first - v.begin()),
                                               static_cast<std::size_t>(v.rend() - last - 1)};
}

} // namespace

PhaseSpaceArray::PhaseSpaceArray(Grid x, Grid xi, std::vector<Complex> v)
    : x_grid(x), xi_grid(xi), values(std::move(v)) {
    if (!xi_grid.compatible(x_grid.reciprocal())) throw GridMismatch("ξ-grid is not reciprocal to the x-grid");
    if (values.size() != x_grid.point_count() * xi_grid.point_count()) {
        throw InvalidParam("phase-space array size does not match its grids");
    }
}

SampledFunction fourier(const SampledFunction& f) {
    const Grid& g = f.grid();
    return centred_dft(f, fft::Direction::Forward, std::pow(g.spacing(), g.dimension()), g.reciprocal());
}

SampledFunction inverse_fourier(const SampledFunction& spectrum) {
    const Grid& g = spectrum.grid();
    return centred_dft(spectrum, fft::Direction::Backward, std::pow(g.spacing(), g.dimension()), g.reciprocal());
}

SampledFunction inverse_fourier(const SampledFunction& spectrum, const Grid& target) {
    require_same_grid(spectrum.grid().reciprocal(), target, "inverse_fourier");
    SampledFunction f = inverse_fourier(spectrum);
    return SampledFunction(target, std::vector<Complex>(f.values().begin(), f.values().end()));
}

SampledFunction convolve(const SampledFunction& f, const SampledFunction& g) {
    require_same_grid(f.grid(), g.grid(), "convolve");
    require_tail(f, "convolve (first operand)");
    require_tail(g, "convolve (second operand)");
    const Grid& grid = f.grid();
    const int d = grid.dimension();
    const std::size_t n = grid.samples_per_axis();
    const std::size_t m = 2 * n;
    std::vector<std::size_t> ext = d == 1 ? std::vector<std::size_t>{m} : std::vector<std::size_t>{m, m};
    const std::size_t total = d == 1 ? m : m * m;

    auto padded = [&](const SampledFunction& s) {
        std::vector<Complex> p(total);
        if (d == 1) {
            std::copy(s.values().begin(), s.values().end(), p.begin());
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                std::copy_n(s.values().begin() + static_cast<std::ptrdiff_t>(i * n), n,
                            p.begin() + static_cast<std::ptrdiff_t>(i * m));
            }
        }
        return p;
    };
    std::vector<Complex> a = padded(f), b = padded(g), fa(total), fb(total);
    fft::transform(a, fa, ext, fft::Direction::Forward);
    fft::transform(b, fb, ext, fft::Direction::Forward);
    for (std::size_t k = 0; k < total; ++k) fa[k] *= fb[k];
    fft::transform(fa, a, ext, fft::Direction::Backward);

    // Linear-convolution index n' = i + N/2 holds the sample at x_i.
    const double scale = std::pow(grid.spacing(), d) / static_cast<double>(total);
    const std::size_t off = n / 2;
    std::vector<Complex> out(grid.point_count());
    if (d == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = scale * a[i + off];
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] = scale * a[(i + off) * m + (j + off)];
        }
    }
    return SampledFunction(grid, std::move(out));
}

SampledFunction pointwise_product(const SampledFunction& f, const SampledFunction& g) {
    require_same_grid(f.grid(), g.grid(), "pointwise_product");
    std::vector<Complex> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] * g[i];
    return SampledFunction(f.grid(), std::move(out));
}

void for_each_stft_row(const SampledFunction& f, const SampledFunction& g,
                       const std::function<void(std::size_t, std::span<const Complex>)>& visit) {
    require_same_grid(f.grid(), g.grid(), "stft");
    const Grid& grid = f.grid();
    if (grid.dimension() != 1) throw InvalidParam("the short-time Fourier transform is implemented for d = 1");
    const auto fr = nonzero_range(f.values());
    const auto gr = nonzero_range(g.values());
    if (!fr || !gr) return;

    const long long n = static_cast<long long>(grid.samples_per_axis());
    const long long half = n / 2;
    const double dx = grid.spacing();
    std::vector<Complex> signed_f(f.size());
    for (std::size_t j = 0; j < signed_f.size(); ++j) signed_f[j] = dx * checker(j) * f[j];
    std::vector<Complex> conj_g(g.size());
    for (std::size_t j = 0; j < conj_g.size(); ++j) conj_g[j] = std::conj(g[j]);

    std::vector<Complex> buf(f.size()), row(f.size());
    const std::array<std::size_t, 1> ext{static_cast<std::size_t>(n)};
    const long long fa = static_cast<long long>(fr->first), fb = static_cast<long long>(fr->second);
    const long long ga = static_cast<long long>(gr->first), gb = static_cast<long long>(gr->second);
    for (long long i = 0; i < n; ++i) {
        // Translated window occupies [ga + s, gb + s] with s = i - N/2.
        const long long s = i - half;
        const long long lo = std::max(fa, ga + s), hi = std::min(fb, gb + s);
        if (lo > hi) continue;
        std::fill(buf.begin(), buf.end(), Complex(0.0));
        for (long long j = lo; j <= hi; ++j) buf[j] = signed_f[j] * conj_g[j - s];
        fft::transform(buf, row, ext, fft::Direction::Forward);
        for (std::size_t k = 0; k < row.size(); ++k) row[k] *= checker(k);
        visit(static_cast<std::size_t>(i), row);
    }
}

PhaseSpaceArray stft(const SampledFunction& f, const SampledFunction& g) {
    require_same_grid(f.grid(), g.grid(), "stft");
    const Grid& grid = f.grid();
    if (grid.dimension() != 1) throw InvalidParam("the short-time Fourier transform is implemented for d = 1");
    const std::size_t n = grid.samples_per_axis();
    std::vector<Complex> values(n * n);
    for_each_stft_row(f, g, [&](std::size_t i, std::span<const Complex> row) {
        std::copy(row.begin(), row.end(), values.begin() + static_cast<std::ptrdiff_t>(i * n));
    });
    return PhaseSpaceArray(grid, grid.reciprocal(), std::move(values));
}

} // namespace amalgam
