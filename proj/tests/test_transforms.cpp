#include <doctest.h>

#include "amalgam/errors.hpp"
#include "amalgam/transforms.hpp"
#include "support.hpp"

using namespace amalgam;
using testsupport::kPi;

namespace {

// Box on [-1/2, 1/2] with half weight at the jumps (trapezoid rule).
SampledFunction trapezoid_box(const Grid& g) {
    return SampledFunction::from_function(g, [](double x) {
        const double a = std::abs(x);
        return Complex(a < 0.5 ? 1.0 : a == 0.5 ? 0.5 : 0.0);
    });
}

} // namespace

TEST_SUITE("transforms") {

TEST_CASE("fourier of Gaussians") {
    const Grid g(1, 4096, 1.0 / 64);
    const auto f = make_gaussian(g, {1.0});
    const auto F = fourier(f);
    CHECK(F.grid().spacing() == doctest::Approx(1.0 / 64));
    const auto expected = SampledFunction::from_function(F.grid(), [](double s) { return Complex(std::exp(-kPi * s * s)); });
    CHECK(testsupport::sup_diff(F, expected) <= 1e-8);

    for (double lambda : {0.5, 2.0, 3.0}) {
        const auto Fl = fourier(make_gaussian(g, {lambda}));
        const auto e = SampledFunction::from_function(
            Fl.grid(), [&](double s) { return Complex(std::pow(lambda, -0.5) * std::exp(-kPi * s * s / lambda)); });
        CHECK(testsupport::sup_diff(Fl, e) <= 1e-8);
    }
}

TEST_CASE("fourier of a box") {
    const Grid g(1, 16384, 1.0 / 1024);
    const auto F = fourier(trapezoid_box(g));
    const Grid& xi = F.grid();
    double worst = 0.0;
    for (std::size_t k = 0; k < xi.samples_per_axis(); ++k) {
        const double s = xi.coordinate(k);
        if (std::abs(s) > 4.0) continue;
        const double sinc = s == 0.0 ? 1.0 : std::sin(kPi * s) / (kPi * s);
        worst = std::max(worst, std::abs(F[k] - Complex(sinc)));
    }
    CHECK(worst <= 1e-3);
}

TEST_CASE("inverse_fourier") {
    const Grid g(1, 1024, 1.0 / 32);
    const auto f = testsupport::sample_mixture(g, testsupport::random_mixture(11));
    CHECK(testsupport::sup_diff(inverse_fourier(fourier(f)), f) <= 1e-12);
    const auto spectrum = testsupport::sample_mixture(g.reciprocal(), testsupport::random_mixture(12));
    CHECK(testsupport::sup_diff(fourier(inverse_fourier(spectrum)), spectrum) <= 1e-12);

    const auto gauss_hat = SampledFunction::from_function(g.reciprocal(), [](double s) { return Complex(std::exp(-kPi * s * s)); });
    CHECK(testsupport::sup_diff(inverse_fourier(gauss_hat, g), make_gaussian(g, {1.0})) <= 1e-12);
    CHECK_THROWS_AS(inverse_fourier(gauss_hat, Grid(1, 1024, 1.0 / 16)), GridMismatch);
}

TEST_CASE("convolve") {
    const Grid g(1, 4096, 1.0 / 64);
    const auto phi = make_gaussian(g, {1.0});
    const auto c = convolve(phi, phi);
    const auto expected = make_gaussian(g, {0.5}).scaled(std::pow(2.0, -0.5));
    CHECK(testsupport::sup_diff(c, expected) / expected.max_abs() <= 1e-6);

    const Grid fine(1, 4096, 1.0 / 512);
    const auto box = trapezoid_box(fine);
    const auto tri = convolve(box, box);
    const auto tri_expected = SampledFunction::from_function(fine, [](double x) { return Complex(std::max(0.0, 1.0 - std::abs(x))); });
    // discrete sum of two step functions: first order in dx at the kinks
    CHECK(testsupport::sup_diff(tri, tri_expected) <= fine.spacing());

    const Grid wide(1, 16384, 1.0 / 1024);
    const double lambda = 1e4;
    const auto mollifier = make_gaussian(wide, {lambda}).scaled(std::sqrt(lambda));
    const auto f = make_gaussian(wide, {1.0});
    CHECK(testsupport::sup_diff(convolve(f, mollifier), f) <= 1e-2);

    const auto flat = SampledFunction::from_function(g, [](double) { return Complex(1.0); });
    CHECK_THROWS_AS(convolve(flat, phi), TailTruncation);
    CHECK_THROWS_AS(convolve(phi, make_gaussian(Grid(1, 2048, 1.0 / 64), {1.0})), GridMismatch);
}

TEST_CASE("pointwise_product") {
    const Grid g(1, 512, 1.0 / 32);
    for (double lambda : {0.5, 1.0, 3.0}) {
        const auto f = make_gaussian(g, {lambda});
        const auto prod = pointwise_product(f, f);
        const auto expected = make_gaussian(g, {2 * lambda});
        for (std::size_t i = 0; i < g.samples_per_axis(); ++i) {
            CHECK(std::abs(prod[i] - expected[i]) <= 1e-15 * std::max(1e-300, std::abs(expected[i])) + 1e-300);
        }
    }
    const auto f = testsupport::sample_mixture(g, testsupport::random_mixture(5));
    const auto one = SampledFunction::from_function(g, [](double) { return Complex(1.0); });
    CHECK(testsupport::sup_diff(pointwise_product(f, one), f) == 0.0);
    CHECK(pointwise_product(f, SampledFunction::zeros(g)).max_abs() == 0.0);
    CHECK_THROWS_AS(pointwise_product(f, SampledFunction::zeros(Grid(1, 256, 1.0 / 32))), GridMismatch);
}

TEST_CASE("stft of a Gaussian against its closed form") {
    const Grid g(1, 256, 1.0 / 16);
    const auto f = make_gaussian(g, {1.0});
    const auto V = stft(f, f);
    double worst = 0.0;
    for (std::size_t i = 0; i < 256; ++i) {
        for (std::size_t k = 0; k < 256; ++k) {
            const double x = V.x_grid.coordinate(i), s = V.xi_grid.coordinate(k);
            const double expected = std::pow(2.0, -0.5) * std::exp(-kPi * (x * x + s * s) / 2);
            worst = std::max(worst, std::abs(std::abs(V.at(i, k)) - expected));
        }
    }
    CHECK(worst <= 1e-6);

    // Origin value is the discrete inner product.
    const auto h = testsupport::sample_mixture(g, testsupport::random_mixture(8));
    const auto W = stft(h, f);
    Complex inner = 0.0;
    for (std::size_t j = 0; j < 256; ++j) inner += h[j] * std::conj(f[j]);
    inner *= g.spacing();
    CHECK(std::abs(W.at(g.origin_index(), g.reciprocal().origin_index()) - inner) <= 1e-14);
}

TEST_CASE("stft orthogonality relation") {
    const Grid g(1, 256, 1.0 / 16);
    for (unsigned seed : {1u, 2u, 3u}) {
        const auto f = testsupport::sample_mixture(g, testsupport::random_mixture(seed));
        const auto w = make_gaussian(g, {1.5});
        const auto V = stft(f, w);
        double s = 0.0;
        for (const auto& v : V.values) s += std::norm(v);
        const double lhs = std::sqrt(s * g.spacing() * V.xi_grid.spacing());
        CHECK(testsupport::rel(lhs, testsupport::l2(f) * testsupport::l2(w)) <= 1e-6);
    }
}

TEST_CASE("Plancherel") {
    const Grid g(1, 1024, 1.0 / 32);
    for (unsigned seed = 20; seed < 26; ++seed) {
        const auto f = testsupport::sample_mixture(g, testsupport::random_mixture(seed, 4));
        CHECK(testsupport::rel(testsupport::l2(fourier(f)), testsupport::l2(f)) <= 1e-10);
    }
    const auto c = make_complex_gaussian(g, 0.5, 2.0);
    CHECK(testsupport::rel(testsupport::l2(fourier(c)), testsupport::l2(c)) <= 1e-10);
}

TEST_CASE("convolution theorem") {
    const Grid g(1, 1024, 1.0 / 32);
    for (unsigned seed = 30; seed < 34; ++seed) {
        const auto f = testsupport::sample_mixture(g, testsupport::random_mixture(seed));
        const auto h = testsupport::sample_mixture(g, testsupport::random_mixture(seed + 100));
        const auto lhs = fourier(convolve(f, h));
        const auto rhs = pointwise_product(fourier(f), fourier(h));
        CHECK(testsupport::l2_diff(lhs, rhs) / testsupport::l2(rhs) <= 1e-8);
    }
}

TEST_CASE("stft covariance under translation") {
    const Grid g(1, 256, 1.0 / 16);
    const auto f = testsupport::sample_mixture(g, testsupport::random_mixture(41));
    const auto w = make_gaussian(g, {1.0});
    const auto V = stft(f, w);
    for (int shift : {3, -5, 16}) {
        const auto Vt = stft(translate(f, shift * g.spacing()), w);
        double worst = 0.0;
        for (std::size_t i = 64; i < 192; ++i) {
            for (std::size_t k = 0; k < 256; ++k) {
                worst = std::max(worst, std::abs(std::abs(Vt.at(i, k)) - std::abs(V.at(i - shift, k))));
            }
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("for_each_stft_row agrees with stft") {
    const Grid g(1, 128, 1.0 / 8);
    const auto f = testsupport::sample_mixture(g, testsupport::random_mixture(50));
    const auto w = make_gaussian(g, {1.0});
    const auto V = stft(f, w);
    double worst = 0.0;
    for_each_stft_row(f, w, [&](std::size_t i, std::span<const Complex> row) {
        for (std::size_t k = 0; k < row.size(); ++k) worst = std::max(worst, std::abs(row[k] - V.at(i, k)));
    });
    CHECK(worst == 0.0);
}

} // TEST_SUITE
