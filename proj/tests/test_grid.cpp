#include <doctest.h>

#include <fstream>
#include <sstream>

#include "amalgam/errors.hpp"
#include "amalgam/grid.hpp"
#include "support.hpp"

using namespace amalgam;
using testsupport::kPi;

TEST_SUITE("grid_core") {

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(Grid(1, 4, 0.1), InvalidParam);
    CHECK_THROWS_AS(Grid(1, 24, 0.1), InvalidParam);
    CHECK_THROWS_AS(Grid(1, 64, 0.0), InvalidParam);
    CHECK_THROWS_AS(Grid(3, 64, 0.1), InvalidParam);
    const Grid g(1, 64, 0.125);
    CHECK(g.coordinate(g.origin_index()) == 0.0);
    CHECK(g.coordinate(0) == -4.0);
    CHECK(g.reciprocal().spacing() == doctest::Approx(0.125));
    CHECK(Grid(2, 16, 0.5).point_count() == 256);
}

TEST_CASE("exponents") {
    CHECK(Exponent::parse("inf").is_infinite());
    CHECK(Exponent::parse("3/2").value() == 1.5);
    CHECK(Exponent::parse("1").conjugate().is_infinite());
    CHECK(Exponent::parse("inf").conjugate().value() == 1.0);
    CHECK(Exponent::parse("4").conjugate().value() == doctest::Approx(4.0 / 3.0));
    CHECK(Exponent::infinity().reciprocal() == 0.0);
    CHECK_THROWS_AS(Exponent(0.5), InvalidParam);
    CHECK_THROWS_AS(Exponent::parse("abc"), InvalidParam);
}

TEST_CASE("make_gaussian") {
    const Grid g(1, 512, 1.0 / 32);
    const auto f = make_gaussian(g, {1.0});
    const std::size_t o = g.origin_index();
    CHECK(f[o].real() == 1.0);
    CHECK(f[o + 32].real() == doctest::Approx(std::exp(-kPi)).epsilon(1e-12));
    CHECK(std::exp(-kPi) == doctest::Approx(0.0432139).epsilon(1e-5));

    const auto u0 = make_gaussian(g, {4.0, GaussianConvention::U0});
    const auto phi = make_gaussian(g, {16.0, GaussianConvention::Phi});
    CHECK(testsupport::sup_diff(u0, phi) == 0.0);

    CHECK_THROWS_AS(make_gaussian(Grid(1, 16, 0.25), {1.0}), TailTruncation);
    CHECK_THROWS_AS(make_gaussian(g, {0.0}), InvalidParam);
    CHECK_THROWS_AS(make_gaussian(g, {-1.0}), InvalidParam);
}

TEST_CASE("make_complex_gaussian") {
    const Grid g(1, 512, 1.0 / 32);
    const std::size_t o = g.origin_index();
    const auto real = make_complex_gaussian(g, 1.0, 0.0);
    CHECK(std::abs(real[o] - Complex(1.0)) < 1e-15);
    CHECK(testsupport::sup_diff(real, make_gaussian(g, {1.0})) < 1e-15);

    const auto c = make_complex_gaussian(g, 1.0, 1.0);
    const Complex expected = std::pow(2.0, -0.25) * std::polar(1.0, -kPi / 8);
    CHECK(std::abs(c[o] - expected) < 1e-14);
    // Off-origin values against a direct evaluation.
    for (std::size_t i = 0; i < g.samples_per_axis(); i += 37) {
        CHECK(std::abs(c[i] - testsupport::complex_gaussian_value(1.0, 1.0, g.coordinate(i))) < 1e-14);
    }

    const auto cm = make_complex_gaussian(g, 1.0, -1.0);
    CHECK(testsupport::sup_diff(c.conj(), cm) < 1e-15);
    CHECK_THROWS_AS(make_complex_gaussian(g, 0.0, 1.0), InvalidParam);
    CHECK_THROWS_AS(make_complex_gaussian(Grid(1, 16, 0.25), 2.0, 1.0), TailTruncation);
}

TEST_CASE("make_witness") {
    const Grid g(1, 256, 1.0 / 64);
    const std::size_t o = g.origin_index();
    const auto small = make_witness(g, {WitnessKind::SmallLambda, Exponent(2.0), 0.1});
    CHECK(small[o + 64].real() == doctest::Approx(1.0));
    CHECK(small[o + 16].real() == doctest::Approx(std::pow(0.25, -0.4)).epsilon(1e-12));
    CHECK(small[o + 16].real() == doctest::Approx(1.7411).epsilon(1e-4));
    CHECK(small[o + 65].real() == 0.0);
    CHECK(small[o].real() == doctest::Approx(std::pow(0.5 / 64, -0.4)));

    const auto large = make_witness(g, {WitnessKind::LargeLambda, Exponent(2.0), 0.1});
    CHECK(large[o + 32].real() == 0.0);
    CHECK(large[o + 128 - 1].real() == doctest::Approx(std::pow(127.0 / 64, -0.6)));

    for (const auto* f : {&small, &large}) {
        for (std::size_t i = 1; i < g.samples_per_axis(); ++i) CHECK((*f)[i] == (*f)[g.samples_per_axis() - i]);
    }
    CHECK_THROWS_AS(make_witness(g, {WitnessKind::SmallLambda, Exponent(2.0), 0.0}), InvalidParam);
}

TEST_CASE("dilate") {
    const Grid g(1, 1024, 1.0 / 64);
    const auto f = make_gaussian(g, {1.0});
    CHECK(testsupport::sup_diff(dilate(f, 1.0), f) == 0.0);
    CHECK(testsupport::sup_diff(dilate(f, 2.0), make_gaussian(g, {4.0})) <= 1e-3);

    // Interpolation error of a linear interpolant is below h² max|f''| / 8.
    for (double lambda : {1.5, 0.7, 3.0}) {
        const double h = g.spacing();
        const double bound = h * h / 8 * 2 * kPi * std::max(lambda * lambda, 1.0 / (lambda * lambda));
        CHECK(testsupport::sup_diff(dilate(dilate(f, lambda), 1.0 / lambda), f) <= 2 * bound);
    }

    const auto box = make_indicator(g, -1.0, 1.0);
    const auto half = make_indicator(g, -0.5, 0.5);
    const auto d = dilate(box, 2.0);
    int mismatches = 0;
    for (std::size_t i = 0; i < g.samples_per_axis(); ++i) mismatches += std::abs(d[i] - half[i]) > 1e-12;
    CHECK(mismatches <= 2);

    CHECK_THROWS_AS(dilate(f, 0.0), InvalidParam);
}

TEST_CASE("translate and modulate") {
    const Grid g(1, 256, 1.0 / 16);
    const auto f = testsupport::sample_mixture(g, testsupport::random_mixture(3));
    CHECK(testsupport::sup_diff(translate(f, 0.0), f) == 0.0);
    CHECK(testsupport::sup_diff(modulate(f, 0.0), f) == 0.0);
    const auto m = modulate(f, 1.37);
    for (std::size_t i = 0; i < g.samples_per_axis(); ++i) CHECK(std::abs(m[i]) == doctest::Approx(std::abs(f[i])));

    const auto t = translate(f, 0.5);
    CHECK(t[100 + 8] == f[100]);
    CHECK(t[3] == Complex(0.0));
    const auto c = translate(f, 0.5, ShiftMode::Circular);
    CHECK(c[3] == f[256 - 8 + 3]);
    CHECK_THROWS_AS(translate(f, 0.03), OffGridShift);
}

TEST_CASE("binary format") {
    const Grid g(1, 8, 0.5);
    const auto f = SampledFunction::from_function(g, [](double x) { return Complex(std::exp(-kPi * x * x)); });

    std::ifstream golden(AMALGAM_TEST_DATA "/gaussian_n8.bin", std::ios::binary);
    REQUIRE(golden);
    std::stringstream golden_bytes;
    golden_bytes << golden.rdbuf();

    std::stringstream written;
    write_binary(f, written);
    CHECK(written.str() == golden_bytes.str());

    const auto back = read_binary(AMALGAM_TEST_DATA "/gaussian_n8.bin");
    CHECK(back.grid().samples_per_axis() == 8);
    CHECK(back.grid().spacing() == 0.5);
    CHECK(testsupport::sup_diff(back, f) == 0.0);

    std::stringstream bad("NOTMAGIC........................");
    CHECK_THROWS_AS(read_binary(bad), Error);
}

} // TEST_SUITE
