#include <doctest.h>

#include "amalgam/errors.hpp"
#include "amalgam/gaussian_oracle.hpp"
#include "support.hpp"

using namespace amalgam;
using testsupport::kPi;

namespace {

const std::vector<Exponent> kLattice = {Exponent(1.0), Exponent(1.5), Exponent(2.0), Exponent(4.0), Exponent::infinity()};

double predicted(Scenario s, double p, double q = 2.0, double eps = 0.0) {
    auto e = [](double v) { return std::isinf(v) ? Exponent::infinity() : Exponent(v); };
    return theoretical_exponents(s, {{e(p), e(q)}, 1, eps}).value;
}

} // namespace

TEST_SUITE("gaussian_oracle") {

TEST_CASE("W(FLp,Lq) closed form: hand-evaluated values") {
    CHECK(amalgam_flp_norm_exact({1.0, 0.0, 1}, Exponent(2.0), Exponent(2.0)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(amalgam_flp_norm_exact({1.0, 0.0, 1}, Exponent(1.0), Exponent(1.0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    for (double b : {0.0, 1.0, 10.0}) {
        CHECK(amalgam_flp_norm_exact({1.0, b, 1}, Exponent(2.0), Exponent(2.0)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(amalgam_flp_norm_exact({0.0, 0.0, 1}, Exponent(2.0), Exponent(2.0)), InvalidParam);
    CHECK_THROWS_AS(amalgam_flp_norm_exact({1.0, 0.0, 0}, Exponent(2.0), Exponent(2.0)), InvalidParam);
}

TEST_CASE("W(FLp,Lq) closed form: structure") {
    for (double a : {0.25, 1.0, 3.0}) {
        for (double b : {0.5, 2.0}) {
            for (Exponent p : kLattice) {
                for (Exponent q : kLattice) {
                    const double v = amalgam_flp_norm_exact({a, b, 1}, p, q);
                    CHECK(v == doctest::Approx(amalgam_flp_norm_exact({a, -b, 1}, p, q)).epsilon(1e-15));
                    CHECK(amalgam_flp_norm_exact({a, b, 2}, p, q) == doctest::Approx(v * v).epsilon(1e-13));
                    CHECK(amalgam_flp_norm_exact({a, b, 3}, p, q) == doctest::Approx(v * v * v).epsilon(1e-13));
                }
                CHECK(amalgam_flp_norm_exact({a, b, 1}, p, p) == doctest::Approx(amalgam_flp_norm_exact({a, 0.0, 1}, p, p) *
                                                                                   std::pow(((a + 1) * (a + 1) + b * b) / ((a + 1) * (a + 1)),
                                                                                            0.5 * (p.reciprocal() - 0.5)))
                                                                   .epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("W(FLp,Lq) closed form against direct quadrature") {
    // For G_c with window e^{-π|·|²}: F(x) = ‖ (G_c T_x g)^ ‖_{L^p}, evaluated in
    // closed form per x as a Gaussian integral, then the outer L^q by Simpson.
    for (double a : {0.5, 2.0}) {
        for (double b : {0.0, 1.0}) {
            for (double p : {1.0, 2.0, 4.0}) {
                for (double q : {1.0, 2.0}) {
                    // G_c(t) e^{-π(t-x)²} = K(x) e^{-π s (t - m)²} with s = 1/c + 1.
                    const Complex c(a, b);
                    const Complex s = 1.0 / c + 1.0;
                    auto local = [&](double x) {
                        const Complex m = x / s;
                        const Complex logK = -0.5 * std::log(c) - kPi * x * x + kPi * s * m * m;
                        // (e^{-π s (t-m)²})^(ξ) = s^{-1/2} e^{-π ξ²/s} e^{-2πi m ξ}; its modulus is
                        // |s|^{-1/2} exp(-π ξ² Re(1/s) + 2π ξ Im m), a real Gaussian in ξ.
                        const double A = (1.0 / s).real();
                        const double B = 2 * kPi * m.imag();
                        // log ∫ exp(p(-π A ξ² + B ξ)) dξ = -log(pA)/2 + p B² / (4πA)
                        const double log_integral = -0.5 * std::log(p * A) + p * B * B / (4 * kPi * A);
                        return std::exp(logK.real() - 0.5 * std::log(std::abs(s)) + log_integral / p);
                    };
                    const double expected = testsupport::lp_quadrature(local, q, 30.0);
                    CHECK(amalgam_flp_norm_exact({a, b, 1}, Exponent(p), Exponent(q)) == doctest::Approx(expected).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("complex Gaussian Lp closed form against quadrature") {
    for (double a : {0.5, 1.0, 2.0}) {
        for (double b : {0.0, 1.0, -3.0}) {
            for (double p : {1.0, 2.0, 3.0}) {
                const double q = testsupport::lp_quadrature([&](double x) { return std::abs(testsupport::complex_gaussian_value(a, b, x)); }, p, 40.0);
                const NormSpec spec{Space::Lp, {Exponent(p), Exponent(p)}, std::nullopt};
                CHECK(complex_gaussian_norm_exact(Complex(a, b), spec) == doctest::Approx(q).epsilon(1e-9));
            }
        }
    }
    const NormSpec box{Space::WLpLq, {Exponent(2.0), Exponent(2.0)}, Window::Box};
    CHECK_THROWS_AS(complex_gaussian_norm_exact(Complex(1.0, 0.0), box), InvalidParam);
}

TEST_CASE("Gaussian modulation norms") {
    const auto at1 = modulation_norm_gaussian_exact(1.0, Exponent(2.0), Exponent(2.0));
    CHECK(at1.exact == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(at1.equivalent_expression == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(at1.unit_window == doctest::Approx(std::sqrt(0.5) * std::pow(2.0, 0.25)).epsilon(1e-15));
    for (double lambda : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
        const auto v = modulation_norm_gaussian_exact(lambda, Exponent(2.0), Exponent(2.0));
        CHECK(v.exact / v.equivalent_expression == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    }
    for (Exponent p : kLattice) {
        for (Exponent q : kLattice) {
            auto approx = [&](double l) { return modulation_norm_gaussian_exact(l, p, q).equivalent_expression; };
            auto exact = [&](double l) { return modulation_norm_gaussian_exact(l, p, q).exact; };
            CHECK(testsupport::slope(approx, 1e-9, 1e-8) == doctest::Approx(-0.5 * p.reciprocal()).epsilon(1e-6));
            CHECK(testsupport::slope(exact, 1e-9, 1e-8) == doctest::Approx(-0.5 * p.reciprocal()).epsilon(1e-6));
            CHECK(testsupport::slope(approx, 1e8, 1e9) == doctest::Approx(-0.5 * (1 - q.reciprocal())).epsilon(1e-6));
            CHECK(testsupport::slope(exact, 1e8, 1e9) == doctest::Approx(-0.5 * (1 - q.reciprocal())).epsilon(1e-6));
            // the two expressions differ by a bounded factor
            for (double l : {1e-6, 1e-2, 1.0, 1e2, 1e6}) {
                const double r = exact(l) / approx(l);
                CHECK(r > 0.1);
                CHECK(r < 10.0);
            }
        }
    }
    CHECK(unit_window_constant(1) == doctest::Approx(std::pow(2.0, 0.25)));
    CHECK_THROWS_AS(modulation_norm_gaussian_exact(0.0, Exponent(2.0), Exponent(2.0)), InvalidParam);
}

TEST_CASE("convolution and product of Gaussians") {
    auto c = conv_gaussian_exact(1.0);
    CHECK(c.scale == doctest::Approx(std::sqrt(0.5)));
    CHECK(c.lambda == 0.5);
    c = conv_gaussian_exact(2.0);
    CHECK(c.scale == doctest::Approx(0.5));
    CHECK(c.lambda == 1.0);
    c = conv_gaussian_exact(0.5, 2);
    CHECK(c.scale == doctest::Approx(1.0));
    CHECK(c.lambda == 0.25);
    CHECK(product_gaussian_exact(1.0) == 2.0);
    CHECK(product_gaussian_exact(3.0) == 6.0);
    CHECK(product_gaussian_exact(0.5) == 1.0);
}

TEST_CASE("Schrodinger Gaussian") {
    for (double lambda : {0.5, 1.0, 3.0}) {
        const auto s0 = schrodinger_gaussian_exact(lambda, 0.0);
        CHECK(s0.prefactor == doctest::Approx(1.0 / lambda));
        CHECK(s0.params.a == doctest::Approx(1.0 / (lambda * lambda)));
        CHECK(s0.params.b == 0.0);
        CHECK(s0.state.a == doctest::Approx(lambda * lambda));
        CHECK(s0.state.b == 0.0);
    }
    for (double t : {0.1, 1.0, 5.0}) {
        const auto s = schrodinger_gaussian_exact(1.0, t);
        const double w = 4 * kPi * t;
        CHECK(s.state.a == doctest::Approx(1.0 / (1.0 + w * w)));
        CHECK(s.state.b == doctest::Approx(-w / (1.0 + w * w)));
        CHECK(s.params.a == doctest::Approx(1.0));
        CHECK(s.params.b == doctest::Approx(w));
    }
    // L² norm of u(λ²t, λ·) does not depend on t.
    const NormSpec l2{Space::Lp, {Exponent(2.0), Exponent(2.0)}, std::nullopt};
    for (double lambda : {0.5, 2.0}) {
        const auto s0 = schrodinger_gaussian_exact(lambda, 0.0);
        const double ref = s0.prefactor * complex_gaussian_norm_exact({s0.params.a, s0.params.b}, l2);
        for (double t : {0.3, 7.0, 100.0}) {
            const auto s = schrodinger_gaussian_exact(lambda, t);
            CHECK(s.prefactor * complex_gaussian_norm_exact({s.params.a, s.params.b}, l2) == doctest::Approx(ref).epsilon(1e-12));
            CHECK(schrodinger_mpq_norm_exact(lambda, t, Exponent(2.0), Exponent(2.0)) ==
                  doctest::Approx(schrodinger_mpq_norm_exact(lambda, 0.0, Exponent(2.0), Exponent(2.0))).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(schrodinger_gaussian_exact(0.0, 1.0), InvalidParam);
}

TEST_CASE("Schrodinger Mpq closed form") {
    CHECK(schrodinger_mpq_norm_exact(1.0, 0.0, Exponent(2.0), Exponent(2.0)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    for (Exponent p : {Exponent(2.0), Exponent(4.0), Exponent::infinity()}) {
        for (Exponent q : {Exponent(1.0), Exponent(2.0), Exponent::infinity()}) {
            auto in_t = [&](double t) { return schrodinger_mpq_norm_exact(1.0, t, p, q); };
            CHECK(testsupport::slope(in_t, 1e6, 1e7) == doctest::Approx(-(0.5 - p.reciprocal())).epsilon(1e-6));
            auto in_lambda = [&](double l) { return schrodinger_mpq_norm_exact(l, 1.0, p, q); };
            CHECK(testsupport::slope(in_lambda, 1e-7, 1e-6) == doctest::Approx(-p.reciprocal()).epsilon(1e-5));
        }
    }
    // t = 0 restates the initial Gaussian: ‖u0(λ·)‖ = λ^{-1/2}‖φ_{λ²}‖ in M^{p,q}.
    for (Exponent p : kLattice) {
        for (Exponent q : kLattice) {
            for (double lambda : {0.5, 2.0}) {
                CHECK(schrodinger_mpq_norm_exact(lambda, 0.0, p, q) ==
                      doctest::Approx(modulation_norm_gaussian_exact(lambda * lambda, p, q).exact).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("theoretical exponents") {
    CHECK(predicted(Scenario::DilationSmallUpper, 1, 2) == doctest::Approx(-1.0));
    CHECK(theoretical_exponents(Scenario::DilationSmallUpper, {{Exponent(1.0), Exponent(2.0)}}).relation == Relation::AtLeast);
    CHECK(predicted(Scenario::ConvolutionSmall, 2) == doctest::Approx(-0.75));
    CHECK(predicted(Scenario::SchrodingerDecay, 4) == doctest::Approx(-0.25));
    CHECK(predicted(Scenario::SchrodingerDecay, 2) == doctest::Approx(0.0));
    CHECK(predicted(Scenario::SchrodingerDecay, INFINITY) == doctest::Approx(-0.5));
    CHECK(predicted(Scenario::SchrodingerData, 4) == doctest::Approx(-0.75));
    CHECK(predicted(Scenario::SchrodingerEvolved, 4) == doctest::Approx(-0.25));
    CHECK(predicted(Scenario::ConvolutionLarge, 1, 2) == doctest::Approx(-0.75));
    CHECK(predicted(Scenario::GaussianModulationSmall, 2, 1) == doctest::Approx(-0.25));
    CHECK(predicted(Scenario::GaussianModulationLarge, 1, 2) == doctest::Approx(-0.25));
    CHECK(predicted(Scenario::DilationGaussianSmall, 2, 1) == doctest::Approx(-1.0));
    CHECK(predicted(Scenario::DilationGaussianLarge, 2, 2) == doctest::Approx(-0.5));
    CHECK(predicted(Scenario::WitnessSmall, 1, INFINITY, 0.05) == doctest::Approx(-0.95));
    CHECK(predicted(Scenario::WitnessLarge, 1, 4, 0.05) == doctest::Approx(-0.30));
    CHECK(predicted(Scenario::WeakSmall, 2, 2) == doctest::Approx(-1.0));
    CHECK(predicted(Scenario::WeakLarge, INFINITY, 1) == doctest::Approx(0.0));
    CHECK(predicted(Scenario::DilationLargeUpper, 1, 4) == doctest::Approx(-0.25));
    CHECK(theoretical_exponents(Scenario::DilationLargeUpper, {{Exponent(1.0), Exponent(4.0)}}).relation == Relation::AtMost);
    CHECK(to_string(Scenario::ConvolutionSmall) == "CONV_SMALL");
}

} // TEST_SUITE
