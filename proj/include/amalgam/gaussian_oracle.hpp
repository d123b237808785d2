#pragma once

#include "amalgam/exponent.hpp"
#include "amalgam/norms.hpp"

#include <complex>

namespace amalgam {

/// G_{(a+ib)}(x) = (a+ib)^{-d/2} exp(-π|x|²/(a+ib)) in dimension d.
struct ComplexGaussianParams {
    double a = 1.0;
    double b = 0.0;
    int d = 1;

    void validate() const;
};

/// The (a, b) pair with a + ib = 1/(λ^{-2} + 4πit).
struct SchrodingerGaussianState {
    double lambda = 1.0;
    double t = 0.0;
    double a = 1.0;
    double b = 0.0;

    static SchrodingerGaussianState make(double lambda, double t);
};

/// ‖G_{(a+ib)}‖_{W(FL^p,L^q)} for the window exp(-π|x|²).
double amalgam_flp_norm_exact(const ComplexGaussianParams& params, Exponent p, Exponent q);

/// 2^{d/4}: the factor between the unit-L² Gaussian window and exp(-π|x|²).
double unit_window_constant(int d);

struct GaussianModulationNorms {
    double exact;            ///< ‖φ_λ‖_{M^{p,q}} for the window exp(-π|x|²)
    double unit_window;      ///< same with the window scaled to unit L² norm
    double equivalent_expression; ///< (λ+1)^{d(1/p-1/2)} / [λ^{d/(2q)} (λ²+λ)^{(1/p-1/q)d/2}]
};

GaussianModulationNorms modulation_norm_gaussian_exact(double lambda, Exponent p, Exponent q, int d = 1);

/// Closed-form norm of G_c for Lp, FLp, W(Lp,Lq) and W(FLp,Lq) with the Gaussian
/// window, and Mpq with the unit-L² Gaussian window. BOX windows have no closed
/// form here (InvalidParam).
double complex_gaussian_norm_exact(std::complex<double> c, const NormSpec& spec, int d = 1);

/// φ_λ ∗ φ_λ = scale · φ_{lambda}.
struct ScaledGaussian {
    double scale;
    double lambda;
};

ScaledGaussian conv_gaussian_exact(double lambda, int d = 1);

/// φ_λ φ_λ = φ_{2λ}.
double product_gaussian_exact(double lambda);

/// u(λ²t, λx) = prefactor · G_{(params.a + i params.b)}(x) for u_0 = exp(-π|x|²).
struct SchrodingerGaussian {
    double prefactor;
    ComplexGaussianParams params;
    SchrodingerGaussianState state;
};

SchrodingerGaussian schrodinger_gaussian_exact(double lambda, double t, int d = 1);

/// λ^{-d} (a²+b²)^{d/4} ‖G_{(a+ib)}‖_{W(FL^p,L^q)}, i.e. ‖u(λ²t, λ·)‖_{M^{p,q}}
/// for the window exp(-π|x|²).
double schrodinger_mpq_norm_exact(double lambda, double t, Exponent p, Exponent q, int d = 1);

enum class Scenario {
    DilationSmallUpper, ///< α ≥ -d max{1/p,1/q}, λ → 0
    DilationLargeLower, ///< α ≥ -d max{1/p,1/q}, λ → ∞
    DilationLargeUpper, ///< α ≤ -d min{1/p,1/q}, λ → ∞
    DilationGaussianSmall,
    DilationGaussianLarge,
    WitnessSmall,
    WitnessLarge,
    WeakSmall,
    WeakLarge,
    ConvolutionSmall,
    ConvolutionLarge,
    GaussianModulationSmall,
    GaussianModulationLarge,
    SchrodingerData,
    SchrodingerEvolved,
    SchrodingerDecay,
    SchrodingerBound, ///< α ≥ -d(1/2 - 1/p)
};

enum class Relation { Equal, AtLeast, AtMost };

struct PredictedExponent {
    double value;
    Relation relation;
};

struct ScenarioParams {
    ExponentPair exponents{Exponent(2.0), Exponent(2.0)};
    int d = 1;
    double epsilon = 0.0;
};

PredictedExponent theoretical_exponents(Scenario scenario, const ScenarioParams& params);

std::string to_string(Scenario s);
std::string to_string(Relation r);

} // namespace amalgam
