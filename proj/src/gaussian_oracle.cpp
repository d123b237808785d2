#include "amalgam/gaussian_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "amalgam/errors.hpp"

namespace amalgam {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidParam(std::string(what) + " must be positive and finite");
}

void require_dimension(int d) {
    if (d < 1) throw InvalidParam("dimension must be >= 1");
}

} // namespace

void ComplexGaussianParams::validate() const {
    require_positive(a, "a");
    if (!std::isfinite(b)) throw InvalidParam("b must be finite");
    require_dimension(d);
}

SchrodingerGaussianState SchrodingerGaussianState::make(double lambda, double t) {
    require_positive(lambda, "lambda");
    if (!std::isfinite(t)) throw InvalidParam("t must be finite");
    const double l2 = 1.0 / (lambda * lambda);
    const double w = 4.0 * std::numbers::pi * t;
    const double den = l2 * l2 + w * w;
    return {lambda, t, l2 / den, -w / den};
}

double amalgam_flp_norm_exact(const ComplexGaussianParams& params, Exponent p, Exponent q) {
    params.validate();
    const double a = params.a, b = params.b, hd = 0.5 * params.d;
    const double ip = p.reciprocal(), iq = q.reciprocal();
    const double num = std::pow((a + 1.0) * (a + 1.0) + b * b, hd * (ip - 0.5));
    const double den = power_over_self(p, 1.0, hd) * power_over_self(q, a, hd) *
                       std::pow(a * (a + 1.0) + b * b, hd * (ip - iq));
    return num / den;
}

double unit_window_constant(int d) {
    require_dimension(d);
    return std::pow(2.0, 0.25 * d);
}

GaussianModulationNorms modulation_norm_gaussian_exact(double lambda, Exponent p, Exponent q, int d) {
    require_positive(lambda, "lambda");
    require_dimension(d);
    const double exact = amalgam_flp_norm_exact({lambda, 0.0, d}, p, q);
    const double ip = p.reciprocal(), iq = q.reciprocal();
    const double equivalent = std::pow(lambda + 1.0, d * (ip - 0.5)) /
                         (std::pow(lambda, d * iq / 2.0) * std::pow(lambda * lambda + lambda, (ip - iq) * d / 2.0));
    return {exact, unit_window_constant(d) * exact, equivalent};
}

double complex_gaussian_norm_exact(std::complex<double> c, const NormSpec& spec, int d) {
    spec.validate();
    ComplexGaussianParams{c.real(), c.imag(), d}.validate();
    const double hd = 0.5 * d;
    const auto [p, q] = spec.exponents;
    const double modulus = std::pow(std::abs(c), -hd);
    const double s = std::real(1.0 / c);
    if (spec.window && *spec.window != Window::Gaussian) {
        throw InvalidParam("closed forms exist only for the Gaussian window");
    }
    switch (spec.space) {
    case Space::Lp: return modulus / power_over_self(p, s, hd);
    case Space::FLp: return 1.0 / power_over_self(p, c.real(), hd);
    case Space::WLpLq:
        return modulus / (power_over_self(p, s + 1.0, hd) * power_over_self(q, s / (s + 1.0), hd));
    case Space::WFLpLq: return amalgam_flp_norm_exact({c.real(), c.imag(), d}, p, q);
    case Space::Mpq: {
        const std::complex<double> r = 1.0 / c;
        return unit_window_constant(d) * std::pow(std::abs(r), hd) *
               amalgam_flp_norm_exact({r.real(), r.imag(), d}, p, q);
    }
    }
    throw InvalidParam("unknown space");
}

ScaledGaussian conv_gaussian_exact(double lambda, int d) {
    require_positive(lambda, "lambda");
    require_dimension(d);
    return {std::pow(2.0 * lambda, -0.5 * d), lambda / 2.0};
}

double product_gaussian_exact(double lambda) {
    require_positive(lambda, "lambda");
    return 2.0 * lambda;
}

SchrodingerGaussian schrodinger_gaussian_exact(double lambda, double t, int d) {
    require_dimension(d);
    const SchrodingerGaussianState state = SchrodingerGaussianState::make(lambda, t);
    return {std::pow(lambda, -static_cast<double>(d)),
            {1.0 / (lambda * lambda), 4.0 * std::numbers::pi * t, d},
            state};
}

double schrodinger_mpq_norm_exact(double lambda, double t, Exponent p, Exponent q, int d) {
    require_dimension(d);
    const SchrodingerGaussianState st = SchrodingerGaussianState::make(lambda, t);
    return std::pow(lambda, -static_cast<double>(d)) * std::pow(st.a * st.a + st.b * st.b, 0.25 * d) *
           amalgam_flp_norm_exact({st.a, st.b, d}, p, q);
}

PredictedExponent theoretical_exponents(Scenario scenario, const ScenarioParams& params) {
    require_dimension(params.d);
    const double d = params.d;
    const double ip = params.exponents.p.reciprocal(), iq = params.exponents.q.reciprocal();
    const double eps = params.epsilon;
    switch (scenario) {
    case Scenario::DilationSmallUpper: return {-d * std::max(ip, iq), Relation::AtLeast};
    case Scenario::DilationLargeLower: return {-d * std::max(ip, iq), Relation::AtLeast};
    case Scenario::DilationLargeUpper: return {-d * std::min(ip, iq), Relation::AtMost};
    case Scenario::DilationGaussianSmall: return {-d * iq, Relation::Equal};
    case Scenario::DilationGaussianLarge: return {-d * ip, Relation::Equal};
    case Scenario::WitnessSmall: return {-ip + eps, Relation::Equal};
    case Scenario::WitnessLarge: return {-iq - eps, Relation::Equal};
    case Scenario::WeakSmall: return {-d * (ip + iq), Relation::AtLeast};
    case Scenario::WeakLarge: return {d * (1.0 - ip - iq), Relation::AtMost};
    case Scenario::ConvolutionSmall: return {-(1.0 + ip) * d / 2.0, Relation::Equal};
    case Scenario::ConvolutionLarge: return {-d * (1.0 - iq / 2.0), Relation::Equal};
    case Scenario::GaussianModulationSmall: return {-d * ip / 2.0, Relation::Equal};
    case Scenario::GaussianModulationLarge: return {-(d / 2.0) * (1.0 - iq), Relation::Equal};
    case Scenario::SchrodingerData: return {-d * (1.0 - ip), Relation::Equal};
    case Scenario::SchrodingerEvolved: return {-d * ip, Relation::Equal};
    case Scenario::SchrodingerDecay: return {-d * (0.5 - ip), Relation::Equal};
    case Scenario::SchrodingerBound: return {-d * (0.5 - ip), Relation::AtLeast};
    }
    throw InvalidParam("unknown scenario");
}

std::string to_string(Scenario s) {
    switch (s) {
    case Scenario::DilationSmallUpper: return "DIL_SMALL_UPPER";
    case Scenario::DilationLargeLower: return "DIL_LARGE_LOWER";
    case Scenario::DilationLargeUpper: return "DIL_LARGE_UPPER";
    case Scenario::DilationGaussianSmall: return "DIL_GAUSS_SMALL";
    case Scenario::DilationGaussianLarge: return "DIL_GAUSS_LARGE";
    case Scenario::WitnessSmall: return "WITNESS_SMALL";
    case Scenario::WitnessLarge: return "WITNESS_LARGE";
    case Scenario::WeakSmall: return "WEAK_SMALL";
    case Scenario::WeakLarge: return "WEAK_LARGE";
    case Scenario::ConvolutionSmall: return "CONV_SMALL";
    case Scenario::ConvolutionLarge: return "CONV_LARGE";
    case Scenario::GaussianModulationSmall: return "GAUSS_MPQ_SMALL";
    case Scenario::GaussianModulationLarge: return "GAUSS_MPQ_LARGE";
    case Scenario::SchrodingerData: return "SCHRO_DATA";
    case Scenario::SchrodingerEvolved: return "SCHRO_EVOLVED";
    case Scenario::SchrodingerDecay: return "SCHRO_DECAY";
    case Scenario::SchrodingerBound: return "SCHRO_BOUND";
    }
    return "?";
}

std::string to_string(Relation r) {
    switch (r) {
    case Relation::Equal: return "=";
    case Relation::AtLeast: return ">=";
    case Relation::AtMost: return "<=";
    }
    return "?";
}

} // namespace amalgam
