#pragma once

// Reference computations for the tests. Nothing here calls into the library
// beyond the data types, so values computed here are independent oracles.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "amalgam/grid.hpp"

namespace testsupport {

using amalgam::Complex;
inline constexpr double kPi = std::numbers::pi;

// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// (∫|f|^p)^{1/p} over [-L, L] by Simpson.
inline double lp_quadrature(const std::function<double(double)>& absf, double p, double L = 12.0) {
    return std::pow(simpson([&](double x) { return std::pow(absf(x), p); }, -L, L), 1.0 / p);
}

inline Complex complex_gaussian_value(double a, double b, double x) {
    const Complex c(a, b);
    return std::pow(c, -0.5) * std::exp(-kPi * x * x / c);
}

struct Bump {
    double weight, centre, rate;
    Complex phase;
};

// Random sum of modulated Gaussians, fixed seed per index.
inline std::vector<Bump> random_mixture(unsigned seed, int terms = 3) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> w(0.2, 1.5), c(-2.0, 2.0), r(0.5, 3.0), ph(0.0, 2 * kPi);
    std::vector<Bump> out;
    for (int i = 0; i < terms; ++i) out.push_back({w(rng), c(rng), r(rng), std::polar(1.0, ph(rng))});
    return out;
}

inline amalgam::SampledFunction sample_mixture(const amalgam::Grid& grid, const std::vector<Bump>& m) {
    return amalgam::SampledFunction::from_function(grid, [&](double x) {
        Complex v = 0.0;
        for (const auto& b : m) v += b.weight * b.phase * std::exp(-kPi * b.rate * (x - b.centre) * (x - b.centre));
        return v;
    });
}

inline double sup_diff(const amalgam::SampledFunction& a, const amalgam::SampledFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double l2_diff(const amalgam::SampledFunction& a, const amalgam::SampledFunction& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s * a.grid().spacing());
}

inline double l2(const amalgam::SampledFunction& a) {
    double s = 0.0;
    for (const auto& v : a.values()) s += std::norm(v);
    return std::sqrt(s * a.grid().spacing());
}

inline double rel(double measured, double expected) { return std::abs(measured - expected) / std::abs(expected); }

// Log-log slope between two points, for asymptotic checks on closed forms.
inline double slope(const std::function<double(double)>& f, double x0, double x1) {
    return (std::log(f(x1)) - std::log(f(x0))) / (std::log(x1) - std::log(x0));
}

} // namespace testsupport
