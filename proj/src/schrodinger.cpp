#include "amalgam/schrodinger.hpp"

#include <cmath>
#include <numbers>

#include "amalgam/errors.hpp"
#include "amalgam/transforms.hpp"

namespace amalgam {

SampledFunction evolve(const SampledFunction& u0, double t) {
    if (!std::isfinite(t)) throw InvalidParam("time must be finite");
    if (t == 0.0) return u0;
    const SampledFunction spectrum = fourier(u0);
    require_tail(spectrum, "spectrum of the initial datum");
    const Grid& xi = spectrum.grid();
    const std::size_t n = xi.samples_per_axis();
    const double w = 2.0 * std::numbers::pi;
    std::vector<Complex> out(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        double r2;
        if (xi.dimension() == 1) {
            r2 = xi.coordinate(i) * xi.coordinate(i);
        } else {
            const double u = xi.coordinate(i / n), v = xi.coordinate(i % n);
            r2 = u * u + v * v;
        }
        out[i] = std::polar(1.0, -t * w * w * r2) * spectrum[i];
    }
    return inverse_fourier(SampledFunction(xi, std::move(out)), u0.grid());
}

double evolve_and_norm(const SampledFunction& u0, double t, Exponent p, Exponent q, Window window) {
    return modulation_norm(evolve(u0, t), p, q, window);
}

} // namespace amalgam
