#pragma once

#include "amalgam/exponent.hpp"
#include "amalgam/grid.hpp"
#include "amalgam/norms.hpp"

namespace amalgam {

/// e^{itΔ} u0 as the Fourier multiplier exp(-it|2πξ|²). The spectrum of u0 must
/// be negligible at the edge of the frequency grid (TailTruncation otherwise).
SampledFunction evolve(const SampledFunction& u0, double t);

/// modulation_norm(evolve(u0, t), p, q, window).
double evolve_and_norm(const SampledFunction& u0, double t, Exponent p, Exponent q,
                       Window window = Window::Gaussian);

} // namespace amalgam
