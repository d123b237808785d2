#pragma once

#include <functional>
#include <span>
#include <vector>

#include "amalgam/grid.hpp"

namespace amalgam {

/// Samples of V_g f(x, ξ) on the product of a spatial grid and its reciprocal.
/// values[i * N + k] holds the value at (x_i, ξ_k).
struct PhaseSpaceArray {
    Grid x_grid;
    Grid xi_grid;
    std::vector<Complex> values;

    PhaseSpaceArray(Grid x, Grid xi, std::vector<Complex> v);

    const Complex& at(std::size_t i, std::size_t k) const noexcept {
        return values[i * xi_grid.samples_per_axis() + k];
    }
};

/// Continuous Fourier transform ∫ f(t) e^{-2πiξt} dt approximated by a
/// dx^d-scaled DFT. The result lives on grid().reciprocal() with ξ = 0 at the
/// centre index.
SampledFunction fourier(const SampledFunction& f);

/// Exact inverse of fourier() up to round-off.
SampledFunction inverse_fourier(const SampledFunction& spectrum);
/// As above, but asserts the result lands on `target` (GridMismatch otherwise).
SampledFunction inverse_fourier(const SampledFunction& spectrum, const Grid& target);

/// Linear (zero-padded) convolution ∫ f(t-s) g(s) ds on the common grid.
/// Both operands must be negligible at the boundary.
SampledFunction convolve(const SampledFunction& f, const SampledFunction& g);

SampledFunction pointwise_product(const SampledFunction& f, const SampledFunction& g);

/// V_g f(x, ξ) = dx Σ_t f(t) conj(g(t - x)) e^{-2πiξt} for every grid translate x
/// (zero-fill translation). One-dimensional grids only.
PhaseSpaceArray stft(const SampledFunction& f, const SampledFunction& g);

/// Streams the rows ξ ↦ V_g f(x_i, ξ) without materialising the full array.
/// Rows where f and the translated window do not overlap are identically zero
/// and are skipped. Rows are visited in increasing i.
void for_each_stft_row(const SampledFunction& f, const SampledFunction& g,
                       const std::function<void(std::size_t, std::span<const Complex>)>& visit);

} // namespace amalgam
