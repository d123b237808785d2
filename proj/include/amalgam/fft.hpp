#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace amalgam::fft {

enum class Direction { Forward, Backward };

/// Unnormalised out-of-place DFT (exponent sign -1 forward, +1 backward) of a
/// row-major array with the given extents (rank 1 or 2). Thread-safe; plans
/// are cached per shape.
void transform(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
               std::span<const std::size_t> extents, Direction direction);

} // namespace amalgam::fft
