#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "amalgam/exponent.hpp"

namespace amalgam {

using Complex = std::complex<double>;

/// Relative level below which a sample counts as negligible at the grid edge.
inline constexpr double kTailTolerance = 1e-12;

/// Origin-centred uniform grid on [-N dx/2, N dx/2)^d, d in {1, 2}.
///
/// Sample i sits at (i - N/2) dx, so x = 0 is always a grid point. N must be a
/// power of two no smaller than 8.
class Grid {
public:
    Grid(int dimension, std::size_t samples_per_axis, double spacing);

    int dimension() const noexcept { return dimension_; }
    std::size_t samples_per_axis() const noexcept { return n_; }
    double spacing() const noexcept { return spacing_; }
    std::size_t point_count() const noexcept { return dimension_ == 1 ? n_ : n_ * n_; }
    std::size_t origin_index() const noexcept { return n_ / 2; }

    double coordinate(std::size_t i) const noexcept {
        return (static_cast<double>(i) - static_cast<double>(n_ / 2)) * spacing_;
    }
    double half_extent() const noexcept { return 0.5 * static_cast<double>(n_) * spacing_; }

    /// Grid of the reciprocal variable, spacing 1/(N dx).
    Grid reciprocal() const;

    /// Same dimension and size, spacing equal to 1e-12 relative.
    bool compatible(const Grid& other) const noexcept;

private:
    int dimension_;
    std::size_t n_;
    double spacing_;
};

/// Complex samples on a Grid, row-major (axis 0 slowest) for d = 2.
class SampledFunction {
public:
    SampledFunction(Grid grid, std::vector<Complex> values);

    static SampledFunction zeros(const Grid& grid);
    static SampledFunction from_function(const Grid& grid, const std::function<Complex(double)>& fn);
    static SampledFunction from_function(const Grid& grid,
                                         const std::function<Complex(double, double)>& fn);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const Complex> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const Complex& operator[](std::size_t i) const noexcept { return values_[i]; }

    SampledFunction conj() const;
    SampledFunction scaled(Complex c) const;

    double max_abs() const noexcept;
    /// Largest modulus over the samples on the outer faces of the grid.
    double boundary_max_abs() const noexcept;
    /// boundary_max_abs / max_abs, zero for the zero function.
    double tail_ratio() const noexcept;

private:
    Grid grid_;
    std::vector<Complex> values_;
};

/// Throws TailTruncation (mentioning `what`) unless f.tail_ratio() < kTailTolerance.
void require_tail(const SampledFunction& f, const std::string& what);
/// Throws GridMismatch unless the two grids are compatible.
void require_same_grid(const Grid& a, const Grid& b, const std::string& what);

enum class GaussianConvention {
    Phi, ///< φ_λ(x) = exp(-π λ |x|²)
    U0,  ///< u_0(λx) = exp(-π λ² |x|²)
};

struct GaussianFamilyParam {
    double lambda;
    GaussianConvention convention = GaussianConvention::Phi;

    /// The rate r in exp(-π r |x|²); PHI(λ²) and U0(λ) share it.
    double rate() const noexcept { return convention == GaussianConvention::Phi ? lambda : lambda * lambda; }
};

enum class WitnessKind {
    SmallLambda, ///< |t|^{-1/p+ε} on |t| <= 1
    LargeLambda, ///< |t|^{-1/q-ε} on |t| >= 1
};

struct WitnessSpec {
    WitnessKind kind;
    Exponent exponent; ///< p for SmallLambda, q for LargeLambda
    double epsilon;

    double power() const noexcept {
        return kind == WitnessKind::SmallLambda ? -exponent.reciprocal() + epsilon
                                                : -exponent.reciprocal() - epsilon;
    }
};

SampledFunction make_gaussian(const Grid& grid, GaussianFamilyParam param);

/// G_{(a+ib)}(x) = (a+ib)^{-d/2} exp(-π|x|²/(a+ib)), principal branch.
SampledFunction make_complex_gaussian(const Grid& grid, double a, double b);

/// Samples t ↦ f(dilation · t) of the witness f. The t = 0 sample of the small-λ
/// witness is taken at the half-cell point t = dx/2.
SampledFunction make_witness(const Grid& grid, const WitnessSpec& spec, double dilation = 1.0);

/// χ_[lo, hi] in d = 1.
SampledFunction make_indicator(const Grid& grid, double lo, double hi);

/// exp(-1/(1-s²)) with s = (x - centre)/radius, zero for |s| >= 1, in d = 1.
SampledFunction make_bump(const Grid& grid, double centre = 0.0, double radius = 1.0);

/// The smooth bump profile itself, shared by make_bump and the partition window.
double bump_profile(double s) noexcept;

/// f_λ(x) = f(λx) by (bi)linear interpolation; points mapping outside the grid read as 0.
SampledFunction dilate(const SampledFunction& f, double lambda);

enum class ShiftMode { ZeroFill, Circular };

/// T_{x0} f (t) = f(t - x0); x0 must be a multiple of the spacing.
SampledFunction translate(const SampledFunction& f, double x0, ShiftMode mode = ShiftMode::ZeroFill);
SampledFunction translate(const SampledFunction& f, std::array<double, 2> shift,
                          ShiftMode mode = ShiftMode::ZeroFill);

/// M_{ξ0} f (t) = exp(2πi ξ0 t) f(t).
SampledFunction modulate(const SampledFunction& f, double xi0);
SampledFunction modulate(const SampledFunction& f, std::array<double, 2> xi);

// Flat binary format: 32-byte header (magic "AMGSF001", uint32 d, uint32 0,
// uint64 N, float64 dx), then N^d little-endian float64 (re, im) pairs.
void write_binary(const SampledFunction& f, std::ostream& out);
SampledFunction read_binary(std::istream& in);
void write_binary(const SampledFunction& f, const std::string& path);
SampledFunction read_binary(const std::string& path);

} // namespace amalgam
