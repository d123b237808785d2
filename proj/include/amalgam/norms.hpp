#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amalgam/exponent.hpp"
#include "amalgam/grid.hpp"
#include "amalgam/transforms.hpp"

namespace amalgam {

enum class Space { Lp, FLp, WLpLq, WFLpLq, Mpq };

/// GAUSSIAN is exp(-π|x|²); BOX is the indicator of [-1, 1). Amalgam norms use
/// the profile as is, modulation norms rescale it to unit L² norm.
enum class Window { Gaussian, Box };

enum class LocalComponent { Lp, FLp };

struct NormSpec {
    Space space = Space::Lp;
    ExponentPair exponents{Exponent(2.0), Exponent(2.0)};
    std::optional<Window> window;

    /// Throws InvalidParam when a window is missing for an amalgam/modulation
    /// space or supplied for a plain Lebesgue space.
    void validate() const;
};

std::string to_string(Space s);
std::string to_string(Window w);

/// Window profile value at x (not normalised).
double window_profile(Window w, double x) noexcept;

double lp_norm(const SampledFunction& f, Exponent p);
double flp_norm(const SampledFunction& f, Exponent p);

/// Inner L^p over x (weight dx), outer L^q over ξ (weight dξ).
double mixed_norm(const PhaseSpaceArray& v, Exponent p, Exponent q);

/// ‖ ‖f·T_x g‖_local ‖_{L^q_x} with x over every grid translate.
double amalgam_norm(const SampledFunction& f, LocalComponent local, Exponent p, Exponent q, Window window);

/// x ↦ ‖f·T_x g‖_local on the spatial grid (the local profile of the amalgam norm).
std::vector<double> amalgam_local_profile(const SampledFunction& f, LocalComponent local, Exponent p,
                                          Window window);

/// The STFT window used by modulation norms: the profile scaled to unit L² norm.
SampledFunction modulation_window(const Grid& grid, Window window);

double modulation_norm(const SampledFunction& f, Exponent p, Exponent q, Window window = Window::Gaussian);

/// Several M^{p,q} norms from a single pass over the STFT.
std::vector<double> modulation_norms(const SampledFunction& f, std::span<const ExponentPair> pairs,
                                     Window window = Window::Gaussian);

/// Dispatches to the engine selected by `spec`.
double evaluate_norm(const NormSpec& spec, const SampledFunction& f);

/// Smooth partition of unity on the frequency axis: ν(ξ) = ψ(ξ) / Σ_j ψ(ξ - j),
/// ψ the standard mollifier bump of the given radius (1/2 < radius <= 1).
/// Lattice points |k| <= truncation are used.
class PartitionWindow {
public:
    PartitionWindow(int truncation, double radius = 1.0);

    /// Largest truncation the grid's frequency extent supports.
    static PartitionWindow for_grid(const Grid& grid, double radius = 1.0);

    int truncation() const noexcept { return truncation_; }
    double radius() const noexcept { return radius_; }
    double operator()(double xi) const noexcept;

private:
    int truncation_;
    double radius_;
};

/// (Σ_k ‖ν(D-k) f‖_{L^p}^q)^{1/q} over |k| <= K. The spectrum must be
/// negligible beyond |ξ| = K - 1.
double modulation_norm_partition(const SampledFunction& f, Exponent p, Exponent q, const PartitionWindow& nu);

enum class CompactSide { Time, Frequency };

struct EquivalenceReport {
    double modulation = 0.0;
    double flq = 0.0;       ///< ‖f‖_{FL^q}
    double lp = 0.0;        ///< ‖f‖_{L^p}
    double ratio = 0.0;     ///< M^{p,q} over FL^q (time side) or over L^p (frequency side)
    double ratio_to_flq = 0.0;
    double ratio_to_lp = 0.0;
    bool zero_input = false; ///< ratios are NaN when set
};

/// Checks that f (time side) or its transform (frequency side) vanishes outside
/// [-support_radius, support_radius], then reports the M^{p,q} ratios.
EquivalenceReport compact_support_equivalence_check(const SampledFunction& f, Exponent p, Exponent q,
                                                    CompactSide side, double support_radius);
/// Same check for several exponent pairs sharing one STFT pass.
std::vector<EquivalenceReport> compact_support_equivalence_checks(const SampledFunction& f,
                                                                  std::span<const ExponentPair> pairs,
                                                                  CompactSide side, double support_radius);

} // namespace amalgam
