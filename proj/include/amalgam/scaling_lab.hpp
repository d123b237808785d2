#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "amalgam/gaussian_oracle.hpp"
#include "amalgam/grid.hpp"
#include "amalgam/norms.hpp"

namespace amalgam {

enum class Family { GaussianPhi, GaussianU0, ComplexGaussian, WitnessSmall, WitnessLarge, UserFunction };
enum class Regime { SmallLambda, LargeLambda, LargeT };
enum class Engine { Numeric, Oracle };

std::string to_string(Family f);
std::string to_string(Regime r);
std::string to_string(Engine e);
Family parse_family(const std::string& s);
Regime parse_regime(const std::string& s);
Engine parse_engine(const std::string& s);

/// Geometric grid min, ..., max with `count` points (count = 1 gives {min}).
struct ParameterRange {
    double min = 1e-2;
    double max = 1e-1;
    int count = 17;

    std::vector<double> values() const;
};

/// Points per decade needed for a range to count as a valid sweep.
inline constexpr double kMinPointsPerDecade = 8.0;

/// One sweep of ‖f_λ‖ over λ. What f_λ is depends on the family:
///   GaussianPhi      exp(-πλ|x|²)
///   GaussianU0       exp(-πλ²|x|²), i.e. u0(λx); with `evolve_time` set it is
///                    u(λ² t0, λx), and under LargeT the parameter is the time t
///                    of u(t, ·) with u0(x) = exp(-π fixed_lambda² |x|²)
///   ComplexGaussian  G_{(1+ib)}(λx)
///   Witness*         the truncated power witness dilated by λ
///   UserFunction     dilate(user_function, λ)
struct SweepPlan {
    Family family = Family::GaussianPhi;
    NormSpec norm;
    ParameterRange range;
    Regime regime = Regime::SmallLambda;
    Engine engine = Engine::Oracle;
    std::optional<Grid> grid;
    double epsilon = 0.05;
    double b = 0.0;
    std::optional<double> evolve_time;
    double fixed_lambda = 1.0;
    std::optional<SampledFunction> user_function;
    int threads = 1;

    /// Throws InvalidParam on inconsistent plans (regime vs range, family vs
    /// engine, too few points per decade, ...).
    void validate() const;
};

struct SweepPoint {
    double lambda;
    double norm;
};

/// A labelled sweep, as emitted to CSV/JSON.
struct SweepResult {
    std::string scenario;
    std::string family;
    Engine engine = Engine::Oracle;
    ExponentPair exponents{Exponent(2.0), Exponent(2.0)};
    std::vector<SweepPoint> points;
};

/// Samples f_λ for a numeric plan, without adequacy checks.
SampledFunction sample_family(const SweepPlan& plan, double lambda);

/// Exact ‖f_λ‖ for plans the oracle covers (Gaussian families, Gaussian windows).
double oracle_norm(const SweepPlan& plan, double lambda);

/// Throws GridInadequate(λ) when the grid cannot represent f_λ: boundary tail,
/// resolution (at least 16 samples above 1e-6 of the peak) and, for the
/// frequency-side norms of smooth families, the spectral tail.
void check_adequacy(const SweepPlan& plan, double lambda, const SampledFunction& f);

std::vector<SweepPoint> run_sweep(const SweepPlan& plan);

struct ScalingFit {
    double alpha = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double max_relative_residual = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

/// Ordinary least squares of log norm on log λ.
ScalingFit fit_exponent(const std::vector<SweepPoint>& points);

/// Every verdict threshold lives here.
struct Tolerances {
    double oracle_fit = 1e-3;
    double numeric_fit = 0.05;
    double bound_slack = 0.05;
    double equivalence_band = 10.0; ///< max/min of a ratio across a family

    double fit(Engine e) const noexcept { return e == Engine::Oracle ? oracle_fit : numeric_fit; }
};

struct Verdict {
    std::string scenario;
    double measured = 0.0;
    double predicted = 0.0;
    Relation relation = Relation::Equal;
    double tolerance = 0.0;
    double r2 = 1.0;
    Engine engine = Engine::Oracle;
    bool pass = false;
    std::string note;
};

/// Builds a verdict comparing a measured exponent with a prediction.
Verdict judge(std::string scenario, double measured, PredictedExponent predicted, double tolerance, double r2,
              Engine engine);

/// Verdict for an "iff" claim: `measured_margin >= -tolerance` must agree with
/// `expected`. predicted is 0, relation AtLeast.
Verdict judge_consistency(std::string scenario, double measured_margin, bool expected, double tolerance,
                          double r2, Engine engine);

struct ScenarioReport {
    std::vector<SweepResult> sweeps;
    std::vector<Verdict> verdicts;

    bool all_pass() const noexcept;
    void append(ScenarioReport other);
};

/// Numeric grids and λ windows used when a scenario is not given explicit ones.
struct ScenarioOptions {
    Engine engine = Engine::Oracle;
    std::optional<ParameterRange> range;
    std::optional<Grid> grid;
    double epsilon = 0.05;
    double b = 0.0; ///< imaginary part for the complex Gaussian family
    double t0 = 1.0;
    int threads = 1;
    Tolerances tolerances;
};

ParameterRange default_range(Engine engine, Regime regime);

/// ‖f_λ‖_{W(L^p,L^q)} sweep; Gaussian families use the Gaussian window and
/// witnesses the BOX window. Emits the fitted-exponent verdict, the sharp
/// envelope checks and the weak-envelope checks.
ScenarioReport scenario_dilation(Exponent p, Exponent q, Regime regime, Family family,
                                 const ScenarioOptions& options);

/// Checks an already-measured dilation exponent against the weak envelope.
Verdict scenario_weak_dilation_bounds(Exponent p, Exponent q, Regime regime, double measured, double r2,
                                      Engine engine, const Tolerances& tol);

struct IndexTuple {
    Exponent p, q, p1, q1, p2, q2;

    std::string label() const;
};

bool young_indices(const IndexTuple& t);          ///< 1/p + 1 <= 1/p1 + 1/p2
bool holder_indices(const IndexTuple& t);         ///< 1/q <= 1/q1 + 1/q2
bool product_young_indices(const IndexTuple& t);  ///< 1/p <= 1/p1 + 1/p2
bool product_holder_indices(const IndexTuple& t); ///< 1/q + 1 <= 1/q1 + 1/q2
bool inclusion_indices(Exponent p1, Exponent q1, Exponent p2, Exponent q2);

/// ‖φ_λ ∗ φ_λ‖_{M^{p,q}} (convolution) or ‖φ_λ φ_λ‖_{M^{p,q}} over λ.
SweepResult bilinear_gaussian_sweep(Exponent p, Exponent q, Regime regime, bool convolution,
                                    const ScenarioOptions& options);

/// Small- and large-λ fits of ‖φ_λ ∗ φ_λ‖_{M^{p,q}} and of ‖φ_λ‖_{M^{p_i,q_i}},
/// with the index verdicts at both ends.
ScenarioReport scenario_convolution(const IndexTuple& t, const ScenarioOptions& options);

/// As above for the pointwise product φ_λ φ_λ.
ScenarioReport scenario_product(const IndexTuple& t, const ScenarioOptions& options);

/// Gaussian M^{p_i,q_i} fits at both ends and the embedding-direction verdicts.
ScenarioReport scenario_inclusion(Exponent p1, Exponent q1, Exponent p2, Exponent q2,
                                  const ScenarioOptions& options);

/// Data norm in M^{p',q} and evolved norm in M^{p,q} as λ → 0, decay in t at
/// λ = 1, and the p >= 2 necessity check.
ScenarioReport scenario_schrodinger(Exponent p, Exponent q, const ScenarioOptions& options);

/// Fixed-support families: f(λ·) for a bump of radius 1 (time side, λ >= 1), or
/// the function whose transform is λ^{-1} ψ(ξ/λ) (frequency side, λ <= 1). For
/// each pair, the M^{p,q} ratio to ‖·‖_{FL^q} (time) or ‖·‖_{L^p} (frequency) must
/// stay within a band max/min <= tolerances.equivalence_band.
ScenarioReport scenario_equivalence(CompactSide side, std::span<const ExponentPair> pairs,
                                    const ScenarioOptions& options);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Exceptions are
/// rethrown for the lowest failing index.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

/// Worker count from the hardware when `requested` is not positive.
int resolve_threads(int requested);

} // namespace amalgam
