#include "amalgam/scaling_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "amalgam/errors.hpp"
#include "amalgam/schrodinger.hpp"
#include "amalgam/transforms.hpp"

namespace amalgam {

namespace {

constexpr int kMinResolvedSamples = 16;
constexpr double kResolutionLevel = 1e-6;

bool is_gaussian_like(Family f) {
    return f == Family::GaussianPhi || f == Family::GaussianU0 || f == Family::ComplexGaussian;
}

bool is_frequency_side(Space s) { return s == Space::FLp || s == Space::WFLpLq || s == Space::Mpq; }

std::string pq_label(Exponent p, Exponent q) { return "p=" + p.to_string() + ";q=" + q.to_string(); }

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string tagged(Scenario s, const std::string& label) { return to_string(s) + "[" + label + "]"; }

NormSpec mpq_spec(Exponent p, Exponent q) { return {Space::Mpq, {p, q}, Window::Gaussian}; }

// Evaluates fn at every λ of the range, in parallel, keeping λ order.
std::vector<SweepPoint> sweep_values(const ParameterRange& range, int threads,
                                     const std::function<double(double)>& fn) {
    const std::vector<double> lambdas = range.values();
    std::vector<SweepPoint> points(lambdas.size());
    parallel_for(lambdas.size(), threads, [&](std::size_t i) { points[i] = {lambdas[i], fn(lambdas[i])}; });
    return points;
}

Grid default_dilation_grid(Regime regime) {
    return regime == Regime::SmallLambda ? Grid(1, 16384, 1.0 / 16) : Grid(1, 4096, 1.0 / 512);
}

Grid default_modulation_grid(Regime regime) {
    return regime == Regime::SmallLambda ? Grid(1, 2048, 1.0 / 8) : Grid(1, 1024, 1.0 / 128);
}

SweepPlan gaussian_mpq_plan(Exponent p, Exponent q, Regime regime, const ScenarioOptions& o) {
    SweepPlan plan;
    plan.family = Family::GaussianPhi;
    plan.norm = mpq_spec(p, q);
    plan.regime = regime;
    plan.engine = o.engine;
    plan.range = o.range.value_or(default_range(o.engine, regime));
    plan.threads = o.threads;
    if (o.engine == Engine::Numeric) plan.grid = o.grid.value_or(default_modulation_grid(regime));
    return plan;
}

SweepResult labelled(std::string scenario, const SweepPlan& plan, std::vector<SweepPoint> points) {
    return {std::move(scenario), to_string(plan.family), plan.engine, plan.norm.exponents, std::move(points)};
}

// ‖h_λ‖_{M^{p,q}} where h_λ is built from φ_λ (convolution or product).
std::vector<SweepPoint> combined_sweep(const SweepPlan& plan, bool convolution) {
    const auto [p, q] = plan.norm.exponents;
    return sweep_values(plan.range, plan.threads, [&](double lambda) {
        if (plan.engine == Engine::Oracle) {
            SweepPlan single = plan;
            if (convolution) {
                const ScaledGaussian g = conv_gaussian_exact(lambda);
                return g.scale * oracle_norm(single, g.lambda);
            }
            return oracle_norm(single, product_gaussian_exact(lambda));
        }
        SampledFunction f = [&] {
            try {
                return sample_family(plan, lambda);
            } catch (const TailTruncation& e) {
                throw GridInadequate(lambda, e.what());
            }
        }();
        check_adequacy(plan, lambda, f);
        SampledFunction h = convolution ? convolve(f, f) : pointwise_product(f, f);
        return modulation_norm(h, p, q, Window::Gaussian);
    });
}

} // namespace

std::string to_string(Family f) {
    switch (f) {
    case Family::GaussianPhi: return "gaussian_phi";
    case Family::GaussianU0: return "gaussian_u0";
    case Family::ComplexGaussian: return "complex_gaussian";
    case Family::WitnessSmall: return "witness_small";
    case Family::WitnessLarge: return "witness_large";
    case Family::UserFunction: return "user_function";
    }
    return "?";
}

std::string to_string(Regime r) {
    switch (r) {
    case Regime::SmallLambda: return "small";
    case Regime::LargeLambda: return "large";
    case Regime::LargeT: return "large_t";
    }
    return "?";
}

std::string to_string(Engine e) { return e == Engine::Oracle ? "oracle" : "numeric"; }

Family parse_family(const std::string& s) {
    if (s == "gaussian" || s == "gaussian_u0" || s == "u0") return Family::GaussianU0;
    if (s == "gaussian_phi" || s == "phi") return Family::GaussianPhi;
    if (s == "complex_gaussian") return Family::ComplexGaussian;
    if (s == "witness_small") return Family::WitnessSmall;
    if (s == "witness_large") return Family::WitnessLarge;
    if (s == "witness") return Family::WitnessSmall;
    if (s == "user_function" || s == "user") return Family::UserFunction;
    throw InvalidParam("unknown family '" + s + "'");
}

Regime parse_regime(const std::string& s) {
    if (s == "small") return Regime::SmallLambda;
    if (s == "large") return Regime::LargeLambda;
    if (s == "large_t") return Regime::LargeT;
    throw InvalidParam("unknown regime '" + s + "'");
}

Engine parse_engine(const std::string& s) {
    if (s == "oracle") return Engine::Oracle;
    if (s == "numeric") return Engine::Numeric;
    throw InvalidParam("unknown engine '" + s + "'");
}

std::vector<double> ParameterRange::values() const {
    if (!(min > 0.0) || !std::isfinite(max) || !(max >= min)) throw InvalidParam("need 0 < min <= max");
    if (count < 1) throw InvalidParam("count must be >= 1");
    if (count == 1) return {min};
    std::vector<double> v(static_cast<std::size_t>(count));
    const double lo = std::log(min), step = (std::log(max) - std::log(min)) / (count - 1);
    for (int i = 0; i < count; ++i) v[i] = std::exp(lo + step * i);
    v.front() = min;
    v.back() = max;
    return v;
}

void SweepPlan::validate() const {
    norm.validate();
    (void)range.values();
    if (range.count > 1) {
        if (!(range.max > range.min)) throw InvalidParam("sweep range must be strictly increasing");
        const double decades = std::log10(range.max / range.min);
        if ((range.count - 1) < kMinPointsPerDecade * decades * (1.0 - 1e-12)) {
            throw InvalidParam("sweep needs at least 8 points per decade");
        }
    }
    if (regime == Regime::SmallLambda && range.max > 1.0) throw InvalidParam("small-λ regime needs λ_max <= 1");
    if (regime == Regime::LargeLambda && range.min < 1.0) throw InvalidParam("large-λ regime needs λ_min >= 1");
    if (regime == Regime::LargeT && family != Family::GaussianU0) {
        throw InvalidParam("the large-t regime evolves the u0 Gaussian family");
    }
    if (family == Family::WitnessSmall && regime != Regime::SmallLambda) {
        throw InvalidParam("regime mismatch: the small-λ witness is swept as λ → 0");
    }
    if (family == Family::WitnessLarge && regime != Regime::LargeLambda) {
        throw InvalidParam("regime mismatch: the large-λ witness is swept as λ → ∞");
    }
    if (!(epsilon > 0.0)) throw InvalidParam("ε must be positive");
    if (evolve_time && family != Family::GaussianU0) throw InvalidParam("evolution applies to the u0 family");
    if (!(fixed_lambda > 0.0)) throw InvalidParam("fixed λ must be positive");
    if (family == Family::UserFunction && !user_function) throw InvalidParam("user family needs a function");
    if (engine == Engine::Oracle) {
        if (!is_gaussian_like(family)) throw InvalidParam(to_string(family) + " has no oracle; use the numeric engine");
        if (norm.window && *norm.window != Window::Gaussian) throw InvalidParam("the oracle needs the Gaussian window");
    } else {
        if (!grid && !user_function) throw InvalidParam("the numeric engine needs a grid");
        if (grid && user_function && !grid->compatible(user_function->grid())) {
            throw GridMismatch("user function does not live on the sweep grid");
        }
    }
}

SampledFunction sample_family(const SweepPlan& plan, double lambda) {
    const Grid grid = plan.grid ? *plan.grid : plan.user_function->grid();
    switch (plan.family) {
    case Family::GaussianPhi: return make_gaussian(grid, {lambda, GaussianConvention::Phi});
    case Family::GaussianU0:
        if (plan.regime == Regime::LargeT) {
            return evolve(make_gaussian(grid, {plan.fixed_lambda, GaussianConvention::U0}), lambda);
        }
        if (plan.evolve_time) return evolve(make_gaussian(grid, {lambda, GaussianConvention::U0}), *plan.evolve_time);
        return make_gaussian(grid, {lambda, GaussianConvention::U0});
    case Family::ComplexGaussian: {
        const double l2 = lambda * lambda;
        return make_complex_gaussian(grid, 1.0 / l2, plan.b / l2).scaled(std::pow(lambda, -grid.dimension()));
    }
    case Family::WitnessSmall:
        return make_witness(grid, {WitnessKind::SmallLambda, plan.norm.exponents.p, plan.epsilon}, lambda);
    case Family::WitnessLarge:
        return make_witness(grid, {WitnessKind::LargeLambda, plan.norm.exponents.q, plan.epsilon}, lambda);
    case Family::UserFunction: return dilate(*plan.user_function, lambda);
    }
    throw InvalidParam("unknown family");
}

double oracle_norm(const SweepPlan& plan, double lambda) {
    const int d = 1;
    switch (plan.family) {
    case Family::GaussianPhi:
        return std::pow(lambda, -0.5 * d) * complex_gaussian_norm_exact(1.0 / lambda, plan.norm, d);
    case Family::GaussianU0: {
        // u0(μ·) evolved for time τ is μ^{-d} G_{(μ^{-2} + 4πiτ)}.
        double mu = lambda, tau = 0.0;
        if (plan.regime == Regime::LargeT) {
            mu = plan.fixed_lambda;
            tau = lambda;
        } else if (plan.evolve_time) {
            tau = *plan.evolve_time;
        }
        const std::complex<double> c(1.0 / (mu * mu), 4.0 * std::numbers::pi * tau);
        return std::pow(mu, -d) * complex_gaussian_norm_exact(c, plan.norm, d);
    }
    case Family::ComplexGaussian: {
        const double l2 = lambda * lambda;
        return std::pow(lambda, -d) * complex_gaussian_norm_exact({1.0 / l2, plan.b / l2}, plan.norm, d);
    }
    default: throw InvalidParam(to_string(plan.family) + " has no oracle");
    }
}

void check_adequacy(const SweepPlan& plan, double lambda, const SampledFunction& f) {
    const double peak = f.max_abs();
    if (!(peak > 0.0)) throw GridInadequate(lambda, "the function vanishes on the grid");
    if (plan.family != Family::WitnessLarge && !(f.tail_ratio() < kTailTolerance)) {
        throw GridInadequate(lambda, "boundary tail " + std::to_string(f.tail_ratio()) + " is not below 1e-12");
    }
    int resolved = 0;
    for (const auto& v : f.values()) resolved += std::abs(v) >= kResolutionLevel * peak ? 1 : 0;
    if (resolved < kMinResolvedSamples) {
        throw GridInadequate(lambda, "only " + std::to_string(resolved) + " samples resolve the function");
    }
    if (is_gaussian_like(plan.family) && is_frequency_side(plan.norm.space)) {
        const double tail = fourier(f).tail_ratio();
        if (!(tail < kTailTolerance)) {
            throw GridInadequate(lambda, "spectral tail " + std::to_string(tail) + " is not below 1e-12");
        }
    }
}

std::vector<SweepPoint> run_sweep(const SweepPlan& plan) {
    plan.validate();
    return sweep_values(plan.range, plan.threads, [&](double lambda) {
        if (plan.engine == Engine::Oracle) return oracle_norm(plan, lambda);
        SampledFunction f = [&] {
            try {
                return sample_family(plan, lambda);
            } catch (const TailTruncation& e) {
                throw GridInadequate(lambda, e.what());
            }
        }();
        check_adequacy(plan, lambda, f);
        const double n = evaluate_norm(plan.norm, f);
        if (!(n > 0.0) || !std::isfinite(n)) throw GridInadequate(lambda, "norm is not positive and finite");
        return n;
    });
}

ScalingFit fit_exponent(const std::vector<SweepPoint>& points) {
    if (points.size() < 4) throw DegenerateFit("need at least 4 points, got " + std::to_string(points.size()));
    const double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& pt : points) {
        if (!(pt.lambda > 0.0) || !(pt.norm > 0.0) || !std::isfinite(pt.norm) || !std::isfinite(pt.lambda)) {
            throw DegenerateFit("all parameters and norms must be positive and finite");
        }
        sx += std::log(pt.lambda);
        sy += std::log(pt.norm);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& pt : points) {
        const double dx = std::log(pt.lambda) - mx, dy = std::log(pt.norm) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw DegenerateFit("parameter values do not vary");
    ScalingFit fit;
    fit.alpha = sxy / sxx;
    fit.intercept = my - fit.alpha * mx;
    double sse = 0.0;
    for (const auto& pt : points) {
        const double r = std::log(pt.norm) - (fit.intercept + fit.alpha * std::log(pt.lambda));
        sse += r * r;
        fit.max_relative_residual = std::max(fit.max_relative_residual, std::abs(std::expm1(r)));
    }
    fit.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                        [](const SweepPoint& a, const SweepPoint& b) { return a.lambda < b.lambda; });
    fit.lambda_min = lo->lambda;
    fit.lambda_max = hi->lambda;
    return fit;
}

Verdict judge(std::string scenario, double measured, PredictedExponent predicted, double tolerance, double r2,
              Engine engine) {
    Verdict v{std::move(scenario), measured, predicted.value, predicted.relation, tolerance, r2, engine, false, {}};
    switch (predicted.relation) {
    case Relation::Equal: v.pass = std::abs(measured - predicted.value) <= tolerance; break;
    case Relation::AtLeast: v.pass = measured >= predicted.value - tolerance; break;
    case Relation::AtMost: v.pass = measured <= predicted.value + tolerance; break;
    }
    return v;
}

Verdict judge_consistency(std::string scenario, double measured_margin, bool expected, double tolerance,
                          double r2, Engine engine) {
    Verdict v{std::move(scenario), measured_margin, 0.0, Relation::AtLeast, tolerance, r2, engine, false, {}};
    const bool holds = measured_margin >= -tolerance;
    v.pass = holds == expected;
    v.note = std::string("relation ") + (holds ? "holds" : "fails") + ", indices " +
             (expected ? "satisfied" : "violated");
    return v;
}

bool ScenarioReport::all_pass() const noexcept {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

void ScenarioReport::append(ScenarioReport other) {
    for (auto& s : other.sweeps) sweeps.push_back(std::move(s));
    for (auto& v : other.verdicts) verdicts.push_back(std::move(v));
}

ParameterRange default_range(Engine engine, Regime regime) {
    if (regime == Regime::LargeT) return engine == Engine::Oracle ? ParameterRange{1e2, 1e4, 33} : ParameterRange{1.0, 10.0, 17};
    if (engine == Engine::Oracle) {
        return regime == Regime::SmallLambda ? ParameterRange{1e-5, 1e-3, 33} : ParameterRange{1e3, 1e5, 33};
    }
    return regime == Regime::SmallLambda ? ParameterRange{1e-2, 1e-1, 17} : ParameterRange{10.0, 100.0, 17};
}

Verdict scenario_weak_dilation_bounds(Exponent p, Exponent q, Regime regime, double measured, double r2,
                                      Engine engine, const Tolerances& tol) {
    const Scenario s = regime == Regime::SmallLambda ? Scenario::WeakSmall : Scenario::WeakLarge;
    return judge(tagged(s, pq_label(p, q)), measured, theoretical_exponents(s, {{p, q}}), tol.bound_slack, r2, engine);
}

ScenarioReport scenario_dilation(Exponent p, Exponent q, Regime regime, Family family,
                                 const ScenarioOptions& options) {
    if (regime == Regime::LargeT) throw InvalidParam("dilation sweeps are in λ");
    const bool witness = family == Family::WitnessSmall || family == Family::WitnessLarge;
    if (family == Family::GaussianPhi) family = Family::GaussianU0;
    if (witness && !(p.value() < q.value())) throw InvalidParam("witness sweeps need p < q");

    SweepPlan plan;
    plan.family = family;
    plan.norm = {Space::WLpLq, {p, q}, is_gaussian_like(family) ? Window::Gaussian : Window::Box};
    plan.regime = regime;
    plan.engine = options.engine;
    plan.epsilon = options.epsilon;
    plan.b = options.b;
    plan.threads = options.threads;
    if (family == Family::WitnessLarge) {
        // The cutoff at |t| = 1/λ contributes a correction decaying only like a
        // small power of λ, so this witness is swept a decade further out.
        plan.range = options.range.value_or(ParameterRange{100.0, 1000.0, 17});
        if (options.engine == Engine::Numeric) plan.grid = options.grid.value_or(Grid(1, 16384, 1.0 / 2048));
    } else {
        plan.range = options.range.value_or(default_range(options.engine, regime));
        if (options.engine == Engine::Numeric) plan.grid = options.grid.value_or(default_dilation_grid(regime));
    }

    ScenarioReport report;
    std::vector<SweepPoint> points = run_sweep(plan);
    const ScalingFit fit = fit_exponent(points);
    report.sweeps.push_back(labelled("dilation", plan, std::move(points)));

    const std::string label = pq_label(p, q) + ";" + to_string(family);
    const Tolerances& tol = options.tolerances;
    const ScenarioParams sp{{p, q}, 1, options.epsilon};
    const bool small = regime == Regime::SmallLambda;
    if (is_gaussian_like(family)) {
        const Scenario s = small ? Scenario::DilationGaussianSmall : Scenario::DilationGaussianLarge;
        report.verdicts.push_back(judge(tagged(s, label), fit.alpha, theoretical_exponents(s, sp),
                                        tol.fit(options.engine), fit.r2, options.engine));
    } else if (witness) {
        const Scenario s = family == Family::WitnessSmall ? Scenario::WitnessSmall : Scenario::WitnessLarge;
        report.verdicts.push_back(judge(tagged(s, label + ";eps=" + short_number(options.epsilon)),
                                        fit.alpha, theoretical_exponents(s, sp), tol.numeric_fit, fit.r2,
                                        options.engine));
    }
    if (small) {
        const Scenario s = Scenario::DilationSmallUpper;
        report.verdicts.push_back(
            judge(tagged(s, label), fit.alpha, theoretical_exponents(s, sp), tol.bound_slack, fit.r2, options.engine));
    } else {
        for (Scenario s : {Scenario::DilationLargeLower, Scenario::DilationLargeUpper}) {
            report.verdicts.push_back(judge(tagged(s, label), fit.alpha, theoretical_exponents(s, sp),
                                            tol.bound_slack, fit.r2, options.engine));
        }
    }
    Verdict weak = scenario_weak_dilation_bounds(p, q, regime, fit.alpha, fit.r2, options.engine, tol);
    weak.scenario = tagged(small ? Scenario::WeakSmall : Scenario::WeakLarge, label);
    report.verdicts.push_back(std::move(weak));
    return report;
}

std::string IndexTuple::label() const {
    return "p=" + p.to_string() + ";q=" + q.to_string() + ";p1=" + p1.to_string() + ";q1=" + q1.to_string() +
           ";p2=" + p2.to_string() + ";q2=" + q2.to_string();
}

// A small slack keeps exact equalities such as 1 + 1 <= 1 + 1 on the right side.
constexpr double kIndexSlack = 1e-12;

bool young_indices(const IndexTuple& t) {
    return t.p.reciprocal() + 1.0 <= t.p1.reciprocal() + t.p2.reciprocal() + kIndexSlack;
}
bool holder_indices(const IndexTuple& t) {
    return t.q.reciprocal() <= t.q1.reciprocal() + t.q2.reciprocal() + kIndexSlack;
}
bool product_young_indices(const IndexTuple& t) {
    return t.p.reciprocal() <= t.p1.reciprocal() + t.p2.reciprocal() + kIndexSlack;
}
bool product_holder_indices(const IndexTuple& t) {
    return t.q.reciprocal() + 1.0 <= t.q1.reciprocal() + t.q2.reciprocal() + kIndexSlack;
}
bool inclusion_indices(Exponent p1, Exponent q1, Exponent p2, Exponent q2) {
    return p1.value() <= p2.value() && q1.value() <= q2.value();
}

SweepResult bilinear_gaussian_sweep(Exponent p, Exponent q, Regime regime, bool convolution,
                                    const ScenarioOptions& options) {
    SweepPlan plan = gaussian_mpq_plan(p, q, regime, options);
    plan.validate();
    return labelled(convolution ? "convolution-lhs" : "product-lhs", plan, combined_sweep(plan, convolution));
}

namespace {

std::vector<Regime> both_ends() { return {Regime::SmallLambda, Regime::LargeLambda}; }

ScenarioReport bilinear_scenario(const IndexTuple& t, const ScenarioOptions& o, bool convolution) {
    ScenarioReport report;
    const std::string name = convolution ? "convolution" : "product";
    const Tolerances& tol = o.tolerances;
    for (Regime regime : both_ends()) {
        if (o.range && ((regime == Regime::SmallLambda) != (o.range->max <= 1.0))) continue;
        const bool small = regime == Regime::SmallLambda;
        SweepResult lhs = bilinear_gaussian_sweep(t.p, t.q, regime, convolution, o);
        const ScalingFit lf = fit_exponent(lhs.points);
        report.sweeps.push_back(std::move(lhs));

        double alpha_rhs = 0.0, r2 = lf.r2;
        for (const auto& [pi, qi] : {ExponentPair{t.p1, t.q1}, ExponentPair{t.p2, t.q2}}) {
            SweepPlan rhs = gaussian_mpq_plan(pi, qi, regime, o);
            std::vector<SweepPoint> rp = run_sweep(rhs);
            const ScalingFit rf = fit_exponent(rp);
            alpha_rhs += rf.alpha;
            r2 = std::min(r2, rf.r2);
            const Scenario s = small ? Scenario::GaussianModulationSmall : Scenario::GaussianModulationLarge;
            report.verdicts.push_back(judge(tagged(s, pq_label(pi, qi)), rf.alpha, theoretical_exponents(s, {{pi, qi}}),
                                            tol.fit(o.engine), rf.r2, o.engine));
            report.sweeps.push_back(labelled(name + "-rhs", rhs, std::move(rp)));
        }

        Scenario ls;
        if (convolution) {
            ls = small ? Scenario::ConvolutionSmall : Scenario::ConvolutionLarge;
        } else {
            ls = small ? Scenario::GaussianModulationSmall : Scenario::GaussianModulationLarge;
        }
        report.verdicts.push_back(judge(tagged(ls, name + ";" + pq_label(t.p, t.q)), lf.alpha,
                                        theoretical_exponents(ls, {{t.p, t.q}}), tol.fit(o.engine), lf.r2, o.engine));

        // Boundedness forces α_lhs >= α_rhs as λ → 0 and α_lhs <= α_rhs as λ → ∞.
        const double margin = small ? lf.alpha - alpha_rhs : alpha_rhs - lf.alpha;
        bool expected;
        std::string id;
        if (convolution) {
            expected = small ? young_indices(t) : holder_indices(t);
            id = small ? "CONV_INDEX_YOUNG" : "CONV_INDEX_HOLDER";
        } else {
            expected = small ? product_young_indices(t) : product_holder_indices(t);
            id = small ? "PROD_INDEX_YOUNG" : "PROD_INDEX_HOLDER";
        }
        report.verdicts.push_back(judge_consistency(id + "[" + t.label() + "]", margin, expected, tol.fit(o.engine), r2,
                                                    o.engine));
    }
    return report;
}

} // namespace

ScenarioReport scenario_convolution(const IndexTuple& t, const ScenarioOptions& options) {
    return bilinear_scenario(t, options, true);
}

ScenarioReport scenario_product(const IndexTuple& t, const ScenarioOptions& options) {
    return bilinear_scenario(t, options, false);
}

ScenarioReport scenario_inclusion(Exponent p1, Exponent q1, Exponent p2, Exponent q2, const ScenarioOptions& o) {
    ScenarioReport report;
    const Tolerances& tol = o.tolerances;
    const std::string label = "p1=" + p1.to_string() + ";q1=" + q1.to_string() + ";p2=" + p2.to_string() +
                              ";q2=" + q2.to_string();
    for (Regime regime : both_ends()) {
        if (o.range && ((regime == Regime::SmallLambda) != (o.range->max <= 1.0))) continue;
        const bool small = regime == Regime::SmallLambda;
        const Scenario s = small ? Scenario::GaussianModulationSmall : Scenario::GaussianModulationLarge;
        double alpha[2];
        double r2 = 1.0;
        int k = 0;
        for (const auto& [pi, qi] : {ExponentPair{p1, q1}, ExponentPair{p2, q2}}) {
            SweepPlan plan = gaussian_mpq_plan(pi, qi, regime, o);
            std::vector<SweepPoint> pts = run_sweep(plan);
            const ScalingFit f = fit_exponent(pts);
            alpha[k++] = f.alpha;
            r2 = std::min(r2, f.r2);
            report.verdicts.push_back(judge(tagged(s, pq_label(pi, qi)), f.alpha, theoretical_exponents(s, {{pi, qi}}),
                                            tol.fit(o.engine), f.r2, o.engine));
            report.sweeps.push_back(labelled("inclusion", plan, std::move(pts)));
        }
        // ‖f‖_{M^{p2,q2}} <= C ‖f‖_{M^{p1,q1}} along φ_λ at both ends.
        const double margin = small ? alpha[1] - alpha[0] : alpha[0] - alpha[1];
        const bool expected = small ? p1.value() <= p2.value() : q1.value() <= q2.value();
        report.verdicts.push_back(judge_consistency(std::string(small ? "INCL_INDEX_P" : "INCL_INDEX_Q") + "[" +
                                                        label + "]",
                                                    margin, expected, tol.fit(o.engine), r2, o.engine));
    }
    return report;
}

ScenarioReport scenario_schrodinger(Exponent p, Exponent q, const ScenarioOptions& o) {
    ScenarioReport report;
    const Tolerances& tol = o.tolerances;
    const bool numeric = o.engine == Engine::Numeric;
    const std::string label = pq_label(p, q);

    auto make_plan = [&](Exponent pp, Regime regime) {
        SweepPlan plan;
        plan.family = Family::GaussianU0;
        plan.norm = mpq_spec(pp, q);
        plan.regime = regime;
        plan.engine = o.engine;
        plan.threads = o.threads;
        if (regime == Regime::LargeT) {
            plan.range = default_range(o.engine, regime);
            if (numeric) plan.grid = Grid(1, 8192, 1.0 / 8);
        } else {
            // λ^{-2} must dominate 4π t0 across the window
            plan.range = o.range.value_or(numeric ? ParameterRange{0.02, 0.2, 17} : ParameterRange{1e-3, 1e-2, 17});
            if (numeric) plan.grid = o.grid.value_or(Grid(1, 2048, 1.0 / 4));
        }
        return plan;
    };

    SweepPlan data = make_plan(p.conjugate(), Regime::SmallLambda);
    SweepPlan evolved = make_plan(p, Regime::SmallLambda);
    evolved.evolve_time = o.t0;
    SweepPlan decay = make_plan(p, Regime::LargeT);

    double alpha[3];
    double r2 = 1.0;
    const Scenario ids[3] = {Scenario::SchrodingerData, Scenario::SchrodingerEvolved, Scenario::SchrodingerDecay};
    const char* names[3] = {"schrodinger-data", "schrodinger-evolved", "schrodinger-decay"};
    SweepPlan* plans[3] = {&data, &evolved, &decay};
    for (int k = 0; k < 3; ++k) {
        std::vector<SweepPoint> pts = run_sweep(*plans[k]);
        const ScalingFit f = fit_exponent(pts);
        alpha[k] = f.alpha;
        if (k < 2) r2 = std::min(r2, f.r2);
        report.verdicts.push_back(judge(tagged(ids[k], label), f.alpha, theoretical_exponents(ids[k], {{p, q}}),
                                        tol.fit(o.engine), f.r2, o.engine));
        report.sweeps.push_back(labelled(names[k], *plans[k], std::move(pts)));
    }
    // ‖u(λ²t0, λ·)‖_{M^{p,q}} <= C ‖u0(λ·)‖_{M^{p',q}} as λ → 0 needs -d/p >= -d/p'.
    report.verdicts.push_back(judge_consistency("SCHRO_NECESSITY[" + label + "]", alpha[1] - alpha[0],
                                                p.value() >= 2.0, tol.fit(o.engine), r2, o.engine));
    return report;
}

ScenarioReport scenario_equivalence(CompactSide side, std::span<const ExponentPair> pairs,
                                    const ScenarioOptions& o) {
    const bool time = side == CompactSide::Time;
    const ParameterRange range = o.range.value_or(time ? ParameterRange{1.0, 16.0, 5} : ParameterRange{1.0 / 16, 1.0, 5});
    if (time ? range.min < 1.0 : range.max > 1.0) throw InvalidParam("dilations must keep the support inside radius 1");
    const Grid grid = o.grid.value_or(time ? Grid(1, 4096, 1.0 / 512) : Grid(1, 8192, 1.0 / 8));
    const std::vector<double> lambdas = range.values();

    std::vector<std::vector<EquivalenceReport>> rows(lambdas.size());
    parallel_for(lambdas.size(), o.threads, [&](std::size_t i) {
        const double lambda = lambdas[i];
        SampledFunction f = [&] {
            if (time) return make_bump(grid, 0.0, 1.0 / lambda);
            const Grid xi = grid.reciprocal();
            return inverse_fourier(SampledFunction::from_function(
                                       xi, [&](double s) { return Complex(bump_profile(s / lambda) / lambda); }),
                                   grid);
        }();
        rows[i] = compact_support_equivalence_checks(f, pairs, side, 1.0);
    });

    ScenarioReport report;
    const std::string name = time ? "equivalence-time" : "equivalence-frequency";
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        SweepResult sweep{name, time ? "bump" : "band_limited_bump", Engine::Numeric, pairs[k], {}};
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            const double r = rows[i][k].ratio;
            sweep.points.push_back({lambdas[i], r});
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        Verdict v = judge(std::string(time ? "EQUIV_BAND_TIME" : "EQUIV_BAND_FREQUENCY") + "[" +
                              pq_label(pairs[k].p, pairs[k].q) + "]",
                          hi / lo, {o.tolerances.equivalence_band, Relation::AtMost}, 0.0, 1.0, Engine::Numeric);
        v.note = "band [" + short_number(lo) + ", " + short_number(hi) + "]";
        report.verdicts.push_back(std::move(v));
        report.sweeps.push_back(std::move(sweep));
    }
    return report;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
    std::vector<std::exception_ptr> errors(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace amalgam
