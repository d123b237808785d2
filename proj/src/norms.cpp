#include "amalgam/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "amalgam/errors.hpp"
#include "amalgam/fft.hpp"

namespace amalgam {

namespace {

// exp(-πx²) < 1e-20 beyond this distance; the Gaussian window is cut there.
constexpr double kGaussianWindowReach = 3.8285;

// |x|^p with the common exponents special-cased (std::pow dominates the STFT loops).
inline double pow_abs(double m, double p) noexcept {
    if (p == 1.0) return m;
    if (p == 2.0) return m * m;
    if (p == 4.0) {
        double s = m * m;
        return s * s;
    }
    if (p == 1.5) return m * std::sqrt(m);
    return std::pow(m, p);
}

// (weight Σ v^p)^{1/p} for nonnegative v, computed relative to the maximum.
double lp_of_values(std::span<const double> v, double weight, Exponent p) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, x);
    if (peak == 0.0 || p.is_infinite()) return peak;
    const double pv = p.value();
    double sum = 0.0;
    for (double x : v) sum += pow_abs(x / peak, pv);
    return peak * std::pow(weight * sum, 1.0 / pv);
}

double lp_of_moduli(std::span<const Complex> v, double weight, Exponent p) {
    std::vector<double> m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) m[i] = std::abs(v[i]);
    return lp_of_values(m, weight, p);
}

// Sum/max over index ranges of a fixed nonnegative array. Queries only combine
// nonnegative partial results, so range sums carry no cancellation error.
class RangeTree {
public:
    RangeTree(std::span<const double> values, bool use_max) : max_(use_max) {
        n_ = 1;
        while (n_ < values.size()) n_ <<= 1;
        tree_.assign(2 * n_, 0.0);
        std::copy(values.begin(), values.end(), tree_.begin() + static_cast<std::ptrdiff_t>(n_));
        for (std::size_t i = n_ - 1; i >= 1; --i) tree_[i] = combine(tree_[2 * i], tree_[2 * i + 1]);
    }

    /// Inclusive range [lo, hi].
    double query(std::size_t lo, std::size_t hi) const noexcept {
        double left = 0.0, right = 0.0;
        std::size_t l = lo + n_, r = hi + n_ + 1;
        while (l < r) {
            if (l & 1U) left = combine(left, tree_[l++]);
            if (r & 1U) right = combine(tree_[--r], right);
            l >>= 1;
            r >>= 1;
        }
        return combine(left, right);
    }

private:
    double combine(double a, double b) const noexcept { return max_ ? std::max(a, b) : a + b; }

    bool max_;
    std::size_t n_ = 1;
    std::vector<double> tree_;
};

// Window samples w_m = g(m dx) for offsets m in [lo, hi].
struct WindowOffsets {
    long long lo = 0;
    long long hi = -1;
    std::vector<double> weights;

    double at(long long m) const noexcept { return weights[static_cast<std::size_t>(m - lo)]; }
};

WindowOffsets window_offsets(Window window, const Grid& grid) {
    const double dx = grid.spacing();
    const long long cap = static_cast<long long>(grid.samples_per_axis()) - 1;
    WindowOffsets w;
    if (window == Window::Box) {
        long long reach = static_cast<long long>(std::ceil(1.0 / dx)) + 1;
        w.lo = std::numeric_limits<long long>::max();
        for (long long m = -reach; m <= reach; ++m) {
            if (window_profile(window, static_cast<double>(m) * dx) != 0.0) {
                w.lo = std::min(w.lo, m);
                w.hi = std::max(w.hi, m);
            }
        }
        w.lo = std::max(w.lo, -cap);
        w.hi = std::min(w.hi, cap);
    } else {
        long long reach = std::min(cap, static_cast<long long>(std::ceil(kGaussianWindowReach / dx)));
        w.lo = -reach;
        w.hi = reach;
    }
    for (long long m = w.lo; m <= w.hi; ++m) w.weights.push_back(window_profile(window, static_cast<double>(m) * dx));
    return w;
}

void require_one_dimensional(const Grid& g, const char* what) {
    if (g.dimension() != 1) throw InvalidParam(std::string(what) + " is implemented for d = 1");
}

// [first, last] nonzero sample indices, or first > last for the zero function.
std::pair<long long, long long> support_of(const SampledFunction& f) {
    long long first = static_cast<long long>(f.size()), last = -1;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] != Complex(0.0)) {
            first = std::min(first, static_cast<long long>(i));
            last = static_cast<long long>(i);
        }
    }
    return {first, last};
}

} // namespace

void NormSpec::validate() const {
    bool needs_window = space == Space::WLpLq || space == Space::WFLpLq || space == Space::Mpq;
    if (needs_window && !window) throw InvalidParam(to_string(space) + " needs a window");
    if (!needs_window && window) throw InvalidParam(to_string(space) + " takes no window");
}

std::string to_string(Space s) {
    switch (s) {
    case Space::Lp: return "Lp";
    case Space::FLp: return "FLp";
    case Space::WLpLq: return "W(Lp,Lq)";
    case Space::WFLpLq: return "W(FLp,Lq)";
    case Space::Mpq: return "Mpq";
    }
    return "?";
}

std::string to_string(Window w) { return w == Window::Gaussian ? "gaussian" : "box"; }

double window_profile(Window w, double x) noexcept {
    if (w == Window::Box) return (x >= -1.0 && x < 1.0) ? 1.0 : 0.0;
    if (std::abs(x) > kGaussianWindowReach) return 0.0;
    return std::exp(-std::numbers::pi * x * x);
}

double lp_norm(const SampledFunction& f, Exponent p) {
    const Grid& g = f.grid();
    return lp_of_moduli(f.values(), std::pow(g.spacing(), g.dimension()), p);
}

double flp_norm(const SampledFunction& f, Exponent p) { return lp_norm(fourier(f), p); }

double mixed_norm(const PhaseSpaceArray& v, Exponent p, Exponent q) {
    const std::size_t nx = v.x_grid.samples_per_axis();
    const std::size_t nxi = v.xi_grid.samples_per_axis();
    std::vector<double> inner(nxi);
    std::vector<double> column(nx);
    for (std::size_t k = 0; k < nxi; ++k) {
        for (std::size_t i = 0; i < nx; ++i) column[i] = std::abs(v.at(i, k));
        inner[k] = lp_of_values(column, v.x_grid.spacing(), p);
    }
    return lp_of_values(inner, v.xi_grid.spacing(), q);
}

std::vector<double> amalgam_local_profile(const SampledFunction& f, LocalComponent local, Exponent p,
                                          Window window) {
    const Grid& grid = f.grid();
    require_one_dimensional(grid, "the amalgam norm");
    const std::size_t n = grid.samples_per_axis();
    const double dx = grid.spacing();
    std::vector<double> profile(n, 0.0);
    const auto [fa, fb] = support_of(f);
    if (fa > fb) return profile;
    const WindowOffsets w = window_offsets(window, grid);
    const long long nn = static_cast<long long>(n);

    if (local == LocalComponent::FLp) {
        const std::array<std::size_t, 1> ext{n};
        const double dxi = grid.reciprocal().spacing();
        std::vector<Complex> buf(n), spec(n);
        for (long long i = 0; i < nn; ++i) {
            const long long lo = std::max(fa, i + w.lo), hi = std::min(fb, i + w.hi);
            if (lo > hi) continue;
            std::fill(buf.begin(), buf.end(), Complex(0.0));
            bool any = false;
            for (long long j = lo; j <= hi; ++j) {
                buf[j] = dx * w.at(j - i) * f[j];
                any = any || buf[j] != Complex(0.0);
            }
            if (!any) continue;
            fft::transform(buf, spec, ext, fft::Direction::Forward);
            profile[i] = lp_of_moduli(spec, dxi, p);
        }
        return profile;
    }

    const double peak = f.max_abs();
    std::vector<double> a(n);
    if (p.is_infinite()) {
        for (std::size_t j = 0; j < n; ++j) a[j] = std::abs(f[j]) / peak;
    } else {
        for (std::size_t j = 0; j < n; ++j) a[j] = pow_abs(std::abs(f[j]) / peak, p.value());
    }

    if (window == Window::Box) {
        RangeTree tree(a, p.is_infinite());
        for (long long i = 0; i < nn; ++i) {
            const long long lo = std::max(fa, i + w.lo), hi = std::min(fb, i + w.hi);
            if (lo > hi) continue;
            double s = tree.query(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi));
            profile[i] = p.is_infinite() ? peak * s : peak * std::pow(dx * s, 1.0 / p.value());
        }
        return profile;
    }

    std::vector<double> wp(w.weights.size());
    for (std::size_t m = 0; m < wp.size(); ++m) {
        wp[m] = p.is_infinite() ? w.weights[m] : pow_abs(w.weights[m], p.value());
    }
    for (long long i = 0; i < nn; ++i) {
        const long long lo = std::max(fa, i + w.lo), hi = std::min(fb, i + w.hi);
        if (lo > hi) continue;
        const double* wrow = wp.data() - (w.lo + i);
        double s = 0.0;
        if (p.is_infinite()) {
            for (long long j = lo; j <= hi; ++j) s = std::max(s, a[j] * wrow[j]);
            profile[i] = peak * s;
        } else {
            for (long long j = lo; j <= hi; ++j) s += a[j] * wrow[j];
            profile[i] = peak * std::pow(dx * s, 1.0 / p.value());
        }
    }
    return profile;
}

double amalgam_norm(const SampledFunction& f, LocalComponent local, Exponent p, Exponent q, Window window) {
    std::vector<double> profile = amalgam_local_profile(f, local, p, window);
    return lp_of_values(profile, f.grid().spacing(), q);
}

SampledFunction modulation_window(const Grid& grid, Window window) {
    require_one_dimensional(grid, "the modulation window");
    // ‖exp(-πx²)‖_2 = 2^{-1/4}, ‖χ_[-1,1)‖_2 = √2.
    const double scale = window == Window::Gaussian ? std::pow(2.0, 0.25) : std::sqrt(0.5);
    return SampledFunction::from_function(grid, [&](double x) { return Complex(scale * window_profile(window, x)); });
}

std::vector<double> modulation_norms(const SampledFunction& f, std::span<const ExponentPair> pairs, Window window) {
    const Grid& grid = f.grid();
    require_one_dimensional(grid, "the modulation norm");
    const std::size_t n = grid.samples_per_axis();
    const SampledFunction g = modulation_window(grid, window);

    std::vector<Exponent> inner;
    for (const auto& pq : pairs) {
        if (std::find(inner.begin(), inner.end(), pq.p) == inner.end()) inner.push_back(pq.p);
    }
    double l1 = 0.0;
    for (const auto& v : f.values()) l1 += std::abs(v);
    const double scale = grid.spacing() * l1 * g.max_abs(); // bounds max |V|
    std::vector<double> result(pairs.size(), 0.0);
    if (scale == 0.0) return result;

    std::vector<std::vector<double>> acc(inner.size(), std::vector<double>(n, 0.0));
    std::vector<double> moduli(n);
    for_each_stft_row(f, g, [&](std::size_t, std::span<const Complex> row) {
        for (std::size_t k = 0; k < n; ++k) moduli[k] = std::abs(row[k]) / scale;
        for (std::size_t e = 0; e < inner.size(); ++e) {
            auto& a = acc[e];
            if (inner[e].is_infinite()) {
                for (std::size_t k = 0; k < n; ++k) a[k] = std::max(a[k], moduli[k]);
            } else {
                const double pv = inner[e].value();
                for (std::size_t k = 0; k < n; ++k) a[k] += pow_abs(moduli[k], pv);
            }
        }
    });

    const double dx = grid.spacing();
    const double dxi = grid.reciprocal().spacing();
    std::vector<double> marginal(n);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        const std::size_t e = static_cast<std::size_t>(std::find(inner.begin(), inner.end(), pairs[r].p) - inner.begin());
        for (std::size_t k = 0; k < n; ++k) {
            marginal[k] = inner[e].is_infinite() ? acc[e][k] : std::pow(dx * acc[e][k], 1.0 / inner[e].value());
        }
        result[r] = scale * lp_of_values(marginal, dxi, pairs[r].q);
    }
    return result;
}

double modulation_norm(const SampledFunction& f, Exponent p, Exponent q, Window window) {
    const std::array<ExponentPair, 1> pair{ExponentPair{p, q}};
    return modulation_norms(f, pair, window).front();
}

double evaluate_norm(const NormSpec& spec, const SampledFunction& f) {
    spec.validate();
    const auto [p, q] = spec.exponents;
    switch (spec.space) {
    case Space::Lp: return lp_norm(f, p);
    case Space::FLp: return flp_norm(f, p);
    case Space::WLpLq: return amalgam_norm(f, LocalComponent::Lp, p, q, *spec.window);
    case Space::WFLpLq: return amalgam_norm(f, LocalComponent::FLp, p, q, *spec.window);
    case Space::Mpq: return modulation_norm(f, p, q, *spec.window);
    }
    throw InvalidParam("unknown space");
}

PartitionWindow::PartitionWindow(int truncation, double radius) : truncation_(truncation), radius_(radius) {
    if (truncation < 1) throw InvalidParam("partition truncation must be >= 1");
    if (!(radius > 0.5 && radius <= 1.0)) throw InvalidParam("partition bump radius must lie in (1/2, 1]");
}

PartitionWindow PartitionWindow::for_grid(const Grid& grid, double radius) {
    const double xi_max = grid.reciprocal().half_extent();
    return PartitionWindow(std::max(1, static_cast<int>(std::floor(xi_max - radius))), radius);
}

double PartitionWindow::operator()(double xi) const noexcept {
    const double num = bump_profile(xi / radius_);
    if (num == 0.0) return 0.0;
    const double j0 = std::floor(xi);
    const double den = bump_profile((xi - j0) / radius_) + bump_profile((xi - j0 - 1.0) / radius_);
    return num / den;
}

double modulation_norm_partition(const SampledFunction& f, Exponent p, Exponent q, const PartitionWindow& nu) {
    require_one_dimensional(f.grid(), "the partition estimator");
    const SampledFunction spectrum = fourier(f);
    const Grid& xi_grid = spectrum.grid();
    const double peak = spectrum.max_abs();
    if (peak == 0.0) return 0.0;
    const int k_max = nu.truncation();
    double tail = 0.0;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        if (std::abs(xi_grid.coordinate(k)) > k_max - 1) tail = std::max(tail, std::abs(spectrum[k]));
    }
    if (!(tail < kTailTolerance * peak)) {
        throw TailTruncation("spectrum is not negligible beyond |ξ| = " + std::to_string(k_max - 1));
    }

    std::vector<double> pieces;
    std::vector<Complex> band(spectrum.size());
    for (int k = -k_max; k <= k_max; ++k) {
        bool any = false;
        for (std::size_t m = 0; m < band.size(); ++m) {
            double weight = nu(xi_grid.coordinate(m) - k);
            band[m] = weight * spectrum[m];
            any = any || band[m] != Complex(0.0);
        }
        pieces.push_back(any ? lp_norm(inverse_fourier(SampledFunction(xi_grid, band)), p) : 0.0);
    }
    return lp_of_values(pieces, 1.0, q);
}

std::vector<EquivalenceReport> compact_support_equivalence_checks(const SampledFunction& f,
                                                                  std::span<const ExponentPair> pairs,
                                                                  CompactSide side, double support_radius) {
    if (!(support_radius > 0.0)) throw InvalidParam("support radius must be positive");
    require_one_dimensional(f.grid(), "the equivalence check");
    std::vector<EquivalenceReport> reports(pairs.size());
    if (f.max_abs() == 0.0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (auto& r : reports) {
            r.zero_input = true;
            r.ratio = r.ratio_to_flq = r.ratio_to_lp = nan;
        }
        return reports;
    }

    const SampledFunction spectrum = fourier(f);
    const SampledFunction& checked = side == CompactSide::Time ? f : spectrum;
    // The transform of a frequency-supported function is only zero up to round-off.
    const double tol = (side == CompactSide::Time ? kTailTolerance : 1e-10) * checked.max_abs();
    for (std::size_t i = 0; i < checked.size(); ++i) {
        if (std::abs(checked.grid().coordinate(i)) > support_radius && std::abs(checked[i]) > tol) {
            throw SupportViolation(std::string(side == CompactSide::Time ? "function" : "spectrum") +
                                   " is not supported in |x| <= " + std::to_string(support_radius));
        }
    }

    const std::vector<double> modulation = modulation_norms(f, pairs);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        EquivalenceReport& r = reports[k];
        r.modulation = modulation[k];
        r.flq = lp_norm(spectrum, pairs[k].q);
        r.lp = lp_norm(f, pairs[k].p);
        r.ratio_to_flq = r.modulation / r.flq;
        r.ratio_to_lp = r.modulation / r.lp;
        r.ratio = side == CompactSide::Time ? r.ratio_to_flq : r.ratio_to_lp;
    }
    return reports;
}

EquivalenceReport compact_support_equivalence_check(const SampledFunction& f, Exponent p, Exponent q,
                                                    CompactSide side, double support_radius) {
    const std::array<ExponentPair, 1> pair{ExponentPair{p, q}};
    return compact_support_equivalence_checks(f, pair, side, support_radius).front();
}

} // namespace amalgam
