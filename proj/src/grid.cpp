#include "amalgam/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>

#include "amalgam/errors.hpp"

namespace amalgam {

namespace {

constexpr char kMagic[8] = {'A', 'M', 'G', 'S', 'F', '0', '0', '1'};

template <class T>
void put_le(std::ostream& out, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
    unsigned char bytes[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw Error("truncated sampled-function file");
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

bool is_integer_multiple(double x, double step, long long& k) {
    double r = x / step;
    double rounded = std::round(r);
    if (std::abs(r - rounded) > 1e-9 * std::max(1.0, std::abs(r))) return false;
    k = static_cast<long long>(rounded);
    return true;
}

} // namespace

Grid::Grid(int dimension, std::size_t samples_per_axis, double spacing)
    : dimension_(dimension), n_(samples_per_axis), spacing_(spacing) {
    if (dimension != 1 && dimension != 2) throw InvalidParam("grid dimension must be 1 or 2");
    if (samples_per_axis < 8 || !std::has_single_bit(samples_per_axis)) {
        throw InvalidParam("samples per axis must be a power of two >= 8, got " +
                           std::to_string(samples_per_axis));
    }
    if (!(spacing > 0.0) || !std::isfinite(spacing)) throw InvalidParam("grid spacing must be positive");
}

Grid Grid::reciprocal() const {
    return Grid(dimension_, n_, 1.0 / (static_cast<double>(n_) * spacing_));
}

bool Grid::compatible(const Grid& other) const noexcept {
    return dimension_ == other.dimension_ && n_ == other.n_ &&
           std::abs(spacing_ - other.spacing_) <= 1e-12 * std::max(spacing_, other.spacing_);
}

SampledFunction::SampledFunction(Grid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.point_count()) {
        throw InvalidParam("sample count " + std::to_string(values_.size()) + " does not match grid size " +
                           std::to_string(grid_.point_count()));
    }
    for (const auto& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InvalidParam("non-finite sample");
    }
}

SampledFunction SampledFunction::zeros(const Grid& grid) {
    return SampledFunction(grid, std::vector<Complex>(grid.point_count()));
}

SampledFunction SampledFunction::from_function(const Grid& grid, const std::function<Complex(double)>& fn) {
    if (grid.dimension() != 1) throw InvalidParam("one-variable sampler on a 2-d grid");
    std::vector<Complex> v(grid.point_count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.coordinate(i));
    return SampledFunction(grid, std::move(v));
}

SampledFunction SampledFunction::from_function(const Grid& grid,
                                               const std::function<Complex(double, double)>& fn) {
    if (grid.dimension() != 2) throw InvalidParam("two-variable sampler on a 1-d grid");
    const std::size_t n = grid.samples_per_axis();
    std::vector<Complex> v(grid.point_count());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) v[i * n + j] = fn(grid.coordinate(i), grid.coordinate(j));
    }
    return SampledFunction(grid, std::move(v));
}

SampledFunction SampledFunction::conj() const {
    std::vector<Complex> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), [](Complex z) { return std::conj(z); });
    return SampledFunction(grid_, std::move(v));
}

SampledFunction SampledFunction::scaled(Complex c) const {
    std::vector<Complex> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), [c](Complex z) { return c * z; });
    return SampledFunction(grid_, std::move(v));
}

double SampledFunction::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

double SampledFunction::boundary_max_abs() const noexcept {
    const std::size_t n = grid_.samples_per_axis();
    double m = 0.0;
    if (grid_.dimension() == 1) return std::max(std::abs(values_.front()), std::abs(values_.back()));
    for (std::size_t k = 0; k < n; ++k) {
        m = std::max({m, std::abs(values_[k]), std::abs(values_[(n - 1) * n + k]), std::abs(values_[k * n]),
                      std::abs(values_[k * n + n - 1])});
    }
    return m;
}

double SampledFunction::tail_ratio() const noexcept {
    double peak = max_abs();
    return peak == 0.0 ? 0.0 : boundary_max_abs() / peak;
}

void require_tail(const SampledFunction& f, const std::string& what) {
    double r = f.tail_ratio();
    if (!(r < kTailTolerance)) {
        throw TailTruncation(what + ": boundary/peak ratio " + std::to_string(r) + " is not below 1e-12");
    }
}

void require_same_grid(const Grid& a, const Grid& b, const std::string& what) {
    if (!a.compatible(b)) throw GridMismatch(what + ": operands live on different grids");
}

double bump_profile(double s) noexcept {
    double s2 = s * s;
    if (s2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s2));
}

SampledFunction make_gaussian(const Grid& grid, GaussianFamilyParam param) {
    if (!(param.lambda > 0.0) || !std::isfinite(param.lambda)) throw InvalidParam("Gaussian λ must be positive");
    const double rate = param.rate();
    // exp(-π r |x|²) has its smallest boundary value on the axis points at distance N dx/2.
    double edge = grid.half_extent();
    if (!(std::exp(-std::numbers::pi * rate * edge * edge) < kTailTolerance)) {
        throw TailTruncation("Gaussian with rate " + std::to_string(rate) + " does not decay on this grid");
    }
    if (grid.dimension() == 1) {
        return SampledFunction::from_function(
            grid, [rate](double x) { return Complex(std::exp(-std::numbers::pi * rate * x * x)); });
    }
    return SampledFunction::from_function(grid, [rate](double x, double y) {
        return Complex(std::exp(-std::numbers::pi * rate * x * x) * std::exp(-std::numbers::pi * rate * y * y));
    });
}

SampledFunction make_complex_gaussian(const Grid& grid, double a, double b) {
    if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b)) throw InvalidParam("complex Gaussian needs a > 0");
    const Complex c(a, b);
    const Complex inv = 1.0 / c;
    const double d = grid.dimension();
    const Complex pre = std::pow(c, -0.5 * d);
    SampledFunction f = grid.dimension() == 1
                            ? SampledFunction::from_function(
                                  grid, [&](double x) { return pre * std::exp(-std::numbers::pi * x * x * inv); })
                            : SampledFunction::from_function(grid, [&](double x, double y) {
                                  return pre * std::exp(-std::numbers::pi * (x * x + y * y) * inv);
                              });
    require_tail(f, "complex Gaussian");
    return f;
}

SampledFunction make_witness(const Grid& grid, const WitnessSpec& spec, double dilation) {
    if (grid.dimension() != 1) throw InvalidParam("witness functions are one-dimensional");
    if (!(spec.epsilon > 0.0)) throw InvalidParam("witness ε must be positive");
    if (!(dilation > 0.0)) throw InvalidParam("dilation must be positive");
    const double power = spec.power();
    const double half_cell = 0.5 * grid.spacing();
    return SampledFunction::from_function(grid, [&](double t) {
        double s = dilation * (t == 0.0 ? half_cell : std::abs(t));
        bool inside = spec.kind == WitnessKind::SmallLambda ? s <= 1.0 : s >= 1.0;
        return inside ? Complex(std::pow(s, power)) : Complex(0.0);
    });
}

SampledFunction make_indicator(const Grid& grid, double lo, double hi) {
    if (grid.dimension() != 1) throw InvalidParam("indicator is one-dimensional");
    if (!(lo <= hi)) throw InvalidParam("indicator needs lo <= hi");
    return SampledFunction::from_function(grid, [&](double x) { return Complex(x >= lo && x <= hi ? 1.0 : 0.0); });
}

SampledFunction make_bump(const Grid& grid, double centre, double radius) {
    if (grid.dimension() != 1) throw InvalidParam("bump is one-dimensional");
    if (!(radius > 0.0)) throw InvalidParam("bump radius must be positive");
    return SampledFunction::from_function(grid,
                                          [&](double x) { return Complex(bump_profile((x - centre) / radius)); });
}

SampledFunction dilate(const SampledFunction& f, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidParam("dilation λ must be positive");
    const Grid& g = f.grid();
    const std::size_t n = g.samples_per_axis();
    const double half = static_cast<double>(n / 2);
    auto f_at = [&](std::size_t i, std::size_t j) { return g.dimension() == 1 ? f[i] : f[i * n + j]; };

    // Fractional index of λ x together with its interpolation weight.
    struct Stencil {
        std::size_t lo;
        double frac;
        bool valid;
    };
    std::vector<Stencil> stencil(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = lambda * (static_cast<double>(i) - half) + half;
        double fl = std::floor(u);
        Stencil s{0, u - fl, fl >= 0.0 && u <= static_cast<double>(n - 1)};
        if (s.valid) s.lo = static_cast<std::size_t>(fl);
        if (s.valid && s.lo == n - 1) s.frac = 0.0;
        stencil[i] = s;
    }
    auto lerp = [&](const Stencil& s, auto&& sample) {
        Complex v = sample(s.lo);
        if (s.frac != 0.0) v = (1.0 - s.frac) * v + s.frac * sample(s.lo + 1);
        return v;
    };

    std::vector<Complex> out(g.point_count());
    if (g.dimension() == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            if (stencil[i].valid) out[i] = lerp(stencil[i], [&](std::size_t k) { return f_at(k, 0); });
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            if (!stencil[i].valid) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (!stencil[j].valid) continue;
                out[i * n + j] = lerp(stencil[i], [&](std::size_t r) {
                    return lerp(stencil[j], [&](std::size_t c) { return f_at(r, c); });
                });
            }
        }
    }
    return SampledFunction(g, std::move(out));
}

SampledFunction translate(const SampledFunction& f, std::array<double, 2> shift, ShiftMode mode) {
    const Grid& g = f.grid();
    const long long n = static_cast<long long>(g.samples_per_axis());
    std::array<long long, 2> k{0, 0};
    for (int axis = 0; axis < g.dimension(); ++axis) {
        if (!is_integer_multiple(shift[axis], g.spacing(), k[axis])) {
            throw OffGridShift("shift " + std::to_string(shift[axis]) + " is not a multiple of the spacing");
        }
    }
    auto source = [&](long long i, long long s, long long& out) {
        long long j = i - s;
        if (mode == ShiftMode::Circular) {
            out = ((j % n) + n) % n;
            return true;
        }
        out = j;
        return j >= 0 && j < n;
    };
    std::vector<Complex> out(g.point_count());
    if (g.dimension() == 1) {
        for (long long i = 0; i < n; ++i) {
            long long j;
            if (source(i, k[0], j)) out[i] = f[j];
        }
    } else {
        for (long long i = 0; i < n; ++i) {
            long long si;
            if (!source(i, k[0], si)) continue;
            for (long long j = 0; j < n; ++j) {
                long long sj;
                if (source(j, k[1], sj)) out[i * n + j] = f[si * n + sj];
            }
        }
    }
    return SampledFunction(g, std::move(out));
}

SampledFunction translate(const SampledFunction& f, double x0, ShiftMode mode) {
    if (f.grid().dimension() != 1) throw InvalidParam("scalar shift on a 2-d grid");
    return translate(f, std::array<double, 2>{x0, 0.0}, mode);
}

SampledFunction modulate(const SampledFunction& f, std::array<double, 2> xi) {
    const Grid& g = f.grid();
    const std::size_t n = g.samples_per_axis();
    auto phase = [](double freq, double t) {
        return freq == 0.0 ? Complex(1.0) : std::polar(1.0, 2.0 * std::numbers::pi * freq * t);
    };
    std::vector<Complex> out(f.values().begin(), f.values().end());
    if (g.dimension() == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] *= phase(xi[0], g.coordinate(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                out[i * n + j] *= phase(xi[0], g.coordinate(i)) * phase(xi[1], g.coordinate(j));
            }
        }
    }
    return SampledFunction(g, std::move(out));
}

SampledFunction modulate(const SampledFunction& f, double xi0) {
    if (f.grid().dimension() != 1) throw InvalidParam("scalar frequency on a 2-d grid");
    return modulate(f, std::array<double, 2>{xi0, 0.0});
}

void write_binary(const SampledFunction& f, std::ostream& out) {
    out.write(kMagic, sizeof kMagic);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().dimension()));
    put_le<std::uint32_t>(out, 0);
    put_le<std::uint64_t>(out, f.grid().samples_per_axis());
    put_le<double>(out, f.grid().spacing());
    for (const auto& v : f.values()) {
        put_le<double>(out, v.real());
        put_le<double>(out, v.imag());
    }
    if (!out) throw Error("failed to write sampled function");
}

SampledFunction read_binary(std::istream& in) {
    char magic[8];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
        throw Error("not a sampled-function file (bad magic)");
    }
    auto d = get_le<std::uint32_t>(in);
    (void)get_le<std::uint32_t>(in);
    auto n = get_le<std::uint64_t>(in);
    auto dx = get_le<double>(in);
    Grid grid(static_cast<int>(d), static_cast<std::size_t>(n), dx);
    std::vector<Complex> values(grid.point_count());
    for (auto& v : values) {
        double re = get_le<double>(in);
        double im = get_le<double>(in);
        v = Complex(re, im);
    }
    return SampledFunction(grid, std::move(values));
}

void write_binary(const SampledFunction& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    write_binary(f, out);
}

SampledFunction read_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    return read_binary(in);
}

} // namespace amalgam
