#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace amalgam {

/// A Lebesgue exponent in [1, ∞]. Infinity is stored as a distinguished state
/// rather than as a large finite number, so 1/∞ is exactly zero.
class Exponent {
public:
    constexpr Exponent() = default;

    /// Throws InvalidParam unless value >= 1 (use infinity() for ∞).
    explicit Exponent(double value);

    static constexpr Exponent infinity() noexcept { return Exponent(Tag{}); }

    static Exponent parse(std::string_view text);

    constexpr bool is_infinite() const noexcept { return infinite_; }

    /// Finite value; +inf for the infinite exponent.
    constexpr double value() const noexcept {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }

    /// 1/p, exactly 0 for p = ∞.
    constexpr double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / value_; }

    /// p' with 1/p + 1/p' = 1.
    Exponent conjugate() const;

    std::string to_string() const;

    friend constexpr bool operator==(const Exponent& a, const Exponent& b) noexcept {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

private:
    struct Tag {};
    constexpr explicit Exponent(Tag) noexcept : value_(0.0), infinite_(true) {}

    double value_ = 1.0;
    bool infinite_ = false;
};

struct ExponentPair {
    Exponent p;
    Exponent q;

    friend constexpr bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// x^{c/x}-type factors such as p^{d/(2p)} with the x → ∞ limit value 1.
double power_over_self(Exponent x, double scale, double c);

} // namespace amalgam
