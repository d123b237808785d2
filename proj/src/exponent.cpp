#include "amalgam/exponent.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "amalgam/errors.hpp"

namespace amalgam {

Exponent::Exponent(double value) : value_(value) {
    if (std::isinf(value) && value > 0) {
        infinite_ = true;
        value_ = 0.0;
        return;
    }
    if (!(value >= 1.0) || !std::isfinite(value)) {
        throw InvalidParam("exponent must lie in [1, inf], got " + std::to_string(value));
    }
}

Exponent Exponent::parse(std::string_view text) {
    if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity" || text == "∞") {
        return infinity();
    }
    auto parse_double = [&](std::string_view s) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw InvalidParam("cannot parse exponent '" + std::string(text) + "'");
        }
        return v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        double num = parse_double(text.substr(0, slash));
        double den = parse_double(text.substr(slash + 1));
        if (den == 0.0) throw InvalidParam("zero denominator in exponent '" + std::string(text) + "'");
        return Exponent(num / den);
    }
    return Exponent(parse_double(text));
}

Exponent Exponent::conjugate() const {
    if (infinite_) return Exponent(1.0);
    if (value_ == 1.0) return infinity();
    return Exponent(value_ / (value_ - 1.0));
}

std::string Exponent::to_string() const {
    if (infinite_) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value_);
    return buf;
}

double power_over_self(Exponent x, double scale, double c) {
    if (x.is_infinite()) return 1.0;
    return std::pow(scale * x.value(), c / x.value());
}

} // namespace amalgam
