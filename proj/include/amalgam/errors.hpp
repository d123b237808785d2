#pragma once

#include <stdexcept>
#include <string>

namespace amalgam {

// Base of every error raised by the library. Each subclass corresponds to one
// failure mode named in the module contracts.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidParam : public Error {
public:
    explicit InvalidParam(const std::string& msg) : Error("invalid parameter: " + msg) {}
};

// A sampled function (or its spectrum) is not negligible at the grid boundary.
class TailTruncation : public Error {
public:
    explicit TailTruncation(const std::string& msg) : Error("tail truncation: " + msg) {}
};

class GridMismatch : public Error {
public:
    explicit GridMismatch(const std::string& msg) : Error("grid mismatch: " + msg) {}
};

class OffGridShift : public Error {
public:
    explicit OffGridShift(const std::string& msg) : Error("off-grid shift: " + msg) {}
};

class SupportViolation : public Error {
public:
    explicit SupportViolation(const std::string& msg) : Error("support violation: " + msg) {}
};

class DegenerateFit : public Error {
public:
    explicit DegenerateFit(const std::string& msg) : Error("degenerate fit: " + msg) {}
};

// Raised by numeric sweeps when the grid cannot represent the dilated
// function at some parameter value.
class GridInadequate : public Error {
public:
    GridInadequate(double parameter, const std::string& msg)
        : Error("grid inadequate at parameter " + std::to_string(parameter) + ": " + msg),
          parameter_(parameter) {}

    double parameter() const noexcept { return parameter_; }

private:
    double parameter_;
};

} // namespace amalgam
