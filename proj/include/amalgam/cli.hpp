#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "amalgam/scaling_lab.hpp"

namespace amalgam::cli {

inline constexpr const char* kThreadsEnv = "AMALGAM_LAB_THREADS";

/// 17 significant digits; infinities as "inf"/"-inf", NaN as "nan".
std::string format_number(double v);

/// Header `scenario,family,engine,p,q,lambda,norm`, one row per sweep point.
void emit_sweeps_csv(std::ostream& out, const std::vector<SweepResult>& sweeps);

/// Header `scenario,measured_alpha,predicted_alpha,tolerance,r2,pass`.
void emit_verdicts_csv(std::ostream& out, const std::vector<Verdict>& verdicts);

/// {"version": 1, "sweeps": [...], "verdicts": [...]}; each sweep point and
/// verdict carries the same fields as the CSV rows.
void emit_json(std::ostream& out, const ScenarioReport& report);

/// Reads a flat `key = value` file. Blank lines and lines starting with '#' are
/// skipped; anything else without '=' throws InvalidParam.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Runs one subcommand. Returns 0 when every verdict passes, 1 when some
/// verdict fails and 2 on configuration or precondition errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace amalgam::cli
