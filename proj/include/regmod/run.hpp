#pragma once

#include <ostream>

#include "regmod/report.hpp"
#include "regmod/schedule.hpp"

namespace regmod {

struct RunConfig {
    std::string preset;      // built-in collection id, or
    std::string spec_path;   // a JSON set specification
    std::vector<double> qs{0.5, 1.0};
    std::vector<std::string> kinds{"semi", "sub", "uniform"};
    std::vector<double> q_grid{0.5, 1.0, 1.5, 2.0, 2.5};
    RadiusSchedule schedule;
    std::string format = "csv";  // csv | json
    std::string out_path;
};

// Exit codes: 0 success, 1 golden or consistency failure, 2 usage/parse
// error, 3 semantic spec error.

/// Recomputes every built-in golden constant for the preset and prints
/// measured vs target with a pass/fail per stated tolerance.
int run_reproduce(const RunConfig& cfg, std::ostream& console, Report* report_out = nullptr);

/// Runs the requested estimators over the q list and emits rows.
int run_estimate(const RunConfig& cfg, std::ostream& console, Report* report_out = nullptr);

/// Critical-exponent sweep across the q grid.
int run_sweep(const RunConfig& cfg, std::ostream& console, Report* report_out = nullptr);

/// Full cross-validation suite: quotient-vs-margin consistency, two-method
/// agreement, metric characterizations, the q > 1 collapse, dual certificates,
/// slope chains, and the product-map restatements.
int run_verify(const RunConfig& cfg, std::ostream& console, Report* report_out = nullptr);

}  // namespace regmod
