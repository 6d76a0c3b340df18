#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regmod/geometry.hpp"

namespace regmod {

inline constexpr const char* kToolVersion = "0.1.0";

/// Fixed-width float formatting for reports: six significant digits,
/// locale-independent, "inf" for flagged infinities.
std::string format_g6(double v);

/// One estimator result row (estimate and sweep reports).
struct ReportRow {
    std::string collection;
    double q = 0.0;
    std::string kind;
    std::string method;
    double value = 0.0;
    bool infinite = false;
    std::string verdict;
    double uncertainty = 0.0;
    long wallclock_ms = 0;
    std::uint64_t seed = 42;
};

/// One cross-validation row (verify reports). No timing: verify output is
/// byte-identical for identical (spec, seed, schedule).
struct CheckRow {
    std::string collection;
    std::string check;
    std::string detail;
    bool pass = false;
};

/// One golden-value row (reproduce reports).
struct GoldenRow {
    std::string collection;
    std::string quantity;
    double q = 0.0;
    std::string measured;
    std::string target;
    bool pass = false;
};

struct Report {
    std::string tool_version = kToolVersion;
    std::string config_echo;
    std::vector<ReportRow> rows;
    std::vector<CheckRow> checks;
    std::vector<GoldenRow> goldens;

    std::string to_csv() const;
    std::string to_json() const;
    bool all_pass() const;
};

}  // namespace regmod
