#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "regmod/geometry.hpp"

namespace regmod {

/// Shrinking-radius schedule driving every liminf-style estimate.
struct RadiusSchedule {
    double rho0 = 0.5;
    double shrink = 0.5;
    int steps = 12;
    int samples_per_radius = 2000;
    std::uint64_t seed = 42;

    void validate() const;
    double radius(int k) const;
};

enum class ModulusKind { kSemi, kSub, kUniform, kSlope };
enum class Verdict { kZero, kPositive, kDivergent, kInconclusive };

const char* to_string(ModulusKind k);
const char* to_string(Verdict v);

/// One regularity constant: its per-radius quotient trace plus the
/// classification of the tail.
struct ModulusEstimate {
    ModulusKind kind = ModulusKind::kSemi;
    double q = 1.0;
    std::vector<std::pair<double, double>> trace;  // (radius, inner-infimum quotient)
    double value = 0.0;
    bool infinite = false;  // value flagged +inf (vacuous domain or divergence)
    Verdict verdict = Verdict::kInconclusive;
    double uncertainty = 0.0;
    std::string annotation;
};

/// Tail classification: the value is the minimum over the trailing third of
/// the trace; divergence needs a strictly increasing tail ending above 10x the
/// leading-window median, the zero verdict is symmetric.
ModulusEstimate classify_trace(ModulusKind kind, double q,
                               std::vector<std::pair<double, double>> trace);

/// Positive or divergent: the regularity property holds.
bool property_holds(const ModulusEstimate& e);

}  // namespace regmod
