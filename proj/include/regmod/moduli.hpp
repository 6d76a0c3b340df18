#pragma once

#include "regmod/collection.hpp"
#include "regmod/schedule.hpp"

namespace regmod {

// =============================================================================
// Primal regularity estimators
// =============================================================================

enum class MarginMethod { kDefinition, kUnionForm };

struct MarginResult {
    double value = 0.0;
    double uncertainty = 0.0;
    bool infinite = false;  // vacuously feasible for every probed size
};

/// Largest translation size r such that every sampled tuple of translations
/// of size <= r keeps the common intersection within reach of the base-point
/// ball of radius rho. The union-form method probes the equivalent product
/// covering instead; both settle the same quantity.
MarginResult translation_margin(const SetCollection& coll, double rho, MarginMethod method,
                                const RadiusSchedule& cfg);

/// Largest inflation size r such that every sampled point within delta of the
/// base point and within r of all sets stays within rho of the intersection.
MarginResult inflation_margin(const SetCollection& coll, double rho, double delta,
                              const RadiusSchedule& cfg);

/// Shrinking-scale infimum of the metric quotient for the requested property
/// (translation, error-bound, or translation-robust form).
ModulusEstimate regularity_modulus(const SetCollection& coll, double q, ModulusKind kind,
                                   const RadiusSchedule& cfg);

struct CheckWitness {
    Vec x;                          // empty when the inequality quantifies translations only
    std::vector<Vec> translations;  // empty for the error-bound form
    double quotient = kInf;
};

struct CheckReport {
    ModulusKind kind = ModulusKind::kSub;
    double q = 1.0;
    double gamma = 0.0;
    double delta = 0.0;
    double worst_ratio = kInf;
    bool pass = false;
    CheckWitness witness;
    long samples = 0;
};

/// Samples the quantified domain of the metric inequality at every scale
/// inside delta and reports the worst quotient with its witness.
CheckReport check_metric_inequality(const SetCollection& coll, double q, ModulusKind kind,
                                    double gamma, double delta, const RadiusSchedule& cfg);

/// Local decrease rate of the max-distance function under the rho-weighted
/// product norm; a lower estimate for the error-bound modulus.
ModulusEstimate slope_modulus(const SetCollection& coll, double q, const RadiusSchedule& cfg);

struct SweepEntry {
    double q = 1.0;
    ModulusEstimate estimate;
    bool flagged = false;  // breaks verdict monotonicity across the grid
};

struct SweepResult {
    double critical_q = 0.0;  // largest q at which the property still holds
    bool any_holds = false;
    std::vector<SweepEntry> table;
};

SweepResult critical_exponent(const SetCollection& coll, ModulusKind kind,
                              std::span<const double> q_grid, const RadiusSchedule& cfg);

}  // namespace regmod
