#pragma once

#include "regmod/collection.hpp"
#include "regmod/normal_cone.hpp"
#include "regmod/schedule.hpp"

namespace regmod {

// =============================================================================
// Duality mapping on max-norm products
// =============================================================================
//
// On a product of Euclidean factors with the max norm, a unit dual tuple
// attains the norm exactly when its factor norms sum to one, mass sits only
// on factors of maximal norm, and each nonzero factor aligns with its primal
// counterpart.

bool duality_map_check(std::span<const Vec> xhat, std::span<const Vec> xstar,
                       double tol = 1e-9);

/// Representative dual tuples for a nonzero primal tuple: one extreme tuple
/// per maximal factor plus the uniform mixture over all of them.
std::vector<std::vector<Vec>> duality_map_sample(std::span<const Vec> xhat);

// =============================================================================
// Dual infimum criteria
// =============================================================================

enum class DualKind { kUniformQ1, kSubregQ };

const char* to_string(DualKind k);

struct DualRadii {
    double delta = 0.2;  // uniform criterion: set points within delta of the base
    double rho = 0.05;   // subreg criterion: config scale and cone inflation
    double eps = 0.005;  // subreg criterion: support-alignment slack
};

struct DualWitness {
    Vec x;                     // subreg criterion only
    std::vector<Vec> omegas;   // one set point per set
    std::vector<Vec> normals;  // the dual tuple achieving the infimum
};

struct DualCriterionReport {
    DualKind kind = DualKind::kUniformQ1;
    double q = 1.0;
    DualRadii radii;
    double infimum = kInf;
    bool infinite = true;  // no admissible configuration sampled
    DualWitness witness;
    long sample_count = 0;
    std::string note;
};

/// kUniformQ1: infimum of ||sum x_i*|| over unit-mass tuples of normals at
/// set points near the base point; a positive value certifies the
/// translation-robust property at q = 1 (and the certificate is two-sided at
/// q = 1). kSubregQ: sampled infimum of the perturbed-normal criterion at the
/// given (rho, eps) scales, with the zero rule on non-maximal components, the
/// support-alignment constraint, and the mass scaling q ||vhat||^(q-1); the
/// sampler fixes the grid, so it can certify satisfaction only at the tested
/// scales.
DualCriterionReport dual_modulus(const SetCollection& coll, DualKind kind, double q,
                                 const DualRadii& radii, const RadiusSchedule& cfg);

/// Decision threshold used when a report's infimum is read as a boolean
/// certificate.
constexpr double kDualPositiveThreshold = 0.1;

bool dual_criterion_positive(const DualCriterionReport& report);

}  // namespace regmod
