#pragma once

#include "regmod/set_oracle.hpp"

namespace regmod {

enum class NormalKind { kFrechet, kProximal };

struct NormalVector {
    Vec base;        // the set point the normal is attached to
    Vec direction;   // unit length
    NormalKind kind = NormalKind::kFrechet;
    double scale = 1.0;
    double witness_radius = 0.0;  // proximal kind: r with d(base + r u, set) = r
};

enum class ConeType { kTrivial, kRay, kLine, kHalfplaneOfDirections };

struct NormalCone {
    ConeType type = ConeType::kTrivial;
    std::vector<NormalVector> generators;  // ray: one; line: both signs
};

/// Analytic regular normal cone at a set point. Halfspace boundaries give the
/// outward ray, parabola boundaries the constraint-gradient ray, graphs the
/// full normal line; at a point lying on several union branches the cone is
/// the intersection of the branch cones. Throws PreconditionError when the
/// point is not in the set and NoAnalyticOracle for kinds without a cone
/// formula.
NormalCone frechet_normal_cone(const SetOracle& set, const Vec& point);

struct ProximalSearchConfig {
    int angular_steps = 360;   // 1 degree in the plane
    double r_top = 0.5;
    double r_ratio = 0.5;
    int r_count = 16;
    double rel_tol = 1e-8;
    std::uint64_t seed = 42;   // extra directions beyond the plane
};

/// Certified directions u with d(point + r u, set) = r for some probed r.
/// An empty result is meaningful: no direction on the grid admits a witness.
std::vector<NormalVector> proximal_normals(const SetOracle& set, const Vec& point,
                                           const ProximalSearchConfig& cfg = {});

}  // namespace regmod
