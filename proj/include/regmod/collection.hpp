#pragma once

#include <span>
#include <string>

#include "regmod/intersect.hpp"
#include "regmod/set_oracle.hpp"

namespace regmod {

/// m >= 2 closed sets with a common reference point.
struct SetCollection {
    std::vector<SetOracle> sets;
    Vec base_point;
    SpaceConfig space;
    std::string name = "collection";

    /// Checks m >= 2, dimension agreement, and base-point membership.
    void validate() const;

    /// True when a small ball around the base point passes membership for all
    /// sets (probed along a fixed direction star with exact distances).
    bool base_point_interior(double probe = 1e-6) const;

    /// {Omega_i - shifts[i]} with the same base point and space.
    SetCollection translated(std::span<const Vec> shifts) const;

    double tolerance() const;
};

struct IntersectionQuery {
    double value = kInf;  // +inf: certified empty (possible for translates)
    double uncertainty = 0.0;
};

/// Distance from x to the intersection of the collection's sets. Exact where
/// the decomposition machinery applies, otherwise a certified bracket seeded
/// by the base point.
IntersectionQuery collection_intersection_distance(const SetCollection& coll, const Vec& x);

}  // namespace regmod
