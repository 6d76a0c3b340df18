#pragma once

#include <optional>
#include <span>

#include "regmod/set_oracle.hpp"

namespace regmod {

// =============================================================================
// Interval algebra on the real line
// =============================================================================

struct Interval {
    double lo;
    double hi;  // closed; lo <= hi; endpoints may be +-inf
};

class IntervalSet {
  public:
    static IntervalSet all();
    static IntervalSet none();
    static IntervalSet single(double lo, double hi);
    static IntervalSet points(std::span<const double> ts);

    /// {t : a t^2 + b t + c <= 0}. Degenerate coefficients handled; a
    /// nonnegative quadratic with a vanishing discriminant yields the single
    /// tangency point.
    static IntervalSet quad_le_zero(double a, double b, double c);

    IntervalSet intersected(const IntervalSet& other) const;
    bool empty() const { return parts_.empty(); }
    const std::vector<Interval>& parts() const { return parts_; }

    /// Nearest point of the set to t (set must be nonempty).
    double nearest(double t) const;

  private:
    std::vector<Interval> parts_;  // sorted, disjoint
    void normalize();
};

// =============================================================================
// Exact distances to intersections of primitive sets
// =============================================================================

struct DistanceResult {
    double value = kInf;      // +inf means certified empty set
    double uncertainty = 0.0; // nonzero only on the numeric-bracket path
    std::vector<Vec> points;  // global minimizers when requested and finite
};

/// Distance from x to the intersection of the given sets, computed exactly by
/// decomposing into boundary pieces (unions are distributed first). Throws
/// NoAnalyticOracle when the combination has no exact decomposition.
DistanceResult exact_intersection_distance(std::span<const SetOracle> sets, const Vec& x,
                                           bool want_points = false);

/// Exact path first; on NoAnalyticOracle falls back to a certified bracket
/// from alternating projections and multi-start local search seeded by
/// `feasible_hint`. Throws UnresolvedIntersection when the bracket stays wider
/// than `tol`.
DistanceResult intersection_distance(std::span<const SetOracle> sets, const Vec& x,
                                     const Vec* feasible_hint, double tol = kFeasibilityTol);

namespace detail {

/// Minimum distance from x to {(t, p(t)) : t in ts}.
double parabola_arc_distance(const std::array<double, 3>& poly, const IntervalSet& ts,
                             const Vec& x, std::vector<Vec>* argmins);

/// Minimum distance from x to {anchor + t dir : t in ts}, dir unit.
double line_portion_distance(const Vec& anchor, const Vec& dir, const IntervalSet& ts,
                             const Vec& x, std::vector<Vec>* argmins);

/// The bracket fallback, exposed for targeted tests.
DistanceResult numeric_intersection_bracket(std::span<const SetOracle> sets, const Vec& x,
                                            const Vec* feasible_hint);

}  // namespace detail

}  // namespace regmod
