#pragma once

#include <array>
#include <variant>
#include <vector>

#include "regmod/geometry.hpp"

namespace regmod {

// =============================================================================
// Closed-set oracles
// =============================================================================
//
// Every oracle answers exact distances, exact (possibly multivalued)
// projections and membership. Compound oracles (unions, intersections) are
// resolved by decomposing the set into primitive pieces; a combination that
// cannot be decomposed raises NoAnalyticOracle rather than silently
// approximating.

/// {x : <normal, x> >= offset}, any dimension.
struct Halfspace {
    Vec normal;
    double offset = 0.0;
};

/// {(u, v) : v = poly[0] u^2 + poly[1] u + poly[2]}, plane only.
/// Degenerate leading coefficients give lines.
struct PolyGraph {
    std::array<double, 3> poly{0.0, 0.0, 0.0};
};

enum class SublevelSide { kBelow, kAbove };  // v <= p(u)  /  v >= p(u)

/// {(u, v) : v <= p(u)} or {(u, v) : v >= p(u)}, plane only.
struct PolySublevel {
    std::array<double, 3> poly{0.0, 0.0, 0.0};
    SublevelSide side = SublevelSide::kBelow;
};

struct WholeSpace {};

class SetOracle;

struct SetUnion {
    std::vector<SetOracle> branches;
};

struct SetIntersection {
    std::vector<SetOracle> branches;
};

double poly_eval(const std::array<double, 3>& p, double t);
double poly_deriv(const std::array<double, 3>& p, double t);

class SetOracle {
  public:
    using Node = std::variant<Halfspace, PolyGraph, PolySublevel, WholeSpace, SetUnion,
                              SetIntersection>;

    static SetOracle halfspace(Vec normal, double offset, double tol = kMembershipTol);
    static SetOracle poly_graph(std::array<double, 3> poly, double tol = kMembershipTol);
    static SetOracle poly_sublevel(std::array<double, 3> poly, SublevelSide side,
                                   double tol = kMembershipTol);
    static SetOracle whole_space(int dim, double tol = kMembershipTol);
    static SetOracle union_of(std::vector<SetOracle> branches);
    static SetOracle intersection_of(std::vector<SetOracle> branches);

    /// inf_{w in set} ||x - w||; +inf exactly when the set is empty.
    double distance(const Vec& x) const;

    /// All global minimizers of ||x - .|| over the set.
    std::vector<Vec> project(const Vec& x) const;

    /// Membership within the oracle tolerance.
    bool contains(const Vec& x) const;

    /// Exact oracle for the translate {w - shift : w in set}.
    SetOracle translated(const Vec& shift) const;

    int dim() const { return dim_; }
    double tolerance() const { return tol_; }
    const Node& node() const { return node_; }

  private:
    SetOracle(Node node, int dim, double tol);

    Node node_;
    int dim_;
    double tol_;
};

/// Set points walking the boundary features near `center`: each entry of
/// `params` is an offset along the boundary parameterization. Union branches
/// contribute their own boundary points (always members of the union).
std::vector<Vec> boundary_samples(const SetOracle& set, const Vec& center,
                                  std::span<const double> params);

}  // namespace regmod
