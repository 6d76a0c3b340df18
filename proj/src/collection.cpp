#include "regmod/collection.hpp"

namespace regmod {

void SetCollection::validate() const {
    if (sets.size() < 2) throw PreconditionError("a collection needs at least two sets");
    if (static_cast<int>(base_point.size()) != space.dim) {
        throw PreconditionError("base point dimension does not match the space");
    }
    for (const SetOracle& s : sets) {
        if (s.dim() != space.dim) throw PreconditionError("set dimension does not match the space");
        if (!s.contains(base_point)) {
            throw PreconditionError("base point is not a member of every set");
        }
    }
}

bool SetCollection::base_point_interior(double probe) const {
    // Direction star: +-axes plus the 2D diagonals.
    std::vector<Vec> dirs;
    for (int i = 0; i < space.dim; ++i) {
        Vec e = zeros(space.dim);
        e[i] = 1.0;
        dirs.push_back(e);
        e[i] = -1.0;
        dirs.push_back(e);
    }
    if (space.dim == 2) {
        const double r = 1.0 / std::sqrt(2.0);
        dirs.push_back({r, r});
        dirs.push_back({r, -r});
        dirs.push_back({-r, r});
        dirs.push_back({-r, -r});
    }
    for (const Vec& d : dirs) {
        const Vec p = add(base_point, scaled(d, probe));
        for (const SetOracle& s : sets) {
            // Exact distances, not tolerance membership: a cusp violates its
            // constraints by far less than the membership tolerance.
            try {
                if (s.distance(p) > 1e-14) return false;
            } catch (const NoAnalyticOracle&) {
                if (!s.contains(p)) return false;
            }
        }
    }
    return true;
}

SetCollection SetCollection::translated(std::span<const Vec> shifts) const {
    if (shifts.size() != sets.size()) throw PreconditionError("one shift per set required");
    SetCollection out = *this;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        out.sets[i] = sets[i].translated(shifts[i]);
    }
    return out;
}

double SetCollection::tolerance() const {
    double t = kMembershipTol;
    for (const SetOracle& s : sets) t = std::min(t, s.tolerance());
    return t;
}

IntersectionQuery collection_intersection_distance(const SetCollection& coll, const Vec& x) {
    const DistanceResult r =
        intersection_distance(coll.sets, x, &coll.base_point, kFeasibilityTol);
    return {r.value, r.uncertainty};
}

}  // namespace regmod
