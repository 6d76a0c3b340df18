#include "regmod/normal_cone.hpp"

#include <algorithm>
#include <cmath>

#include "regmod/sampling.hpp"

namespace regmod {

namespace {

NormalVector unit_normal(const Vec& base, const Vec& dir) {
    return NormalVector{base, scaled(dir, 1.0 / norm(dir)), NormalKind::kFrechet, 1.0, 0.0};
}

NormalCone ray_cone(const Vec& base, const Vec& dir) {
    return NormalCone{ConeType::kRay, {unit_normal(base, dir)}};
}

NormalCone line_cone(const Vec& base, const Vec& dir) {
    NormalVector g = unit_normal(base, dir);
    NormalVector n = g;
    n.direction = scaled(g.direction, -1.0);
    return NormalCone{ConeType::kLine, {g, n}};
}

// Cones arising here are {0}, rays, or lines; their pairwise intersections
// stay in the same family.
NormalCone intersect_cones(const NormalCone& a, const NormalCone& b) {
    constexpr double kAlignTol = 1e-9;
    if (a.type == ConeType::kTrivial || b.type == ConeType::kTrivial) return NormalCone{};
    const Vec& da = a.generators.front().direction;
    const Vec& db = b.generators.front().direction;
    const double c = dot(da, db);
    if (a.type == ConeType::kRay && b.type == ConeType::kRay) {
        return c >= 1.0 - kAlignTol ? a : NormalCone{};
    }
    if (a.type == ConeType::kRay) {
        return std::abs(c) >= 1.0 - kAlignTol ? a : NormalCone{};
    }
    if (b.type == ConeType::kRay) {
        return std::abs(c) >= 1.0 - kAlignTol ? b : NormalCone{};
    }
    return std::abs(c) >= 1.0 - kAlignTol ? a : NormalCone{};
}

}  // namespace

NormalCone frechet_normal_cone(const SetOracle& set, const Vec& point) {
    if (!set.contains(point)) {
        throw PreconditionError("normal cone requested at a point outside the set");
    }
    const SetOracle::Node& node = set.node();
    const double tol = set.tolerance();

    if (const auto* h = std::get_if<Halfspace>(&node)) {
        const double slack = dot(h->normal, point) - h->offset;
        if (slack > tol * norm(h->normal)) return NormalCone{};  // interior
        return ray_cone(point, scaled(h->normal, -1.0));
    }
    if (const auto* g = std::get_if<PolyGraph>(&node)) {
        const double slope = poly_deriv(g->poly, point[0]);
        return line_cone(point, Vec{slope, -1.0});
    }
    if (const auto* s = std::get_if<PolySublevel>(&node)) {
        const double gap = point[1] - poly_eval(s->poly, point[0]);
        if (std::abs(gap) > tol) return NormalCone{};  // interior
        const double slope = poly_deriv(s->poly, point[0]);
        // Outward direction: increasing v - p(u) for the below side.
        const Vec grad{-slope, 1.0};
        return ray_cone(point,
                        s->side == SublevelSide::kBelow ? grad : scaled(grad, -1.0));
    }
    if (std::holds_alternative<WholeSpace>(node)) return NormalCone{};
    if (const auto* u = std::get_if<SetUnion>(&node)) {
        bool first = true;
        NormalCone cone;
        for (const SetOracle& b : u->branches) {
            if (!b.contains(point)) continue;
            const NormalCone bc = frechet_normal_cone(b, point);
            cone = first ? bc : intersect_cones(cone, bc);
            first = false;
        }
        if (first) throw PreconditionError("point lies on no union branch");
        return cone;
    }
    throw NoAnalyticOracle("no normal-cone formula for intersection oracles");
}

std::vector<NormalVector> proximal_normals(const SetOracle& set, const Vec& point,
                                           const ProximalSearchConfig& cfg) {
    if (!set.contains(point)) {
        throw PreconditionError("proximal normals requested at a point outside the set");
    }
    std::vector<Vec> dirs;
    if (set.dim() == 2) {
        for (int k = 0; k < cfg.angular_steps; ++k) {
            const double a = 2.0 * M_PI * k / cfg.angular_steps;
            dirs.push_back({std::cos(a), std::sin(a)});
        }
    } else {
        dirs = structured_directions(set.dim());
        Rng rng(mix_seed(cfg.seed, "proximal-dirs"));
        for (int k = 0; k < cfg.angular_steps; ++k) dirs.push_back(rng.unit_vector(set.dim()));
    }

    std::vector<NormalVector> found;
    const std::vector<double> radii = geometric_grid(cfg.r_top, cfg.r_ratio, cfg.r_count);
    for (const Vec& u : dirs) {
        for (double r : radii) {
            const double d = set.distance(add(point, scaled(u, r)));
            if (d >= r * (1.0 - cfg.rel_tol)) {
                found.push_back(NormalVector{point, u, NormalKind::kProximal, 1.0, r});
                break;  // largest certified radius on the grid
            }
        }
    }
    return found;
}

}  // namespace regmod
