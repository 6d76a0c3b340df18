#include "regmod/set_oracle.hpp"

#include <algorithm>
#include <utility>

#include "regmod/intersect.hpp"

namespace regmod {

double poly_eval(const std::array<double, 3>& p, double t) {
    return (p[0] * t + p[1]) * t + p[2];
}

double poly_deriv(const std::array<double, 3>& p, double t) { return 2.0 * p[0] * t + p[1]; }

namespace {

int common_dim(const std::vector<SetOracle>& branches, const char* what) {
    if (branches.empty()) throw PreconditionError(std::string(what) + " needs branches");
    const int d = branches.front().dim();
    for (const SetOracle& b : branches) {
        if (b.dim() != d) throw PreconditionError("branch dimensions disagree");
    }
    return d;
}

double min_tol(const std::vector<SetOracle>& branches) {
    double t = kInf;
    for (const SetOracle& b : branches) t = std::min(t, b.tolerance());
    return t;
}

// Distance and all projections onto {(t, p(t))}: the stationarity condition
// is cubic in t, every real root is compared.
void graph_projection(const std::array<double, 3>& poly, const Vec& x, double tol,
                      double* dist_out, std::vector<Vec>* points_out) {
    const double A = poly[0], B = poly[1];
    const double Cy = poly[2] - x[1];
    const std::vector<double> roots =
        solve_cubic(2.0 * A * A, 3.0 * A * B, B * B + 2.0 * A * Cy + 1.0, B * Cy - x[0]);
    double best = kInf;
    for (double t : roots) {
        const double du = t - x[0];
        const double dv = poly_eval(poly, t) - x[1];
        best = std::min(best, std::sqrt(du * du + dv * dv));
    }
    if (dist_out) *dist_out = best;
    if (points_out) {
        points_out->clear();
        for (double t : roots) {
            const double du = t - x[0];
            const double dv = poly_eval(poly, t) - x[1];
            const double d = std::sqrt(du * du + dv * dv);
            if (d <= best + tol) {
                Vec p{t, poly_eval(poly, t)};
                bool dup = false;
                for (const Vec& q : *points_out) dup = dup || near(q, p, tol);
                if (!dup) points_out->push_back(std::move(p));
            }
        }
    }
}

bool sublevel_contains(const PolySublevel& s, const Vec& x, double tol) {
    const double gap = x[1] - poly_eval(s.poly, x[0]);
    return s.side == SublevelSide::kBelow ? gap <= tol : gap >= -tol;
}

}  // namespace

SetOracle::SetOracle(Node node, int dim, double tol)
    : node_(std::move(node)), dim_(dim), tol_(tol) {}

SetOracle SetOracle::halfspace(Vec normal, double offset, double tol) {
    const double n = norm(normal);
    if (normal.empty() || n <= 0.0) throw PreconditionError("halfspace needs a nonzero normal");
    const int d = static_cast<int>(normal.size());
    return SetOracle(Halfspace{std::move(normal), offset}, d, tol);
}

SetOracle SetOracle::poly_graph(std::array<double, 3> poly, double tol) {
    return SetOracle(PolyGraph{poly}, 2, tol);
}

SetOracle SetOracle::poly_sublevel(std::array<double, 3> poly, SublevelSide side, double tol) {
    return SetOracle(PolySublevel{poly, side}, 2, tol);
}

SetOracle SetOracle::whole_space(int dim, double tol) {
    if (dim < 1) throw PreconditionError("dimension must be positive");
    return SetOracle(WholeSpace{}, dim, tol);
}

SetOracle SetOracle::union_of(std::vector<SetOracle> branches) {
    const int d = common_dim(branches, "union");
    const double tol = min_tol(branches);
    return SetOracle(SetUnion{std::move(branches)}, d, tol);
}

SetOracle SetOracle::intersection_of(std::vector<SetOracle> branches) {
    const int d = common_dim(branches, "intersection");
    const double tol = min_tol(branches);
    return SetOracle(SetIntersection{std::move(branches)}, d, tol);
}

double SetOracle::distance(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim_) throw PreconditionError("point dimension mismatch");
    if (const auto* h = std::get_if<Halfspace>(&node_)) {
        const double slack = h->offset - dot(h->normal, x);
        return std::max(0.0, slack / norm(h->normal));
    }
    if (const auto* g = std::get_if<PolyGraph>(&node_)) {
        double d;
        graph_projection(g->poly, x, tol_, &d, nullptr);
        return d;
    }
    if (const auto* s = std::get_if<PolySublevel>(&node_)) {
        if (sublevel_contains(*s, x, 0.0)) return 0.0;
        double d;
        graph_projection(s->poly, x, tol_, &d, nullptr);
        return d;
    }
    if (std::holds_alternative<WholeSpace>(node_)) return 0.0;
    if (const auto* u = std::get_if<SetUnion>(&node_)) {
        double best = kInf;
        for (const SetOracle& b : u->branches) best = std::min(best, b.distance(x));
        return best;
    }
    // Intersections go through the exact piece machinery.
    const auto& branches = std::get<SetIntersection>(node_).branches;
    return exact_intersection_distance(branches, x).value;
}

std::vector<Vec> SetOracle::project(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim_) throw PreconditionError("point dimension mismatch");
    if (contains(x)) return {x};
    if (const auto* h = std::get_if<Halfspace>(&node_)) {
        const double n2 = dot(h->normal, h->normal);
        const double slack = h->offset - dot(h->normal, x);
        return {add(x, scaled(h->normal, std::max(0.0, slack) / n2))};
    }
    if (const auto* g = std::get_if<PolyGraph>(&node_)) {
        std::vector<Vec> pts;
        double d;
        graph_projection(g->poly, x, tol_, &d, &pts);
        return pts;
    }
    if (const auto* s = std::get_if<PolySublevel>(&node_)) {
        std::vector<Vec> pts;
        double d;
        graph_projection(s->poly, x, tol_, &d, &pts);
        return pts;
    }
    if (std::holds_alternative<WholeSpace>(node_)) return {x};
    if (const auto* u = std::get_if<SetUnion>(&node_)) {
        const double best = distance(x);
        std::vector<Vec> pts;
        for (const SetOracle& b : u->branches) {
            if (b.distance(x) > best + tol_) continue;
            for (Vec& p : b.project(x)) {
                bool dup = false;
                for (const Vec& q : pts) dup = dup || near(q, p, tol_);
                if (!dup) pts.push_back(std::move(p));
            }
        }
        return pts;
    }
    const auto& branches = std::get<SetIntersection>(node_).branches;
    DistanceResult r = exact_intersection_distance(branches, x, /*want_points=*/true);
    if (!std::isfinite(r.value)) throw PreconditionError("projection onto an empty set");
    return r.points;
}

bool SetOracle::contains(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim_) throw PreconditionError("point dimension mismatch");
    if (const auto* h = std::get_if<Halfspace>(&node_)) {
        return dot(h->normal, x) >= h->offset - tol_ * norm(h->normal);
    }
    if (const auto* g = std::get_if<PolyGraph>(&node_)) {
        double d;
        graph_projection(g->poly, x, tol_, &d, nullptr);
        return d <= tol_;
    }
    if (const auto* s = std::get_if<PolySublevel>(&node_)) {
        if (sublevel_contains(*s, x, 0.0)) return true;
        double d;
        graph_projection(s->poly, x, tol_, &d, nullptr);
        return d <= tol_;
    }
    if (std::holds_alternative<WholeSpace>(node_)) return true;
    if (const auto* u = std::get_if<SetUnion>(&node_)) {
        for (const SetOracle& b : u->branches) {
            if (b.contains(x)) return true;
        }
        return false;
    }
    const auto& branches = std::get<SetIntersection>(node_).branches;
    for (const SetOracle& b : branches) {
        if (!b.contains(x)) return false;
    }
    return true;
}

std::vector<Vec> boundary_samples(const SetOracle& set, const Vec& center,
                                  std::span<const double> params) {
    const SetOracle::Node& node = set.node();
    std::vector<Vec> out;
    if (const auto* h = std::get_if<Halfspace>(&node)) {
        const double n2 = dot(h->normal, h->normal);
        const Vec foot =
            sub(center, scaled(h->normal, (dot(h->normal, center) - h->offset) / n2));
        // Tangent frame: axes projected off the normal.
        std::vector<Vec> tangents;
        for (std::size_t i = 0; i < h->normal.size(); ++i) {
            Vec e = zeros(static_cast<int>(h->normal.size()));
            e[i] = 1.0;
            Vec t = sub(e, scaled(h->normal, dot(e, h->normal) / n2));
            const double tn = norm(t);
            if (tn > 1e-9) tangents.push_back(scaled(t, 1.0 / tn));
        }
        out.push_back(foot);
        for (const Vec& t : tangents) {
            for (double s : params) {
                out.push_back(add(foot, scaled(t, s)));
                out.push_back(add(foot, scaled(t, -s)));
            }
        }
        return out;
    }
    const std::array<double, 3>* poly = nullptr;
    if (const auto* g = std::get_if<PolyGraph>(&node)) poly = &g->poly;
    if (const auto* s = std::get_if<PolySublevel>(&node)) poly = &s->poly;
    if (poly) {
        const double u0 = center[0];
        out.push_back({u0, poly_eval(*poly, u0)});
        for (double s : params) {
            out.push_back({u0 + s, poly_eval(*poly, u0 + s)});
            out.push_back({u0 - s, poly_eval(*poly, u0 - s)});
        }
        return out;
    }
    if (std::holds_alternative<WholeSpace>(node)) return out;
    if (const auto* u = std::get_if<SetUnion>(&node)) {
        for (const SetOracle& b : u->branches) {
            for (Vec& p : boundary_samples(b, center, params)) out.push_back(std::move(p));
        }
        return out;
    }
    const auto& branches = std::get<SetIntersection>(node).branches;
    for (const SetOracle& b : branches) {
        for (Vec& p : boundary_samples(b, center, params)) {
            bool ok = true;
            for (const SetOracle& other : branches) ok = ok && other.contains(p);
            if (ok) out.push_back(std::move(p));
        }
    }
    return out;
}

SetOracle SetOracle::translated(const Vec& shift) const {
    if (static_cast<int>(shift.size()) != dim_) throw PreconditionError("shift dimension mismatch");
    if (const auto* h = std::get_if<Halfspace>(&node_)) {
        // {w - a : <n,w> >= b} = {y : <n,y> >= b - <n,a>}
        return SetOracle(Halfspace{h->normal, h->offset - dot(h->normal, shift)}, dim_, tol_);
    }
    if (const auto* g = std::get_if<PolyGraph>(&node_)) {
        const double A = g->poly[0], B = g->poly[1], C = g->poly[2];
        const double s = shift[0], t = shift[1];
        // v' = A(u'+s)^2 + B(u'+s) + C - t
        return SetOracle(
            PolyGraph{{A, 2.0 * A * s + B, A * s * s + B * s + C - t}}, dim_, tol_);
    }
    if (const auto* sl = std::get_if<PolySublevel>(&node_)) {
        const double A = sl->poly[0], B = sl->poly[1], C = sl->poly[2];
        const double s = shift[0], t = shift[1];
        return SetOracle(
            PolySublevel{{A, 2.0 * A * s + B, A * s * s + B * s + C - t}, sl->side}, dim_, tol_);
    }
    if (std::holds_alternative<WholeSpace>(node_)) return *this;
    if (const auto* u = std::get_if<SetUnion>(&node_)) {
        std::vector<SetOracle> branches;
        branches.reserve(u->branches.size());
        for (const SetOracle& b : u->branches) branches.push_back(b.translated(shift));
        return SetOracle(SetUnion{std::move(branches)}, dim_, tol_);
    }
    const auto& inner = std::get<SetIntersection>(node_).branches;
    std::vector<SetOracle> branches;
    branches.reserve(inner.size());
    for (const SetOracle& b : inner) branches.push_back(b.translated(shift));
    return SetOracle(SetIntersection{std::move(branches)}, dim_, tol_);
}

}  // namespace regmod
