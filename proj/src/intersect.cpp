#include "regmod/intersect.hpp"

#include <algorithm>
#include <cstddef>

namespace regmod {

// =============================================================================
// IntervalSet
// =============================================================================

void IntervalSet::normalize() {
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const Interval& iv : parts_) {
        if (iv.lo > iv.hi) continue;
        if (!merged.empty() && iv.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        } else {
            merged.push_back(iv);
        }
    }
    parts_ = std::move(merged);
}

IntervalSet IntervalSet::all() { return single(-kInf, kInf); }

IntervalSet IntervalSet::none() { return IntervalSet{}; }

IntervalSet IntervalSet::single(double lo, double hi) {
    IntervalSet s;
    if (lo <= hi) s.parts_.push_back({lo, hi});
    return s;
}

IntervalSet IntervalSet::points(std::span<const double> ts) {
    IntervalSet s;
    for (double t : ts) s.parts_.push_back({t, t});
    s.normalize();
    return s;
}

IntervalSet IntervalSet::quad_le_zero(double a, double b, double c) {
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale == 0.0) return all();
    if (std::abs(a) <= 1e-14 * scale) {
        if (std::abs(b) <= 1e-14 * scale) return c <= 0.0 ? all() : none();
        const double t0 = -c / b;
        return b > 0.0 ? single(-kInf, t0) : single(t0, kInf);
    }
    const double disc = b * b - 4.0 * a * c;
    const double disc_tol = 1e-12 * std::max(b * b, std::abs(4.0 * a * c));
    if (a > 0.0) {
        if (disc < -disc_tol) return none();
        if (disc <= disc_tol) {
            const double t0 = -b / (2.0 * a);
            return single(t0, t0);
        }
        const double s = std::sqrt(disc);
        return single((-b - s) / (2.0 * a), (-b + s) / (2.0 * a));
    }
    if (disc <= disc_tol) return all();
    const double s = std::sqrt(disc);
    const double r1 = (-b + s) / (2.0 * a);  // a < 0: r1 < r2
    const double r2 = (-b - s) / (2.0 * a);
    IntervalSet out;
    out.parts_.push_back({-kInf, r1});
    out.parts_.push_back({r2, kInf});
    out.normalize();
    return out;
}

IntervalSet IntervalSet::intersected(const IntervalSet& other) const {
    IntervalSet out;
    for (const Interval& a : parts_) {
        for (const Interval& b : other.parts_) {
            const double lo = std::max(a.lo, b.lo);
            const double hi = std::min(a.hi, b.hi);
            if (lo <= hi) out.parts_.push_back({lo, hi});
        }
    }
    out.normalize();
    return out;
}

double IntervalSet::nearest(double t) const {
    double best = kInf;
    double arg = t;
    for (const Interval& iv : parts_) {
        const double c = std::clamp(t, iv.lo, iv.hi);
        const double d = std::abs(c - t);
        if (d < best) {
            best = d;
            arg = c;
        }
    }
    return arg;
}

// =============================================================================
// Piece distances
// =============================================================================

namespace detail {

namespace {

void collect_argmin(std::vector<Vec>* argmins, double d, double best, const Vec& p, double tol) {
    if (!argmins || d > best + tol) return;
    for (const Vec& q : *argmins) {
        if (near(q, p, tol)) return;
    }
    argmins->push_back(p);
}

}  // namespace

double parabola_arc_distance(const std::array<double, 3>& poly, const IntervalSet& ts,
                             const Vec& x, std::vector<Vec>* argmins) {
    if (ts.empty()) return kInf;
    const double A = poly[0], B = poly[1];
    const double Cy = poly[2] - x[1];
    std::vector<double> roots =
        solve_cubic(2.0 * A * A, 3.0 * A * B, B * B + 2.0 * A * Cy + 1.0, B * Cy - x[0]);
    if (roots.empty()) roots.push_back(x[0]);

    std::vector<double> cands;
    for (const Interval& iv : ts.parts()) {
        for (double r : roots) cands.push_back(std::clamp(r, iv.lo, iv.hi));
        if (std::isfinite(iv.lo)) cands.push_back(iv.lo);
        if (std::isfinite(iv.hi)) cands.push_back(iv.hi);
    }
    double best = kInf;
    for (double t : cands) {
        if (!std::isfinite(t)) continue;
        const double du = t - x[0];
        const double dv = poly_eval(poly, t) - x[1];
        best = std::min(best, std::sqrt(du * du + dv * dv));
    }
    if (argmins) {
        for (double t : cands) {
            if (!std::isfinite(t)) continue;
            const double du = t - x[0];
            const double dv = poly_eval(poly, t) - x[1];
            const double d = std::sqrt(du * du + dv * dv);
            collect_argmin(argmins, d, best, Vec{t, poly_eval(poly, t)}, 1e-9);
        }
    }
    return best;
}

double line_portion_distance(const Vec& anchor, const Vec& dir, const IntervalSet& ts,
                             const Vec& x, std::vector<Vec>* argmins) {
    if (ts.empty()) return kInf;
    const double foot = dot(sub(x, anchor), dir);
    double best = kInf;
    std::vector<double> cands;
    for (const Interval& iv : ts.parts()) {
        cands.push_back(std::clamp(foot, iv.lo, iv.hi));
        if (std::isfinite(iv.lo)) cands.push_back(iv.lo);
        if (std::isfinite(iv.hi)) cands.push_back(iv.hi);
    }
    for (double t : cands) {
        if (!std::isfinite(t)) continue;
        best = std::min(best, distance(x, add(anchor, scaled(dir, t))));
    }
    if (argmins) {
        for (double t : cands) {
            if (!std::isfinite(t)) continue;
            const Vec p = add(anchor, scaled(dir, t));
            collect_argmin(argmins, distance(x, p), best, p, 1e-9);
        }
    }
    return best;
}

}  // namespace detail

// =============================================================================
// DNF decomposition and exact combination distances
// =============================================================================

namespace {

using Primitive = std::variant<Halfspace, PolyGraph, PolySublevel>;
using Combo = std::vector<Primitive>;

constexpr std::size_t kComboCap = 256;

// Union-of-intersections form with WholeSpace dropped.
std::vector<Combo> to_dnf(const SetOracle& set) {
    const SetOracle::Node& node = set.node();
    if (const auto* h = std::get_if<Halfspace>(&node)) return {{*h}};
    if (const auto* g = std::get_if<PolyGraph>(&node)) return {{*g}};
    if (const auto* s = std::get_if<PolySublevel>(&node)) return {{*s}};
    if (std::holds_alternative<WholeSpace>(node)) return {Combo{}};
    if (const auto* u = std::get_if<SetUnion>(&node)) {
        std::vector<Combo> out;
        for (const SetOracle& b : u->branches) {
            for (Combo& c : to_dnf(b)) out.push_back(std::move(c));
        }
        if (out.size() > kComboCap) throw NoAnalyticOracle("too many union branches");
        return out;
    }
    const auto& branches = std::get<SetIntersection>(node).branches;
    std::vector<Combo> out{Combo{}};
    for (const SetOracle& b : branches) {
        std::vector<Combo> next;
        for (const Combo& lhs : out) {
            for (const Combo& rhs : to_dnf(b)) {
                Combo merged = lhs;
                merged.insert(merged.end(), rhs.begin(), rhs.end());
                next.push_back(std::move(merged));
            }
        }
        if (next.size() > kComboCap) throw NoAnalyticOracle("too many branch combinations");
        out = std::move(next);
    }
    return out;
}

bool primitive_contains(const Primitive& prim, const Vec& x, double tol) {
    if (const auto* h = std::get_if<Halfspace>(&prim)) {
        return dot(h->normal, x) >= h->offset - tol * norm(h->normal);
    }
    if (const auto* g = std::get_if<PolyGraph>(&prim)) {
        // Vertical gap bounds the Euclidean distance from above.
        return std::abs(x[1] - poly_eval(g->poly, x[0])) <= tol;
    }
    const auto& s = std::get<PolySublevel>(prim);
    const double gap = x[1] - poly_eval(s.poly, x[0]);
    return s.side == SublevelSide::kBelow ? gap <= tol : gap >= -tol;
}

// {t : constraint holds at (t, p(t))} for a primitive constraint.
IntervalSet constraint_on_parabola(const std::array<double, 3>& p, const Primitive& prim) {
    if (const auto* h = std::get_if<Halfspace>(&prim)) {
        // a0 t + a1 p(t) >= b  <=>  -(a1 A) t^2 - (a0 + a1 B) t - (a1 C - b) <= 0
        const double a0 = h->normal[0], a1 = h->normal[1];
        return IntervalSet::quad_le_zero(-(a1 * p[0]), -(a0 + a1 * p[1]),
                                         -(a1 * p[2] - h->offset));
    }
    if (const auto* g = std::get_if<PolyGraph>(&prim)) {
        // p(t) == q(t): a point set (or everything for identical polynomials).
        const double d2 = p[0] - g->poly[0], d1 = p[1] - g->poly[1], d0 = p[2] - g->poly[2];
        const double scale = std::max({std::abs(d2), std::abs(d1), std::abs(d0)});
        if (scale <= 1e-14) return IntervalSet::all();
        const std::vector<double> roots = solve_quadratic(d2, d1, d0);
        return IntervalSet::points(roots);
    }
    const auto& s = std::get<PolySublevel>(prim);
    const double d2 = p[0] - s.poly[0], d1 = p[1] - s.poly[1], d0 = p[2] - s.poly[2];
    // below: p(t) - q(t) <= 0 ; above: q(t) - p(t) <= 0
    if (s.side == SublevelSide::kBelow) return IntervalSet::quad_le_zero(d2, d1, d0);
    return IntervalSet::quad_le_zero(-d2, -d1, -d0);
}

// {t : constraint holds at anchor + t*dir} on a 2D line.
IntervalSet constraint_on_line(const Vec& anchor, const Vec& dir, const Primitive& prim) {
    if (const auto* h = std::get_if<Halfspace>(&prim)) {
        const double g1 = dot(h->normal, dir);
        const double g0 = dot(h->normal, anchor) - h->offset;
        // g0 + g1 t >= 0
        return IntervalSet::quad_le_zero(0.0, -g1, -g0);
    }
    const std::array<double, 3>* poly = nullptr;
    SublevelSide side = SublevelSide::kBelow;
    bool equality = false;
    if (const auto* g = std::get_if<PolyGraph>(&prim)) {
        poly = &g->poly;
        equality = true;
    } else {
        const auto& s = std::get<PolySublevel>(prim);
        poly = &s.poly;
        side = s.side;
    }
    const double A = (*poly)[0], B = (*poly)[1], C = (*poly)[2];
    const double u0 = anchor[0], u1 = dir[0];
    const double v0 = anchor[1], v1 = dir[1];
    // y2(t) - p(y1(t)) as a quadratic in t
    const double q2 = -A * u1 * u1;
    const double q1 = v1 - (2.0 * A * u0 * u1 + B * u1);
    const double q0 = v0 - (A * u0 * u0 + B * u0 + C);
    if (equality) {
        const double scale = std::max({std::abs(q2), std::abs(q1), std::abs(q0)});
        if (scale <= 1e-14) return IntervalSet::all();
        return IntervalSet::points(solve_quadratic(q2, q1, q0));
    }
    if (side == SublevelSide::kBelow) return IntervalSet::quad_le_zero(q2, q1, q0);
    return IntervalSet::quad_le_zero(-q2, -q1, -q0);
}

// Gaussian elimination for the small Gram systems of halfspace projections.
bool solve_linear(std::vector<std::vector<double>>& m, std::vector<double>& rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        }
        if (std::abs(m[piv][col]) < 1e-12) return false;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
    return true;
}

// Exact distance to an intersection of halfspaces in any dimension: enumerate
// active subsets, project onto the corresponding affine subspace, keep
// feasible candidates. No feasible candidate certifies emptiness.
double halfspace_combo_distance(const std::vector<const Halfspace*>& hs, const Vec& x,
                                std::vector<Vec>* argmins, double tol) {
    const std::size_t k = hs.size();
    const std::size_t dim = x.size();
    std::vector<Vec> cands;
    cands.push_back(x);
    for (std::size_t mask = 1; mask < (1u << k); ++mask) {
        std::vector<std::size_t> sel;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask & (1u << i)) sel.push_back(i);
        }
        if (sel.size() > dim) continue;
        const std::size_t n = sel.size();
        std::vector<std::vector<double>> gram(n, std::vector<double>(n));
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                gram[i][j] = dot(hs[sel[i]]->normal, hs[sel[j]]->normal);
            }
            rhs[i] = dot(hs[sel[i]]->normal, x) - hs[sel[i]]->offset;
        }
        if (!solve_linear(gram, rhs)) continue;
        Vec y = x;
        for (std::size_t i = 0; i < n; ++i) {
            y = sub(y, scaled(hs[sel[i]]->normal, rhs[i]));
        }
        cands.push_back(std::move(y));
    }
    double best = kInf;
    std::vector<Vec> feasible;
    for (Vec& y : cands) {
        bool ok = true;
        for (const Halfspace* h : hs) {
            ok = ok && dot(h->normal, y) >= h->offset - tol * norm(h->normal);
        }
        if (!ok) continue;
        best = std::min(best, distance(x, y));
        feasible.push_back(std::move(y));
    }
    if (argmins) {
        for (const Vec& y : feasible) {
            detail::collect_argmin(argmins, distance(x, y), best, y, 1e-9);
        }
    }
    return best;
}

double combo_distance(const Combo& combo, const Vec& x, std::vector<Vec>* argmins, double tol) {
    (void)tol;
    if (combo.empty()) {
        if (argmins) argmins->push_back(x);
        return 0.0;
    }
    // Membership here must be exact (sign test, no tolerance): near a cusp the
    // intersection distance can dwarf the individual constraint gaps, so a
    // tolerance shortcut would zero out exactly the quantity being measured.
    bool member = true;
    for (const Primitive& p : combo) member = member && primitive_contains(p, x, 0.0);
    if (member) {
        if (argmins) argmins->push_back(x);
        return 0.0;
    }

    std::vector<const Halfspace*> halfspaces;
    std::vector<const PolyGraph*> graphs;
    std::vector<const PolySublevel*> sublevels;
    for (const Primitive& p : combo) {
        if (const auto* h = std::get_if<Halfspace>(&p)) halfspaces.push_back(h);
        if (const auto* g = std::get_if<PolyGraph>(&p)) graphs.push_back(g);
        if (const auto* s = std::get_if<PolySublevel>(&p)) sublevels.push_back(s);
    }

    if (graphs.empty() && sublevels.empty()) {
        // Candidate feasibility keeps a tiny slack for the Gram-solve rounding.
        return halfspace_combo_distance(halfspaces, x, argmins, 1e-10);
    }
    if (x.size() != 2) throw NoAnalyticOracle("polynomial sets are plane-only");

    // Feasible points on a graph branch: every other primitive restricts the
    // parameter range; the intersection lives inside the first graph.
    if (!graphs.empty()) {
        const std::array<double, 3>& base = graphs.front()->poly;
        IntervalSet ts = IntervalSet::all();
        for (const Primitive& p : combo) {
            if (std::get_if<PolyGraph>(&p) == graphs.front()) continue;
            ts = ts.intersected(constraint_on_parabola(base, p));
            if (ts.empty()) return kInf;
        }
        return detail::parabola_arc_distance(base, ts, x, argmins);
    }

    // No graphs: the region's boundary decomposes into restricted parabola
    // arcs and line portions, each contained in the region.
    double best = kInf;
    bool any_piece = false;
    std::vector<Vec> local;
    auto consider = [&](double d, std::vector<Vec>& pts) {
        if (d < best) best = d;
        for (Vec& p : pts) local.push_back(std::move(p));
        pts.clear();
    };
    std::vector<Vec> pts;
    for (const PolySublevel* s : sublevels) {
        IntervalSet ts = IntervalSet::all();
        for (const Primitive& p : combo) {
            if (std::get_if<PolySublevel>(&p) == s) continue;
            ts = ts.intersected(constraint_on_parabola(s->poly, p));
        }
        if (ts.empty()) continue;
        any_piece = true;
        consider(detail::parabola_arc_distance(s->poly, ts, x, argmins ? &pts : nullptr), pts);
    }
    for (const Halfspace* h : halfspaces) {
        const double n = norm(h->normal);
        const Vec anchor = scaled(h->normal, h->offset / (n * n));
        const Vec dir{-h->normal[1] / n, h->normal[0] / n};
        IntervalSet ts = IntervalSet::all();
        for (const Primitive& p : combo) {
            if (std::get_if<Halfspace>(&p) == h) continue;
            ts = ts.intersected(constraint_on_line(anchor, dir, p));
        }
        if (ts.empty()) continue;
        any_piece = true;
        consider(detail::line_portion_distance(anchor, dir, ts, x, argmins ? &pts : nullptr),
                 pts);
    }
    if (!any_piece) return kInf;  // nonmember + empty boundary: empty region
    if (argmins) {
        std::vector<Vec> keep;
        for (Vec& p : local) {
            detail::collect_argmin(&keep, distance(x, p), best, p, 1e-9);
        }
        *argmins = std::move(keep);
    }
    return best;
}

}  // namespace

DistanceResult exact_intersection_distance(std::span<const SetOracle> sets, const Vec& x,
                                           bool want_points) {
    double tol = kMembershipTol;
    for (const SetOracle& s : sets) tol = std::min(tol, s.tolerance());

    std::vector<Combo> combos{Combo{}};
    for (const SetOracle& s : sets) {
        std::vector<Combo> next;
        for (const Combo& lhs : combos) {
            for (Combo& rhs : to_dnf(s)) {
                Combo merged = lhs;
                merged.insert(merged.end(), rhs.begin(), rhs.end());
                next.push_back(std::move(merged));
            }
        }
        if (next.size() > kComboCap) throw NoAnalyticOracle("too many branch combinations");
        combos = std::move(next);
    }

    DistanceResult out;
    std::vector<Vec> argmins;
    for (const Combo& c : combos) {
        std::vector<Vec> pts;
        const double d = combo_distance(c, x, want_points ? &pts : nullptr, tol);
        if (d < out.value) out.value = d;
        for (Vec& p : pts) argmins.push_back(std::move(p));
    }
    if (want_points && std::isfinite(out.value)) {
        for (Vec& p : argmins) {
            detail::collect_argmin(&out.points, distance(x, p), out.value, p, 1e-9);
        }
    }
    return out;
}

namespace detail {

DistanceResult numeric_intersection_bracket(std::span<const SetOracle> sets, const Vec& x,
                                            const Vec* feasible_hint) {
    double lower = 0.0;
    for (const SetOracle& s : sets) lower = std::max(lower, s.distance(x));

    double upper = kInf;
    Vec best_point;
    // Upper bounds come only from points feasible within the declared
    // feasibility tolerance; the residual is added to keep the bound honest.
    auto offer = [&](const Vec& z) {
        double maxd = 0.0;
        for (const SetOracle& s : sets) maxd = std::max(maxd, s.distance(z));
        if (maxd > kFeasibilityTol) return;
        const double u = distance(x, z) + maxd;
        if (u < upper) {
            upper = u;
            best_point = z;
        }
    };
    auto alternate = [&](Vec z) {
        for (int iter = 0; iter < 120; ++iter) {
            double maxd = 0.0;
            for (const SetOracle& s : sets) {
                const std::vector<Vec> ps = s.project(z);
                if (!ps.empty()) z = ps.front();
            }
            for (const SetOracle& s : sets) maxd = std::max(maxd, s.distance(z));
            if (maxd <= 1e-12) break;
        }
        offer(z);
    };

    if (feasible_hint) {
        offer(*feasible_hint);
        alternate(x);
        for (double lam : {0.25, 0.5, 0.75}) {
            alternate(add(scaled(x, 1.0 - lam), scaled(*feasible_hint, lam)));
        }
    } else {
        alternate(x);
    }

    DistanceResult out;
    if (std::isfinite(upper)) {
        out.value = 0.5 * (lower + upper);
        out.uncertainty = 0.5 * (upper - lower);
        if (!best_point.empty()) out.points.push_back(best_point);
    }
    return out;
}

}  // namespace detail

DistanceResult intersection_distance(std::span<const SetOracle> sets, const Vec& x,
                                     const Vec* feasible_hint, double tol) {
    try {
        return exact_intersection_distance(sets, x);
    } catch (const NoAnalyticOracle&) {
        DistanceResult r = detail::numeric_intersection_bracket(sets, x, feasible_hint);
        if (!std::isfinite(r.value) || r.uncertainty > tol) {
            throw UnresolvedIntersection(std::isfinite(r.value) ? r.value - r.uncertainty : 0.0,
                                         std::isfinite(r.value) ? r.value + r.uncertainty : kInf);
        }
        return r;
    }
}

}  // namespace regmod
