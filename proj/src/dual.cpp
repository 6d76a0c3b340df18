#include "regmod/dual.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "regmod/sampling.hpp"

namespace regmod {

const char* to_string(DualKind k) {
    return k == DualKind::kUniformQ1 ? "dual-uniform" : "dual-subreg";
}

// =============================================================================
// Duality mapping
// =============================================================================

bool duality_map_check(std::span<const Vec> xhat, std::span<const Vec> xstar, double tol) {
    if (xhat.size() != xstar.size() || xhat.empty()) return false;
    double mass = 0.0;
    double vmax = 0.0;
    for (const Vec& x : xhat) vmax = std::max(vmax, norm(x));
    for (const Vec& s : xstar) mass += norm(s);
    if (std::abs(mass - 1.0) > tol) return false;
    for (std::size_t i = 0; i < xhat.size(); ++i) {
        const double si = norm(xstar[i]);
        if (si <= tol) continue;  // zero components are always admissible
        if (norm(xhat[i]) < vmax - tol) return false;  // mass on a non-maximal factor
        const double ni = norm(xhat[i]);
        if (ni <= tol) continue;  // J(0) is the whole unit sphere
        // Alignment: x_i* must equal its norm times the unit primal factor.
        const Vec aligned = scaled(xhat[i], si / ni);
        if (distance(xstar[i], aligned) > tol) return false;
    }
    return true;
}

std::vector<std::vector<Vec>> duality_map_sample(std::span<const Vec> xhat) {
    double vmax = 0.0;
    for (const Vec& x : xhat) vmax = std::max(vmax, norm(x));
    if (vmax <= 0.0) {
        throw PreconditionError("duality map at zero has no representable sample");
    }
    std::vector<std::size_t> argmax;
    for (std::size_t i = 0; i < xhat.size(); ++i) {
        if (norm(xhat[i]) >= vmax * (1.0 - 1e-12)) argmax.push_back(i);
    }
    std::vector<std::vector<Vec>> samples;
    const int dim = static_cast<int>(xhat.front().size());
    for (std::size_t i : argmax) {
        std::vector<Vec> s(xhat.size(), zeros(dim));
        s[i] = scaled(xhat[i], 1.0 / norm(xhat[i]));
        samples.push_back(std::move(s));
    }
    if (argmax.size() > 1) {
        std::vector<Vec> mix(xhat.size(), zeros(dim));
        for (std::size_t i : argmax) {
            mix[i] = scaled(xhat[i], 1.0 / (norm(xhat[i]) * argmax.size()));
        }
        samples.push_back(std::move(mix));
    }
    return samples;
}

// =============================================================================
// Circular arc sets (plane-only direction algebra)
// =============================================================================

namespace {

constexpr double kTau = 2.0 * M_PI;

double wrap(double a) {
    a = std::fmod(a, kTau);
    return a < 0.0 ? a + kTau : a;
}

struct ArcSet {
    // Non-wrapping closed subintervals of [0, tau); empty vector = empty set.
    std::vector<std::pair<double, double>> arcs;
    bool empty() const { return arcs.empty(); }
};

ArcSet full_circle() { return ArcSet{{{0.0, kTau}}}; }

ArcSet arc_around(double center, double halfwidth) {
    if (halfwidth >= M_PI) return full_circle();
    if (halfwidth < 0.0) return ArcSet{};
    const double lo = wrap(center - halfwidth);
    const double hi = lo + 2.0 * halfwidth;
    if (hi <= kTau) return ArcSet{{{lo, hi}}};
    return ArcSet{{{0.0, hi - kTau}, {lo, kTau}}};
}

ArcSet arc_union(const ArcSet& a, const ArcSet& b) {
    ArcSet u = a;
    u.arcs.insert(u.arcs.end(), b.arcs.begin(), b.arcs.end());
    std::sort(u.arcs.begin(), u.arcs.end());
    return u;
}

ArcSet arc_intersect(const ArcSet& a, const ArcSet& b) {
    ArcSet out;
    for (const auto& [alo, ahi] : a.arcs) {
        for (const auto& [blo, bhi] : b.arcs) {
            const double lo = std::max(alo, blo);
            const double hi = std::min(ahi, bhi);
            if (lo <= hi) out.arcs.push_back({lo, hi});
        }
    }
    std::sort(out.arcs.begin(), out.arcs.end());
    return out;
}

double circ_dist(double a, double b) {
    const double d = std::abs(wrap(a) - wrap(b));
    return std::min(d, kTau - d);
}

bool interval_contains(double lo, double hi, double a) {
    a = wrap(a);
    return (a >= lo && a <= hi) || (a + kTau >= lo && a + kTau <= hi);
}

// Largest achievable angle between a direction in A and one in B, capped pi.
double max_angle_between(const ArcSet& a, const ArcSet& b) {
    double best = 0.0;
    for (const auto& [alo, ahi] : a.arcs) {
        for (const auto& [blo, bhi] : b.arcs) {
            // Antipodal reach: some alpha in A with alpha+pi in B.
            for (double e : {alo, ahi}) {
                if (interval_contains(blo, bhi, e + M_PI)) return M_PI;
            }
            for (double e : {blo, bhi}) {
                if (interval_contains(alo, ahi, e + M_PI)) return M_PI;
            }
            // Shifted-interval overlap handles the interior antipode case.
            if (interval_contains(blo, bhi, alo + M_PI) ||
                interval_contains(alo, ahi, blo + M_PI)) {
                return M_PI;
            }
            for (double ea : {alo, ahi}) {
                for (double eb : {blo, bhi}) best = std::max(best, circ_dist(ea, eb));
            }
        }
    }
    return best;
}

double nearest_angle(const ArcSet& a, double target) {
    target = wrap(target);
    double best = kInf, arg = target;
    for (const auto& [lo, hi] : a.arcs) {
        for (double cand : {std::clamp(target, lo, hi), std::clamp(target + kTau, lo, hi)}) {
            const double d = circ_dist(cand, target);
            if (d < best) {
                best = d;
                arg = cand;
            }
        }
    }
    return arg;
}

Vec angle_dir(double a) { return Vec{std::cos(a), std::sin(a)}; }

// Admissible direction arcs for a dual vector of norm `mass` lying within
// `inflation` of the given normal cone.
ArcSet cone_arc(const NormalCone& cone, double mass, double inflation) {
    if (mass <= inflation) return full_circle();
    if (cone.type == ConeType::kTrivial) return ArcSet{};
    const double w = std::asin(std::clamp(inflation / mass, 0.0, 1.0));
    const Vec& g = cone.generators.front().direction;
    const double ang = std::atan2(g[1], g[0]);
    if (cone.type == ConeType::kRay) return arc_around(ang, w);
    return arc_union(arc_around(ang, w), arc_around(ang + M_PI, w));
}

// Boundary points of each set near the base point, with their cones.
struct NormalOption {
    Vec omega;
    Vec direction;  // unit dual direction
};

std::vector<NormalOption> normal_options(const SetOracle& set, const Vec& center,
                                         double delta) {
    std::vector<NormalOption> options;
    const std::vector<double> params = geometric_grid(delta, 0.5, 10);
    std::vector<Vec> omegas = boundary_samples(set, center, params);
    omegas.push_back(center);
    for (const Vec& w : omegas) {
        if (distance(w, center) > delta) continue;
        if (!set.contains(w)) continue;
        const NormalCone cone = frechet_normal_cone(set, w);
        for (const NormalVector& g : cone.generators) {
            options.push_back({w, g.direction});
        }
    }
    return options;
}

}  // namespace

// =============================================================================
// Dual criteria
// =============================================================================

namespace {

DualCriterionReport uniform_q1_criterion(const SetCollection& coll, const DualRadii& radii,
                                         const RadiusSchedule& cfg) {
    (void)cfg;
    DualCriterionReport report;
    report.kind = DualKind::kUniformQ1;
    report.q = 1.0;
    report.radii = radii;

    const std::size_t m = coll.sets.size();
    std::vector<std::vector<NormalOption>> options;
    for (const SetOracle& s : coll.sets) {
        options.push_back(normal_options(s, coll.base_point, radii.delta));
    }

    // Unit-mass tuples on the weight grid; mass may sit only on sets that
    // offer a normal direction.
    const int res = m <= 2 ? 50 : 10;
    if (m == 2) {
        for (int k = 0; k <= res; ++k) {
            const double lam = static_cast<double>(k) / res;
            if (lam > 0.0 && options[0].empty()) continue;
            if (lam < 1.0 && options[1].empty()) continue;
            if (lam == 0.0 || lam == 1.0) {
                const auto& opts = lam == 1.0 ? options[0] : options[1];
                if (opts.empty()) continue;
                ++report.sample_count;
                if (1.0 < report.infimum) {
                    report.infimum = 1.0;
                    report.infinite = false;
                    const std::size_t which = lam == 1.0 ? 0 : 1;
                    report.witness.omegas = {options[0].empty() ? coll.base_point
                                                                : options[0].front().omega,
                                             options[1].empty() ? coll.base_point
                                                                : options[1].front().omega};
                    report.witness.normals.assign(m, zeros(coll.space.dim));
                    report.witness.omegas[which] = opts.front().omega;
                    report.witness.normals[which] = opts.front().direction;
                }
                continue;
            }
            for (const NormalOption& a : options[0]) {
                for (const NormalOption& b : options[1]) {
                    ++report.sample_count;
                    const double v =
                        norm(add(scaled(a.direction, lam), scaled(b.direction, 1.0 - lam)));
                    if (v < report.infimum) {
                        report.infimum = v;
                        report.infinite = false;
                        report.witness.omegas = {a.omega, b.omega};
                        report.witness.normals = {scaled(a.direction, lam),
                                                  scaled(b.direction, 1.0 - lam)};
                    }
                }
            }
        }
    } else {
        // Coarse composition grid for wider collections.
        std::vector<int> comp(m, 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
            if (i + 1 == m) {
                comp[i] = left;
                std::vector<std::size_t> support;
                for (std::size_t j = 0; j < m; ++j) {
                    if (comp[j] > 0) {
                        if (options[j].empty()) return;
                        support.push_back(j);
                    }
                }
                if (support.empty()) return;
                // One option per supported set, greedy over a capped product.
                std::vector<std::size_t> idx(support.size(), 0);
                bool done = false;
                while (!done) {
                    Vec sum = zeros(coll.space.dim);
                    for (std::size_t s = 0; s < support.size(); ++s) {
                        const std::size_t j = support[s];
                        sum = add(sum, scaled(options[j][idx[s]].direction,
                                              static_cast<double>(comp[j]) / res));
                    }
                    ++report.sample_count;
                    const double v = norm(sum);
                    if (v < report.infimum) {
                        report.infimum = v;
                        report.infinite = false;
                        report.witness.omegas.assign(m, coll.base_point);
                        report.witness.normals.assign(m, zeros(coll.space.dim));
                        for (std::size_t s = 0; s < support.size(); ++s) {
                            const std::size_t j = support[s];
                            report.witness.omegas[j] = options[j][idx[s]].omega;
                            report.witness.normals[j] =
                                scaled(options[j][idx[s]].direction,
                                       static_cast<double>(comp[j]) / res);
                        }
                    }
                    std::size_t pos = 0;
                    while (pos < support.size()) {
                        const std::size_t cap =
                            std::min<std::size_t>(options[support[pos]].size(), 20);
                        if (++idx[pos] < cap) break;
                        idx[pos] = 0;
                        ++pos;
                    }
                    done = pos == support.size();
                }
                return;
            }
            for (int c = 0; c <= left; ++c) {
                comp[i] = c;
                rec(i + 1, left - c);
            }
        };
        rec(0, res);
    }
    return report;
}

DualCriterionReport subreg_criterion(const SetCollection& coll, double q,
                                     const DualRadii& radii, const RadiusSchedule& cfg) {
    if (q <= 0.0 || q > 1.0) {
        throw PreconditionError("the perturbed-normal criterion needs q in (0, 1]");
    }
    if (radii.rho <= 0.0 || radii.eps <= 0.0) {
        throw PreconditionError("rho and eps must be positive");
    }
    DualCriterionReport report;
    report.kind = DualKind::kSubregQ;
    report.q = q;
    report.radii = radii;
    report.note = "sampled on a fixed configuration grid; certifies tested scales only";

    const int dim = coll.space.dim;
    const std::size_t m = coll.sets.size();
    if (dim != 2) {
        throw NoAnalyticOracle("the perturbed-normal criterion is implemented in the plane");
    }
    const double rho = radii.rho;
    const double eps = radii.eps;

    Rng rng(mix_seed(cfg.seed, "dual-subreg"));
    std::vector<Vec> xs;
    std::vector<Vec> dirs = structured_directions(dim);
    for (int i = 0; i < 16; ++i) dirs.push_back(rng.unit_vector(dim));
    for (const Vec& d : dirs) {
        for (double f : {0.75, 0.4, 0.15}) {
            xs.push_back(add(coll.base_point, scaled(d, f * rho)));
        }
    }

    for (const Vec& x : xs) {
        // Set-point candidates: metric projections plus nearby boundary points.
        std::vector<std::vector<Vec>> omega_cands(m);
        bool ok = true;
        for (std::size_t i = 0; i < m; ++i) {
            const std::vector<Vec> pr = coll.sets[i].project(x);
            if (pr.empty()) {
                ok = false;
                break;
            }
            omega_cands[i].push_back(pr.front());
            const std::array<double, 2> slide{rho / 8.0, rho / 32.0};
            for (const Vec& b : boundary_samples(coll.sets[i], pr.front(), slide)) {
                if (distance(b, x) <= rho) omega_cands[i].push_back(b);
                if (omega_cands[i].size() >= 4) break;
            }
        }
        if (!ok) continue;

        std::vector<std::size_t> idx(m, 0);
        bool done = false;
        while (!done) {
            std::vector<Vec> omegas(m);
            for (std::size_t i = 0; i < m; ++i) omegas[i] = omega_cands[i][idx[i]];

            double vmax = 0.0;
            for (std::size_t i = 0; i < m; ++i) vmax = std::max(vmax, distance(x, omegas[i]));
            if (vmax > kFeasibilityTol && vmax < rho) {
                const double band = 1e-9 * (1.0 + vmax);
                std::vector<std::size_t> support_all;
                for (std::size_t i = 0; i < m; ++i) {
                    if (distance(x, omegas[i]) >= vmax - band) support_all.push_back(i);
                }
                const double mass = q * std::pow(vmax, q - 1.0);

                // Per-component admissible direction arcs at full mass are
                // refined per weight below (the cone inflation depends on the
                // component mass).
                auto arcs_at = [&](std::size_t i, double s) -> ArcSet {
                    const NormalCone cone = frechet_normal_cone(coll.sets[i], omegas[i]);
                    ArcSet a = cone_arc(cone, s, rho);
                    const Vec v = sub(x, omegas[i]);
                    const double nv = norm(v);
                    const double c = std::clamp(1.0 - eps / nv, -1.0, 1.0);
                    a = arc_intersect(a, arc_around(std::atan2(v[1], v[0]), std::acos(c)));
                    return a;
                };

                // Singleton supports.
                for (std::size_t i : support_all) {
                    const ArcSet a = arcs_at(i, mass);
                    ++report.sample_count;
                    if (!a.empty() && mass < report.infimum) {
                        report.infimum = mass;
                        report.infinite = false;
                        report.witness.x = x;
                        report.witness.omegas = omegas;
                        report.witness.normals.assign(m, zeros(dim));
                        report.witness.normals[i] =
                            scaled(angle_dir(nearest_angle(a, 0.0)), mass);
                    }
                }
                // Paired supports on the weight grid.
                if (support_all.size() >= 2) {
                    for (std::size_t ai = 0; ai + 1 < support_all.size(); ++ai) {
                        for (std::size_t bi = ai + 1; bi < support_all.size(); ++bi) {
                            const std::size_t i = support_all[ai], j = support_all[bi];
                            for (int k = 1; k < 50; ++k) {
                                const double lam = k / 50.0;
                                const double s1 = lam * mass, s2 = (1.0 - lam) * mass;
                                const ArcSet a1 = arcs_at(i, s1);
                                const ArcSet a2 = arcs_at(j, s2);
                                ++report.sample_count;
                                if (a1.empty() || a2.empty()) continue;
                                const double phi = max_angle_between(a1, a2);
                                const double v2 = s1 * s1 + s2 * s2 +
                                                  2.0 * s1 * s2 * std::cos(phi);
                                const double v = std::sqrt(std::max(0.0, v2));
                                if (v < report.infimum) {
                                    report.infimum = v;
                                    report.infinite = false;
                                    report.witness.x = x;
                                    report.witness.omegas = omegas;
                                    report.witness.normals.assign(m, zeros(dim));
                                    // Reconstruct a representative pair.
                                    double besta = 0.0, bestb = 0.0, bestd = -1.0;
                                    for (const auto& [l1, h1] : a1.arcs) {
                                        for (const auto& [l2, h2] : a2.arcs) {
                                            for (double ea : {l1, h1}) {
                                                for (double eb : {l2, h2}) {
                                                    const double d = circ_dist(ea, eb);
                                                    if (d > bestd) {
                                                        bestd = d;
                                                        besta = ea;
                                                        bestb = eb;
                                                    }
                                                }
                                            }
                                        }
                                    }
                                    report.witness.normals[i] = scaled(angle_dir(besta), s1);
                                    report.witness.normals[j] = scaled(angle_dir(bestb), s2);
                                }
                            }
                        }
                    }
                }
            }

            std::size_t pos = 0;
            while (pos < m) {
                if (++idx[pos] < omega_cands[pos].size()) break;
                idx[pos] = 0;
                ++pos;
            }
            done = pos == m;
        }
    }
    return report;
}

}  // namespace

DualCriterionReport dual_modulus(const SetCollection& coll, DualKind kind, double q,
                                 const DualRadii& radii, const RadiusSchedule& cfg) {
    if (kind == DualKind::kUniformQ1) return uniform_q1_criterion(coll, radii, cfg);
    return subreg_criterion(coll, q, radii, cfg);
}

bool dual_criterion_positive(const DualCriterionReport& report) {
    return !report.infinite ? report.infimum >= kDualPositiveThreshold : true;
}

}  // namespace regmod
