#include "regmod/moduli.hpp"

#include <algorithm>
#include <cmath>

#include "regmod/sampling.hpp"

namespace regmod {

namespace {

constexpr double kDenFloor = 1e-13;

struct TranslationTuple {
    std::vector<Vec> dirs;     // one unit direction per set
    std::vector<double> frac;  // magnitude fraction per set, in [0, 1]
};

// Magnitude styles: margins quantify over a whole ball, the per-radius
// modulus samplers probe one dyadic shell each (the shells tile the ball
// across the schedule, and shell-restricted magnitudes keep the quotient
// traces monotone instead of leaking mass from finer scales).
enum class Magnitude { kSphereBall, kProductBall, kShell };

double draw_fraction(Rng& rng, int dim, Magnitude style) {
    switch (style) {
        case Magnitude::kSphereBall:
            return rng.uniform() < 0.8 ? 1.0 : rng.uniform();
        case Magnitude::kProductBall:
            return std::pow(rng.uniform(), 1.0 / dim);
        case Magnitude::kShell:
            return rng.uniform() < 0.7 ? 1.0 : rng.uniform(0.5, 1.0);
    }
    return 1.0;
}

// Adversarial tuples: the full compass product first (worst cases in the
// plane sit on the sphere along coordinate and diagonal directions), then
// random tuples with style-dependent magnitudes.
std::vector<TranslationTuple> make_tuples(int m, int dim, int count, Rng& rng,
                                          Magnitude style) {
    std::vector<TranslationTuple> tuples;
    const std::vector<Vec> compass = structured_directions(dim);
    std::vector<std::size_t> odo(static_cast<std::size_t>(m), 0);
    const std::size_t structured_cap = std::min<std::size_t>(count / 2 + 1, 512);
    bool done = false;
    while (!done && tuples.size() < structured_cap) {
        TranslationTuple t;
        for (int i = 0; i < m; ++i) {
            t.dirs.push_back(compass[odo[i]]);
            t.frac.push_back(1.0);
        }
        tuples.push_back(std::move(t));
        int pos = 0;
        while (pos < m) {
            if (++odo[pos] < compass.size()) break;
            odo[pos] = 0;
            ++pos;
        }
        done = pos == m;
    }
    while (static_cast<int>(tuples.size()) < count) {
        TranslationTuple t;
        for (int i = 0; i < m; ++i) {
            t.dirs.push_back(rng.unit_vector(dim));
            t.frac.push_back(draw_fraction(rng, dim, style));
        }
        tuples.push_back(std::move(t));
    }
    return tuples;
}

std::vector<Vec> tuple_shifts(const TranslationTuple& t, double r) {
    std::vector<Vec> shifts;
    shifts.reserve(t.dirs.size());
    for (std::size_t i = 0; i < t.dirs.size(); ++i) {
        shifts.push_back(scaled(t.dirs[i], r * t.frac[i]));
    }
    return shifts;
}

IntersectionQuery translated_intersection(const SetCollection& coll,
                                          std::span<const Vec> shifts, const Vec& x) {
    const SetCollection t = coll.translated(shifts);
    const DistanceResult r = intersection_distance(t.sets, x, &coll.base_point);
    return {r.value, r.uncertainty};
}

// Probe points at unit scale around the base point: compass spokes at a few
// depths plus random shell points. Drawn once per estimator call so the
// per-radius infima decay deterministically along the schedule.
std::vector<Vec> fixed_point_offsets(const SetCollection& coll, int count, Rng& rng) {
    const int dim = coll.space.dim;
    std::vector<Vec> offsets;
    for (const Vec& d : structured_directions(dim)) {
        for (double f : {1.0, 0.55, 0.3}) offsets.push_back(scaled(d, f));
    }
    while (static_cast<int>(offsets.size()) < count) {
        const double f = rng.uniform() < 0.65 ? 1.0 : rng.uniform(0.5, 1.0);
        offsets.push_back(scaled(rng.unit_vector(dim), f));
    }
    return offsets;
}

// Midpoints between boundary features of distinct sets, where the worst
// error-bound quotients live. Deterministic; recomputed per radius because
// the feature curves bend.
std::vector<Vec> midpoint_offsets(const SetCollection& coll, double scale,
                                  std::size_t cap = 512) {
    std::vector<Vec> offsets;
    const std::vector<double> params = geometric_grid(scale, 0.5, 7);
    std::vector<std::vector<Vec>> features;
    for (const SetOracle& s : coll.sets) {
        features.push_back(boundary_samples(s, coll.base_point, params));
    }
    for (std::size_t i = 0; i + 1 < features.size(); ++i) {
        for (std::size_t j = i + 1; j < features.size(); ++j) {
            for (const Vec& a : features[i]) {
                for (const Vec& b : features[j]) {
                    const Vec mid = scaled(add(a, b), 0.5);
                    const Vec off = sub(mid, coll.base_point);
                    const double n = norm(off);
                    if (n > 1e-15 && n <= 1.5 * scale) {
                        offsets.push_back(scaled(off, 1.0 / scale));
                    }
                    if (offsets.size() > cap) return offsets;
                }
            }
        }
    }
    return offsets;
}

double semi_inner_inf(const SetCollection& coll, double q, double rho,
                      const std::vector<TranslationTuple>& tuples,
                      CheckWitness* witness) {
    std::vector<double> quot(tuples.size(), kInf);
    parallel_for(tuples.size(), [&](std::size_t i) {
        const std::vector<Vec> shifts = tuple_shifts(tuples[i], rho);
        const double size = max_block_norm(shifts);
        if (size <= kDenFloor) return;
        const IntersectionQuery d = translated_intersection(coll, shifts, coll.base_point);
        if (!std::isfinite(d.value)) {
            quot[i] = 0.0;  // translations emptied the intersection
            return;
        }
        if (d.value <= kDenFloor) return;  // base point still inside
        quot[i] = std::pow(size, q) / d.value;
    });
    double best = kInf;
    for (std::size_t i = 0; i < quot.size(); ++i) {
        if (quot[i] < best) {
            best = quot[i];
            if (witness) {
                witness->translations = tuple_shifts(tuples[i], rho);
                witness->x.clear();
                witness->quotient = best;
            }
        }
    }
    return best;
}

double sub_inner_inf(const SetCollection& coll, double q, double rho,
                     const std::vector<Vec>& offsets, CheckWitness* witness) {
    std::vector<double> quot(offsets.size(), kInf);
    std::vector<Vec> points(offsets.size());
    parallel_for(offsets.size(), [&](std::size_t i) {
        const Vec x = add(coll.base_point, scaled(offsets[i], rho));
        points[i] = x;
        const IntersectionQuery din = collection_intersection_distance(coll, x);
        if (!std::isfinite(din.value) || din.value <= kDenFloor) return;
        double maxd = 0.0;
        for (const SetOracle& s : coll.sets) maxd = std::max(maxd, s.distance(x));
        quot[i] = std::pow(maxd, q) / din.value;
    });
    double best = kInf;
    for (std::size_t i = 0; i < quot.size(); ++i) {
        if (quot[i] < best) {
            best = quot[i];
            if (witness) {
                witness->x = points[i];
                witness->translations.clear();
                witness->quotient = best;
            }
        }
    }
    return best;
}

struct UniformConfig {
    Vec offset;  // unit-scale offset of x from the base point
    TranslationTuple tuple;
    double tuple_frac = 1.0;
};

std::vector<UniformConfig> make_uniform_configs(const SetCollection& coll,
                                                const std::vector<Vec>& offsets, int count,
                                                Rng& rng) {
    const int m = static_cast<int>(coll.sets.size());
    const int dim = coll.space.dim;
    std::vector<UniformConfig> configs;
    Rng trng(mix_seed(rng.next(), "uniform-tuples"));
    const std::vector<TranslationTuple> tuples =
        make_tuples(m, dim, std::max(8, count / 4), trng, Magnitude::kShell);

    // Pure translation configs (x at the base point).
    for (const TranslationTuple& t : tuples) {
        if (static_cast<int>(configs.size()) >= (3 * count) / 10) break;
        configs.push_back({zeros(dim), t, 1.0});
    }
    // Pure point configs (zero translations).
    TranslationTuple zero_tuple;
    for (int i = 0; i < m; ++i) {
        zero_tuple.dirs.push_back(zeros(dim));
        zero_tuple.frac.push_back(0.0);
    }
    for (const Vec& off : offsets) {
        if (static_cast<int>(configs.size()) >= (11 * count) / 20) break;
        configs.push_back({off, zero_tuple, 0.0});
    }
    // Joint configs.
    std::size_t ti = 0;
    while (static_cast<int>(configs.size()) < count && !tuples.empty()) {
        const double f = rng.uniform() < 0.5 ? 1.0 : rng.uniform(0.5, 1.0);
        const Vec off = scaled(rng.unit_vector(dim), rng.uniform(0.5, 1.0));
        configs.push_back({off, tuples[ti % tuples.size()], f});
        ++ti;
    }
    return configs;
}

double uniform_inner_inf(const SetCollection& coll, double q, double rho,
                         const std::vector<UniformConfig>& configs, CheckWitness* witness) {
    std::vector<double> quot(configs.size(), kInf);
    parallel_for(configs.size(), [&](std::size_t i) {
        const UniformConfig& c = configs[i];
        const Vec x = add(coll.base_point, scaled(c.offset, rho));
        const std::vector<Vec> shifts = tuple_shifts(c.tuple, rho * c.tuple_frac);
        const SetCollection t = coll.translated(shifts);
        const DistanceResult den = intersection_distance(t.sets, x, &coll.base_point);
        if (!std::isfinite(den.value)) {
            quot[i] = 0.0;
            return;
        }
        if (den.value <= kDenFloor) return;
        double maxd = 0.0;
        for (std::size_t s = 0; s < coll.sets.size(); ++s) {
            maxd = std::max(maxd, coll.sets[s].distance(add(x, shifts[s])));
        }
        quot[i] = std::pow(maxd, q) / den.value;
    });
    double best = kInf;
    for (std::size_t i = 0; i < quot.size(); ++i) {
        if (quot[i] < best) {
            best = quot[i];
            if (witness) {
                witness->x = add(coll.base_point, scaled(configs[i].offset, rho));
                witness->translations =
                    tuple_shifts(configs[i].tuple, rho * configs[i].tuple_frac);
                witness->quotient = best;
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Slope machinery
// ---------------------------------------------------------------------------

struct SlopeBase {
    Vec x;
    std::vector<Vec> omegas;
    double size = 0.0;  // max_i ||x - omega_i||
};

std::vector<SlopeBase> make_slope_bases(const SetCollection& coll, double rho, Rng& rng) {
    const int dim = coll.space.dim;
    std::vector<Vec> xs;
    for (const Vec& d : structured_directions(dim)) {
        for (double f : {0.8, 0.4, 0.15}) xs.push_back(add(coll.base_point, scaled(d, f * rho)));
    }
    for (int i = 0; i < 16; ++i) {
        xs.push_back(add(coll.base_point, scaled(rng.unit_vector(dim), rho * rng.uniform())));
    }
    std::vector<SlopeBase> bases;
    for (const Vec& x : xs) {
        SlopeBase b;
        b.x = x;
        bool ok = true;
        for (const SetOracle& s : coll.sets) {
            const std::vector<Vec> pr = s.project(x);
            if (pr.empty()) {
                ok = false;
                break;
            }
            b.omegas.push_back(pr.front());
        }
        if (!ok) continue;
        for (const Vec& w : b.omegas) b.size = std::max(b.size, distance(x, w));
        if (b.size > kDenFloor && b.size < rho) bases.push_back(std::move(b));
    }
    return bases;
}

double local_slope(const SetCollection& coll, double q, double rho, const SlopeBase& base,
                   Rng& rng) {
    const int dim = coll.space.dim;
    const std::size_t m = coll.sets.size();
    const double M = base.size;
    const double fq0 = std::pow(M, q);

    std::vector<Vec> udirs = structured_directions(dim);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec v = sub(base.x, base.omegas[i]);
        const double n = norm(v);
        if (n > 1e-14) {
            udirs.push_back(scaled(v, 1.0 / n));
            udirs.push_back(scaled(v, -1.0 / n));
        }
    }
    for (int i = 0; i < 6; ++i) udirs.push_back(rng.unit_vector(dim));

    double sup = 0.0;
    auto eval = [&](const Vec& u, const std::vector<Vec>& vs) {
        double mx = 0.0;
        for (std::size_t i = 0; i < m; ++i) mx = std::max(mx, distance(u, vs[i]));
        const double num = fq0 - std::pow(mx, q);
        if (num <= 0.0) return;
        std::vector<Vec> dv(m);
        for (std::size_t i = 0; i < m; ++i) dv[i] = sub(vs[i], base.omegas[i]);
        const double den = weighted_product_norm(sub(u, base.x), dv, rho);
        if (den > 1e-300) sup = std::max(sup, num / den);
    };

    for (double eta : {1e-2 * M, 1e-3 * M}) {
        for (const Vec& du : udirs) {
            const Vec u = add(base.x, scaled(du, eta));
            eval(u, base.omegas);
            // Let each set point track the moved center when its projection
            // stays local.
            std::vector<Vec> follow = base.omegas;
            bool moved = false;
            for (std::size_t i = 0; i < m; ++i) {
                const std::vector<Vec> pr = coll.sets[i].project(u);
                if (!pr.empty() && distance(pr.front(), base.omegas[i]) <= 3.0 * eta) {
                    follow[i] = pr.front();
                    moved = true;
                }
            }
            if (moved) eval(u, follow);
        }
        // Pure set-point slides.
        for (std::size_t i = 0; i < m; ++i) {
            for (const Vec& dv : structured_directions(dim)) {
                const std::vector<Vec> pr =
                    coll.sets[i].project(add(base.omegas[i], scaled(dv, eta)));
                if (pr.empty()) continue;
                const double step = distance(pr.front(), base.omegas[i]);
                if (step <= kDenFloor || step > 3.0 * eta) continue;
                std::vector<Vec> vs = base.omegas;
                vs[i] = pr.front();
                eval(base.x, vs);
            }
        }
    }
    return sup;
}

}  // namespace

// =============================================================================
// Public estimators
// =============================================================================

MarginResult translation_margin(const SetCollection& coll, double rho, MarginMethod method,
                                const RadiusSchedule& cfg) {
    if (rho <= 0.0) throw PreconditionError("rho must be positive");
    cfg.validate();
    const int m = static_cast<int>(coll.sets.size());
    Rng rng(mix_seed(cfg.seed, method == MarginMethod::kDefinition ? "margin-def"
                                                                   : "margin-union"));
    const std::vector<TranslationTuple> tuples =
        make_tuples(m, coll.space.dim, cfg.samples_per_radius, rng,
                    method == MarginMethod::kUnionForm ? Magnitude::kProductBall
                                                       : Magnitude::kSphereBall);

    const double band = kFeasibilityTol;
    auto feasible_for_all = [&](double r) {
        for (const TranslationTuple& t : tuples) {
            const std::vector<Vec> shifts = tuple_shifts(t, r);
            const IntersectionQuery d = translated_intersection(coll, shifts, coll.base_point);
            if (!(d.value <= rho + band + d.uncertainty)) return false;
        }
        return true;
    };

    double hi = 10.0 * rho;
    if (feasible_for_all(hi)) return {kInf, 0.0, true};
    double lo = 0.0;
    for (int iter = 0; iter < 60 && (hi - lo) > 1e-12 + 1e-9 * rho; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (feasible_for_all(mid) ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), 0.5 * (hi - lo) + band, false};
}

MarginResult inflation_margin(const SetCollection& coll, double rho, double delta,
                              const RadiusSchedule& cfg) {
    if (rho <= 0.0 || delta <= 0.0) throw PreconditionError("rho and delta must be positive");
    cfg.validate();
    const int dim = coll.space.dim;
    Rng rng(mix_seed(cfg.seed, "inflation"));

    std::vector<Vec> dirs = structured_directions(dim);
    const std::vector<double> params = geometric_grid(delta, 0.6, 8);
    std::vector<std::vector<Vec>> features;
    for (const SetOracle& s : coll.sets) {
        features.push_back(boundary_samples(s, coll.base_point, params));
    }
    for (std::size_t i = 0; i + 1 < features.size(); ++i) {
        for (std::size_t j = i + 1; j < features.size(); ++j) {
            for (const Vec& a : features[i]) {
                for (const Vec& b : features[j]) {
                    const Vec off = sub(scaled(add(a, b), 0.5), coll.base_point);
                    const double n = norm(off);
                    if (n > 1e-12) dirs.push_back(scaled(off, 1.0 / n));
                }
            }
        }
    }
    for (int i = 0; i < 48; ++i) dirs.push_back(rng.unit_vector(dim));
    std::vector<Vec> raw;
    for (int i = 0; i < 200; ++i) raw.push_back(rng.ball_point(dim, delta));

    auto max_set_distance = [&](const Vec& x) {
        double mx = 0.0;
        for (const SetOracle& s : coll.sets) mx = std::max(mx, s.distance(x));
        return mx;
    };
    auto violates = [&](const Vec& x, double r) {
        if (distance(x, coll.base_point) > delta + 1e-12) return false;
        if (max_set_distance(x) > r + 1e-12) return false;
        const IntersectionQuery din = collection_intersection_distance(coll, x);
        return din.value - din.uncertainty > rho * (1.0 + 1e-9) + 1e-12;
    };
    auto inclusion_holds = [&](double r) {
        for (const Vec& d : dirs) {
            // Deepest point along the spoke still within max-distance r.
            double slo = 0.0, shi = delta;
            if (max_set_distance(add(coll.base_point, scaled(d, shi))) > r) {
                for (int it = 0; it < 30; ++it) {
                    const double smid = 0.5 * (slo + shi);
                    const Vec x = add(coll.base_point, scaled(d, smid));
                    (max_set_distance(x) <= r ? slo : shi) = smid;
                }
            } else {
                slo = delta;
            }
            for (double f : {1.0, 0.7, 0.4}) {
                if (violates(add(coll.base_point, scaled(d, slo * f)), r)) return false;
            }
        }
        for (const Vec& z : raw) {
            if (violates(add(coll.base_point, z), r)) return false;
        }
        return true;
    };

    double hi = 2.0 * delta;
    if (inclusion_holds(hi)) return {kInf, 0.0, true};
    double lo = 0.0;
    for (int iter = 0; iter < 50 && (hi - lo) > 1e-12 + 1e-9 * rho; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (inclusion_holds(mid) ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), 0.5 * (hi - lo) + kFeasibilityTol, false};
}

ModulusEstimate regularity_modulus(const SetCollection& coll, double q, ModulusKind kind,
                                   const RadiusSchedule& cfg) {
    if (q <= 0.0) throw PreconditionError("q must be positive");
    if (kind == ModulusKind::kSlope) return slope_modulus(coll, q, cfg);
    cfg.validate();

    Rng rng(mix_seed(cfg.seed, std::string("modulus-") + to_string(kind)));
    std::vector<TranslationTuple> tuples;
    std::vector<Vec> base_offsets;
    std::vector<UniformConfig> base_configs;
    if (kind == ModulusKind::kSemi) {
        tuples = make_tuples(static_cast<int>(coll.sets.size()), coll.space.dim,
                             cfg.samples_per_radius, rng, Magnitude::kShell);
    } else if (kind == ModulusKind::kSub) {
        base_offsets = fixed_point_offsets(coll, cfg.samples_per_radius, rng);
    } else {
        base_offsets = fixed_point_offsets(coll, cfg.samples_per_radius / 4 + 8, rng);
        base_configs = make_uniform_configs(coll, base_offsets, cfg.samples_per_radius, rng);
    }

    std::vector<std::pair<double, double>> trace;
    for (int k = 0; k < cfg.steps; ++k) {
        const double rho = cfg.radius(k);
        double f = kInf;
        if (kind == ModulusKind::kSemi) {
            f = semi_inner_inf(coll, q, rho, tuples, nullptr);
        } else if (kind == ModulusKind::kSub) {
            std::vector<Vec> offsets = base_offsets;
            for (Vec& m : midpoint_offsets(coll, rho)) offsets.push_back(std::move(m));
            f = sub_inner_inf(coll, q, rho, offsets, nullptr);
        } else {
            std::vector<UniformConfig> configs = base_configs;
            TranslationTuple zero_tuple;
            for (std::size_t i = 0; i < coll.sets.size(); ++i) {
                zero_tuple.dirs.push_back(zeros(coll.space.dim));
                zero_tuple.frac.push_back(0.0);
            }
            for (Vec& m : midpoint_offsets(coll, rho)) {
                configs.push_back({std::move(m), zero_tuple, 0.0});
            }
            f = uniform_inner_inf(coll, q, rho, configs, nullptr);
        }
        trace.emplace_back(rho, f);
    }
    ModulusEstimate est = classify_trace(kind, q, std::move(trace));
    if (est.infinite && est.verdict == Verdict::kPositive) {
        est.annotation = coll.base_point_interior() ? "interior point" : est.annotation;
    }
    return est;
}

CheckReport check_metric_inequality(const SetCollection& coll, double q, ModulusKind kind,
                                    double gamma, double delta, const RadiusSchedule& cfg) {
    if (gamma <= 0.0 || delta <= 0.0) throw PreconditionError("gamma and delta must be positive");
    if (kind == ModulusKind::kSlope) {
        throw PreconditionError("the slope constant has no metric inequality form");
    }
    cfg.validate();
    CheckReport report;
    report.kind = kind;
    report.q = q;
    report.gamma = gamma;
    report.delta = delta;

    Rng rng(mix_seed(cfg.seed, std::string("check-") + to_string(kind)));
    const int n = cfg.samples_per_radius;
    std::vector<TranslationTuple> tuples;
    std::vector<Vec> base_offsets;
    std::vector<UniformConfig> base_configs;
    if (kind == ModulusKind::kSemi) {
        tuples = make_tuples(static_cast<int>(coll.sets.size()), coll.space.dim, n, rng,
                             Magnitude::kShell);
    } else if (kind == ModulusKind::kSub) {
        base_offsets = fixed_point_offsets(coll, n, rng);
    } else {
        base_offsets = fixed_point_offsets(coll, n / 4 + 8, rng);
        base_configs = make_uniform_configs(coll, base_offsets, n, rng);
    }

    for (int j = 0; j < cfg.steps; ++j) {
        const double scale = delta * std::pow(cfg.shrink, j);
        CheckWitness w;
        double f = kInf;
        if (kind == ModulusKind::kSemi) {
            f = semi_inner_inf(coll, q, scale, tuples, &w);
        } else if (kind == ModulusKind::kSub) {
            std::vector<Vec> offsets = base_offsets;
            for (Vec& m : midpoint_offsets(coll, scale)) offsets.push_back(std::move(m));
            f = sub_inner_inf(coll, q, scale, offsets, &w);
        } else {
            std::vector<UniformConfig> configs = base_configs;
            TranslationTuple zero_tuple;
            for (std::size_t i = 0; i < coll.sets.size(); ++i) {
                zero_tuple.dirs.push_back(zeros(coll.space.dim));
                zero_tuple.frac.push_back(0.0);
            }
            for (Vec& m : midpoint_offsets(coll, scale)) {
                configs.push_back({std::move(m), zero_tuple, 0.0});
            }
            f = uniform_inner_inf(coll, q, scale, configs, &w);
        }
        report.samples += n;
        if (f < report.worst_ratio) {
            report.worst_ratio = f;
            report.witness = w;
        }
    }
    report.pass = report.worst_ratio >= gamma - 1e-6 * std::max(1.0, gamma);
    return report;
}

ModulusEstimate slope_modulus(const SetCollection& coll, double q, const RadiusSchedule& cfg) {
    if (q <= 0.0) throw PreconditionError("q must be positive");
    cfg.validate();
    std::vector<std::pair<double, double>> trace;
    for (int k = 0; k < cfg.steps; ++k) {
        const double rho = cfg.radius(k);
        Rng rng(mix_seed(cfg.seed, "slope-k" + std::to_string(k)));
        const std::vector<SlopeBase> bases = make_slope_bases(coll, rho, rng);
        double f = kInf;
        for (const SlopeBase& b : bases) {
            f = std::min(f, local_slope(coll, q, rho, b, rng));
        }
        trace.emplace_back(rho, f);
    }
    ModulusEstimate est = classify_trace(ModulusKind::kSlope, q, std::move(trace));
    if (est.infinite && est.verdict == Verdict::kPositive && est.annotation.empty()) {
        est.annotation = coll.base_point_interior() ? "interior point" : "no feasible base pair";
    }
    return est;
}

SweepResult critical_exponent(const SetCollection& coll, ModulusKind kind,
                              std::span<const double> q_grid, const RadiusSchedule& cfg) {
    if (q_grid.empty()) throw PreconditionError("q grid must be nonempty");
    for (std::size_t i = 1; i < q_grid.size(); ++i) {
        if (q_grid[i] <= q_grid[i - 1]) throw PreconditionError("q grid must ascend");
    }
    SweepResult result;
    for (double q : q_grid) {
        SweepEntry e;
        e.q = q;
        e.estimate = regularity_modulus(coll, q, kind, cfg);
        result.table.push_back(std::move(e));
    }
    // The property weakens as q grows: once it fails it must stay failed.
    bool seen_fail = false;
    for (SweepEntry& e : result.table) {
        const bool holds = property_holds(e.estimate);
        if (!holds) seen_fail = true;
        if (holds && seen_fail) {
            e.flagged = true;
            e.estimate.verdict = Verdict::kInconclusive;
            e.estimate.annotation = "breaks verdict monotonicity across the q grid";
        }
    }
    for (const SweepEntry& e : result.table) {
        if (!e.flagged && property_holds(e.estimate)) {
            result.critical_q = e.q;
            result.any_holds = true;
        }
    }
    return result;
}

}  // namespace regmod
