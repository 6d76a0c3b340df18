#include "regmod/mappings.hpp"

#include <algorithm>
#include <cmath>

#include "regmod/moduli.hpp"
#include "regmod/sampling.hpp"

namespace regmod {

const char* to_string(MapModulusKind k) {
    switch (k) {
        case MapModulusKind::kMapSemi: return "map-semi";
        case MapModulusKind::kMapSub: return "map-sub";
        case MapModulusKind::kMapReg: return "map-reg";
    }
    return "?";
}

double range_distance(const RangePoint& a, const RangePoint& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, distance(a[i], b[i]));
    return m;
}

namespace {

double poly_value(const std::vector<double>& coeffs, double t) {
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
    return v;
}

std::vector<double> poly_roots_minus(const std::vector<double>& coeffs, double y) {
    // Roots of p(t) - y = 0, degree <= 3.
    double c0 = coeffs.empty() ? 0.0 : coeffs[0];
    const double c1 = coeffs.size() > 1 ? coeffs[1] : 0.0;
    const double c2 = coeffs.size() > 2 ? coeffs[2] : 0.0;
    const double c3 = coeffs.size() > 3 ? coeffs[3] : 0.0;
    return solve_cubic(c3, c2, c1, c0 - y);
}

}  // namespace

SetValuedMap SetValuedMap::single_valued_poly(std::vector<double> coeffs, double xbar) {
    if (coeffs.empty() || coeffs.size() > 4) {
        throw PreconditionError("polynomial maps support degrees up to three");
    }
    SetValuedMap map;
    map.poly_ = std::move(coeffs);
    map.xbar_ = {xbar};
    map.ybar_ = {{poly_value(map.poly_, xbar)}};
    map.domain_dim_ = 1;
    map.range_blocks_ = 1;
    map.block_dim_ = 1;
    return map;
}

SetValuedMap SetValuedMap::from_collection(SetCollection coll) {
    coll.validate();
    SetValuedMap map;
    map.domain_dim_ = coll.space.dim;
    map.block_dim_ = coll.space.dim;
    map.range_blocks_ = static_cast<int>(coll.sets.size());
    map.xbar_ = coll.base_point;
    map.ybar_.assign(coll.sets.size(), zeros(coll.space.dim));
    map.coll_ = std::move(coll);
    return map;
}

SetValuedMap SetValuedMap::graph_oracle(const SetOracle& graph, double xbar) {
    const auto* g = std::get_if<PolyGraph>(&graph.node());
    if (!g) throw NoAnalyticOracle("graph oracles must be plane polynomial graphs");
    return single_valued_poly({g->poly[2], g->poly[1], g->poly[0]}, xbar);
}

double SetValuedMap::forward_distance(const Vec& x, const RangePoint& y) const {
    if (coll_) {
        double m = 0.0;
        for (std::size_t i = 0; i < coll_->sets.size(); ++i) {
            m = std::max(m, coll_->sets[i].distance(add(x, y[i])));
        }
        return m;
    }
    return std::abs(poly_value(poly_, x[0]) - y[0][0]);
}

double SetValuedMap::inverse_distance(const Vec& x, const RangePoint& y) const {
    if (coll_) {
        std::vector<Vec> shifts(y.begin(), y.end());
        const SetCollection t = coll_->translated(shifts);
        const DistanceResult r = intersection_distance(t.sets, x, &coll_->base_point);
        return r.value;
    }
    double best = kInf;
    for (double root : poly_roots_minus(poly_, y[0][0])) {
        best = std::min(best, std::abs(x[0] - root));
    }
    return best;
}

SetValuedMap collection_to_map(const SetCollection& coll) {
    return SetValuedMap::from_collection(coll);
}

SetCollection map_to_collection(const SetValuedMap& map) {
    const std::vector<double>* poly = map.polynomial();
    if (!poly || (poly->size() > 3 && (*poly)[3] != 0.0)) {
        throw NoAnalyticOracle("only polynomial maps of degree <= 2 have a graph oracle");
    }
    const double c0 = (*poly)[0];
    const double c1 = poly->size() > 1 ? (*poly)[1] : 0.0;
    const double c2 = poly->size() > 2 ? (*poly)[2] : 0.0;
    SetCollection coll;
    coll.space = SpaceConfig{2};
    coll.name = "graph-pair";
    coll.base_point = {map.base_x()[0], map.base_y()[0][0]};
    coll.sets = {SetOracle::poly_graph({c2, c1, c0}),
                 SetOracle::poly_graph({0.0, 0.0, map.base_y()[0][0]})};
    coll.validate();
    return coll;
}

namespace {

struct BlockTuple {
    std::vector<Vec> dirs;
    std::vector<double> frac;
};

// Compass products across range blocks, then random shell tuples; mirrors the
// collection translation sampler so the product-map constants line up with
// the collection constants they restate.
std::vector<BlockTuple> make_block_tuples(int blocks, int dim, int count, Rng& rng) {
    std::vector<BlockTuple> tuples;
    const std::vector<Vec> compass = structured_directions(dim);
    std::vector<std::size_t> odo(static_cast<std::size_t>(blocks), 0);
    bool done = false;
    const std::size_t cap = std::min<std::size_t>(count / 2 + 1, 512);
    while (!done && tuples.size() < cap) {
        BlockTuple t;
        for (int i = 0; i < blocks; ++i) {
            t.dirs.push_back(compass[odo[i]]);
            t.frac.push_back(1.0);
        }
        tuples.push_back(std::move(t));
        int pos = 0;
        while (pos < blocks) {
            if (++odo[pos] < compass.size()) break;
            odo[pos] = 0;
            ++pos;
        }
        done = pos == blocks;
    }
    while (static_cast<int>(tuples.size()) < count) {
        BlockTuple t;
        for (int i = 0; i < blocks; ++i) {
            t.dirs.push_back(rng.unit_vector(dim));
            t.frac.push_back(rng.uniform() < 0.7 ? 1.0 : rng.uniform(0.5, 1.0));
        }
        tuples.push_back(std::move(t));
    }
    return tuples;
}

RangePoint tuple_point(const RangePoint& base, const BlockTuple& t, double r) {
    RangePoint y = base;
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = add(y[i], scaled(t.dirs[i], r * t.frac[i]));
    }
    return y;
}

std::vector<Vec> domain_offsets(int dim, int count, Rng& rng) {
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

}  // namespace

MapModulusEstimate map_modulus(const SetValuedMap& map, double q, MapModulusKind kind,
                               const RadiusSchedule& cfg) {
    if (q <= 0.0) throw PreconditionError("q must be positive");
    cfg.validate();
    constexpr double kDenFloor = 1e-13;

    std::vector<std::pair<double, double>> trace;
    for (int k = 0; k < cfg.steps; ++k) {
        const double rho = cfg.radius(k);
        Rng rng(mix_seed(cfg.seed, std::string("map-") + to_string(kind) + "-k" +
                                       std::to_string(k)));
        double f = kInf;
        auto consider = [&](double num_base, double den) {
            if (!std::isfinite(den)) {
                f = std::min(f, 0.0);  // empty preimage sends the bound to zero
                return;
            }
            if (den <= kDenFloor) return;
            f = std::min(f, std::pow(num_base, q) / den);
        };
        const int n = cfg.samples_per_radius;
        if (kind == MapModulusKind::kMapSemi) {
            const auto tuples =
                make_block_tuples(map.range_blocks(), map.block_dim(), n, rng);
            for (const BlockTuple& t : tuples) {
                const RangePoint y = tuple_point(map.base_y(), t, rho);
                const double dy = range_distance(y, map.base_y());
                if (dy <= kDenFloor) continue;
                consider(dy, map.inverse_distance(map.base_x(), y));
            }
        } else if (kind == MapModulusKind::kMapSub) {
            for (const Vec& off : domain_offsets(map.domain_dim(), n, rng)) {
                const Vec x = add(map.base_x(), scaled(off, rho));
                const double den = map.inverse_distance(x, map.base_y());
                if (!std::isfinite(den) || den <= kDenFloor) continue;
                f = std::min(f, std::pow(map.forward_distance(x, map.base_y()), q) / den);
            }
        } else {
            const auto tuples =
                make_block_tuples(map.range_blocks(), map.block_dim(), n / 2, rng);
            const auto offsets = domain_offsets(map.domain_dim(), n / 2, rng);
            for (std::size_t i = 0; i < tuples.size(); ++i) {
                const Vec x = add(map.base_x(),
                                  scaled(offsets[i % offsets.size()],
                                         rho * (i % 3 == 0 ? 0.0 : 1.0)));
                const RangePoint y =
                    tuple_point(map.base_y(), tuples[i], rho * (i % 5 == 1 ? 0.5 : 1.0));
                const double num = map.forward_distance(x, y);
                if (num <= kDenFloor) continue;
                consider(num, map.inverse_distance(x, y));
            }
        }
        trace.emplace_back(rho, f);
    }
    ModulusEstimate core = classify_trace(ModulusKind::kSub, q, std::move(trace));
    MapModulusEstimate est;
    est.kind = kind;
    est.q = q;
    est.trace = std::move(core.trace);
    est.value = core.value;
    est.infinite = core.infinite;
    est.verdict = core.verdict;
    est.uncertainty = core.uncertainty;
    est.annotation = std::move(core.annotation);
    return est;
}

namespace {

BridgeBound sandwich(double q, const MapModulusEstimate& mapside, const ModulusEstimate& coll) {
    const double two_q = std::pow(2.0, q);
    BridgeBound b;
    const double slack = 0.05 + mapside.uncertainty + coll.uncertainty;
    if (mapside.infinite) {
        b.lower = 1.0;
        b.upper = kInf;
        b.ok = coll.infinite || coll.value >= b.lower - slack;
        return b;
    }
    b.lower = mapside.value / (mapside.value + two_q);
    b.upper = mapside.value / two_q;
    if (mapside.verdict == Verdict::kZero) {
        b.ok = coll.verdict == Verdict::kZero;
        return b;
    }
    b.ok = !coll.infinite && coll.value >= b.lower - slack && coll.value <= b.upper + slack;
    return b;
}

}  // namespace

BridgeReport bridge_check(const SetValuedMap& map, double q, const RadiusSchedule& cfg) {
    BridgeReport report;
    report.q = q;
    report.map_semi = map_modulus(map, q, MapModulusKind::kMapSemi, cfg);
    report.map_sub = map_modulus(map, q, MapModulusKind::kMapSub, cfg);
    report.map_reg = map_modulus(map, q, MapModulusKind::kMapReg, cfg);
    const SetCollection coll = map_to_collection(map);
    report.coll_semi = regularity_modulus(coll, q, ModulusKind::kSemi, cfg);
    report.coll_sub = regularity_modulus(coll, q, ModulusKind::kSub, cfg);
    report.coll_reg = regularity_modulus(coll, q, ModulusKind::kUniform, cfg);
    report.semi = sandwich(q, report.map_semi, report.coll_semi);
    report.sub = sandwich(q, report.map_sub, report.coll_sub);
    report.reg = sandwich(q, report.map_reg, report.coll_reg);
    return report;
}

}  // namespace regmod
