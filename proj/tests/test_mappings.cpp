#include <doctest.h>

#include <cmath>

#include "regmod/mappings.hpp"
#include "regmod/moduli.hpp"
#include "regmod/presets.hpp"
#include "regmod/sampling.hpp"

using namespace regmod;

namespace {

RadiusSchedule quick() {
    RadiusSchedule cfg;
    cfg.samples_per_radius = 600;
    return cfg;
}

}  // namespace

TEST_CASE("scalar map oracles") {
    const SetValuedMap sq = SetValuedMap::single_valued_poly({0, 0, 1}, 0.0);  // x^2
    CHECK(sq.forward_distance({0.3}, {{0.0}}) == doctest::Approx(0.09));
    CHECK(sq.inverse_distance({0.3}, {{0.0}}) == doctest::Approx(0.3));
    CHECK(sq.inverse_distance({0.0}, {{0.25}}) == doctest::Approx(0.5));
    // Empty preimage below the parabola's range.
    CHECK(std::isinf(sq.inverse_distance({0.0}, {{-0.5}})));

    // Oracle coherence on random pairs: both distances vanish exactly on the
    // graph.
    Rng rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = rng.uniform(-1, 1);
        const double y = rng.uniform(-1, 1);
        const bool on_graph = std::abs(x * x - y) < 1e-12;
        CHECK((sq.forward_distance({x}, {{y}}) < 1e-9) == on_graph);
        CHECK((sq.inverse_distance({x}, {{y}}) < 1e-9) ==
              (std::abs(y) >= 0.0 && on_graph));
    }
}

TEST_CASE("map moduli of the worked scalar maps") {
    const RadiusSchedule cfg = quick();
    const SetValuedMap sq = SetValuedMap::single_valued_poly({0, 0, 1}, 0.0);
    const SetValuedMap id = SetValuedMap::single_valued_poly({0, 1}, 0.0);

    // d(x, F^{-1}(0)) = |x| and d(0, F(x))^{1/2} = |x|: the quotient is one.
    const MapModulusEstimate half = map_modulus(sq, 0.5, MapModulusKind::kMapSub, cfg);
    CHECK(half.verdict == Verdict::kPositive);
    CHECK(half.value == doctest::Approx(1.0).epsilon(0.02));

    // At order one the quotient x^2/|x| collapses.
    CHECK(map_modulus(sq, 1.0, MapModulusKind::kMapSub, cfg).verdict == Verdict::kZero);

    // The identity is metrically regular with constant one.
    const MapModulusEstimate reg = map_modulus(id, 1.0, MapModulusKind::kMapReg, cfg);
    CHECK(reg.verdict == Verdict::kPositive);
    CHECK(reg.value == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("collection-to-map restates the collection constants") {
    const RadiusSchedule cfg = quick();
    for (const std::string& id : {"example-2.1", "example-2.2", "example-2.3"}) {
        const SetCollection coll = make_preset(id);
        const SetValuedMap map = collection_to_map(coll);

        // The base pair is on the graph.
        CHECK(map.forward_distance(map.base_x(), map.base_y()) == doctest::Approx(0.0));

        const std::vector<std::pair<ModulusKind, MapModulusKind>> pairs{
            {ModulusKind::kSemi, MapModulusKind::kMapSemi},
            {ModulusKind::kSub, MapModulusKind::kMapSub},
            {ModulusKind::kUniform, MapModulusKind::kMapReg}};
        for (const auto& [ck, mk] : pairs) {
            for (double q : {0.5, 1.0}) {
                const ModulusEstimate c = regularity_modulus(coll, q, ck, cfg);
                const MapModulusEstimate m = map_modulus(map, q, mk, cfg);
                if (c.infinite || m.infinite) {
                    CHECK(c.infinite == m.infinite);
                } else if (c.verdict == Verdict::kZero || m.verdict == Verdict::kZero) {
                    CHECK(c.verdict == m.verdict);
                } else {
                    CHECK(std::abs(c.value - m.value) <=
                          c.uncertainty + m.uncertainty + 0.03 * std::max(1.0, c.value));
                }
            }
        }
    }
}

TEST_CASE("map-to-collection builds the graph pair") {
    const SetValuedMap sq = SetValuedMap::single_valued_poly({0, 0, 1}, 0.0);
    const SetCollection coll = map_to_collection(sq);
    REQUIRE(coll.sets.size() == 2);
    CHECK(coll.base_point == Vec{0.0, 0.0});
    for (const SetOracle& s : coll.sets) CHECK(s.contains(coll.base_point));
    // The first set is the parabola graph, the second the horizontal axis.
    CHECK(coll.sets[0].contains({0.5, 0.25}));
    CHECK(coll.sets[1].contains({7.0, 0.0}));

    const SetValuedMap id = SetValuedMap::single_valued_poly({0, 1}, 0.0);
    const SetCollection diag = map_to_collection(id);
    CHECK(diag.sets[0].contains({0.7, 0.7}));
    CHECK(diag.sets[1].contains({-0.7, 0.0}));

    // Maps without a graph oracle are rejected.
    const SetCollection e21 = make_preset("example-2.1");
    CHECK_THROWS_AS(map_to_collection(collection_to_map(e21)), NoAnalyticOracle);
}

TEST_CASE("bridge sandwiches for the worked maps") {
    const RadiusSchedule cfg = quick();
    const SetValuedMap sq = SetValuedMap::single_valued_poly({0, 0, 1}, 0.0);
    const SetValuedMap id = SetValuedMap::single_valued_poly({0, 1}, 0.0);

    // Map error-bound constant one at order one half puts the collection
    // constant between 1/(1+sqrt(2)) and 1/sqrt(2).
    const BridgeReport half = bridge_check(sq, 0.5, cfg);
    CHECK(half.map_sub.value == doctest::Approx(1.0).epsilon(0.02));
    CHECK(half.sub.ok);
    CHECK(half.sub.lower == doctest::Approx(1.0 / (1.0 + std::sqrt(2.0))).epsilon(0.03));
    CHECK(half.sub.upper == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.03));
    CHECK(half.coll_sub.value >= half.sub.lower - 0.05);
    CHECK(half.coll_sub.value <= half.sub.upper + 0.05);

    // Identity at order one: collection constant within [1/3, 1/2].
    const BridgeReport one = bridge_check(id, 1.0, cfg);
    CHECK(one.map_reg.value == doctest::Approx(1.0).epsilon(0.02));
    CHECK(one.reg.ok);
    CHECK(one.coll_reg.value >= 1.0 / 3.0 - 0.05);
    CHECK(one.coll_reg.value <= 0.5 + 0.05);

    // Zero collapses on both sides of the sandwich.
    const BridgeReport zero = bridge_check(sq, 1.0, cfg);
    CHECK(zero.map_sub.verdict == Verdict::kZero);
    CHECK(zero.coll_sub.verdict == Verdict::kZero);
    CHECK(zero.sub.ok);
}

TEST_CASE("graph-oracle maps behave like their polynomial") {
    const SetValuedMap g = SetValuedMap::graph_oracle(SetOracle::poly_graph({1, 0, 0}), 0.0);
    CHECK(g.forward_distance({0.5}, {{0.0}}) == doctest::Approx(0.25));
    CHECK(g.inverse_distance({0.5}, {{0.0}}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(SetValuedMap::graph_oracle(SetOracle::halfspace({0, 1}, 0), 0.0),
                    NoAnalyticOracle);
}
