#include <doctest.h>

#include <cmath>

#include "regmod/dual.hpp"
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

// Sampled limsup test for a claimed normal direction: set points approaching
// the base must make a nonpositive angle gain.
bool passes_limsup_test(const SetOracle& set, const Vec& base, const Vec& direction) {
    Rng rng(101);
    int checked = 0;
    for (int trial = 0; trial < 6000 && checked < 1000; ++trial) {
        const double r = 0.03 * std::pow(rng.uniform(), 2.0);
        const Vec probe = add(base, scaled(rng.unit_vector(2), r));
        const auto pts = set.project(probe);
        if (pts.empty()) continue;
        const Vec u = pts.front();
        const double gap = distance(u, base);
        if (gap < 1e-8 || gap > 0.02) continue;  // below tolerance the
                                                 // oracle returns the probe
        ++checked;
        if (dot(direction, sub(u, base)) > 0.01 * gap) return false;
    }
    return checked > 50;
}

}  // namespace

TEST_CASE("normal cones of the primitive kinds") {
    const SetOracle h = SetOracle::halfspace({0, 1}, 0);
    const NormalCone hc = frechet_normal_cone(h, {4.0, 0.0});
    REQUIRE(hc.type == ConeType::kRay);
    CHECK(hc.generators[0].direction[0] == doctest::Approx(0.0));
    CHECK(hc.generators[0].direction[1] == doctest::Approx(-1.0));
    CHECK(frechet_normal_cone(h, {0.0, 2.0}).type == ConeType::kTrivial);
    CHECK_THROWS_AS(frechet_normal_cone(h, {0.0, -1.0}), PreconditionError);

    // The graph normal line at (t, t^2) is spanned by (2t, -1).
    const SetOracle g = SetOracle::poly_graph({1, 0, 0});
    const NormalCone gc = frechet_normal_cone(g, {1.0, 1.0});
    REQUIRE(gc.type == ConeType::kLine);
    const Vec expect = scaled({2.0, -1.0}, 1.0 / std::sqrt(5.0));
    CHECK(std::abs(std::abs(dot(gc.generators[0].direction, expect)) - 1.0) < 1e-9);

    // Union branches meeting at the origin cancel to the trivial cone.
    const SetCollection e23 = make_preset("example-2.3");
    CHECK(frechet_normal_cone(e23.sets[0], {0.0, 0.0}).type == ConeType::kTrivial);
    // Away from the corner the active branch shows through.
    const NormalCone away = frechet_normal_cone(e23.sets[0], {0.1, 0.01});
    CHECK(away.type == ConeType::kRay);

    // Intersection oracles carry no cone formula.
    const SetOracle wedge = SetOracle::intersection_of(
        {SetOracle::halfspace({0, 1}, 0), SetOracle::halfspace({1, 0}, 0)});
    CHECK_THROWS_AS(frechet_normal_cone(wedge, {0.0, 0.0}), NoAnalyticOracle);
}

TEST_CASE("claimed normals pass the sampled limsup test") {
    const SetOracle h = SetOracle::halfspace({0, 1}, 0);
    CHECK(passes_limsup_test(h, {0, 0}, {0, -1}));
    CHECK_FALSE(passes_limsup_test(h, {0, 0}, {1, 0.5}));

    const SetOracle g = SetOracle::poly_graph({1, 0, 0});
    for (const NormalVector& n : frechet_normal_cone(g, {1.0, 1.0}).generators) {
        CHECK(passes_limsup_test(g, {1.0, 1.0}, n.direction));
    }
}

TEST_CASE("proximal normals") {
    // The halfspace admits the downward normal at any radius.
    const auto hs = proximal_normals(SetOracle::halfspace({0, 1}, 0), {0, 0});
    REQUIRE(hs.size() == 1);
    CHECK(hs[0].direction[1] == doctest::Approx(-1.0));

    // The cusped union has no proximal normal at the origin.
    const SetCollection e24 = make_preset("example-2.4");
    CHECK(proximal_normals(e24.sets[0], {0, 0}).empty());

    // The parabola graph: vertical directions with witness radius <= 1/2.
    const auto gr = proximal_normals(SetOracle::poly_graph({1, 0, 0}), {0, 0});
    REQUIRE(gr.size() == 2);
    for (const NormalVector& n : gr) {
        CHECK(std::abs(n.direction[0]) < 1e-9);
        CHECK(n.witness_radius <= 0.5 + 1e-12);
        // Certificate: d(x + r u, set) equals r at the stored witness.
        const SetOracle g = SetOracle::poly_graph({1, 0, 0});
        const Vec probe = add(n.base, scaled(n.direction, n.witness_radius));
        CHECK(g.distance(probe) == doctest::Approx(n.witness_radius));
    }
}

TEST_CASE("duality map check clauses") {
    const std::vector<Vec> xh{{1, 0}, {0, 0.5}};
    CHECK(duality_map_check(xh, std::vector<Vec>{{1, 0}, {0, 0}}));
    // Mass on the non-maximal component violates the zero rule.
    CHECK_FALSE(duality_map_check(xh, std::vector<Vec>{{0.5, 0}, {0, 0.5}}));
    // Misaligned dual vector.
    CHECK_FALSE(duality_map_check(xh, std::vector<Vec>{{0, 1}, {0, 0}}));
    // Norms must sum to one.
    CHECK_FALSE(duality_map_check(xh, std::vector<Vec>{{0.5, 0}, {0, 0}}));
}

TEST_CASE("duality map samples are valid and odd") {
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Vec> xh{
            {rng.uniform(-1, 1), rng.uniform(-1, 1)},
            {rng.uniform(-1, 1), rng.uniform(-1, 1)},
        };
        if (max_block_norm(xh) < 1e-6) continue;
        const auto samples = duality_map_sample(xh);
        REQUIRE(!samples.empty());
        for (const auto& s : samples) CHECK(duality_map_check(xh, s));

        // J(-y) = -J(y): negating the tuple negates every sample.
        std::vector<Vec> neg{scaled(xh[0], -1.0), scaled(xh[1], -1.0)};
        const auto nsamples = duality_map_sample(neg);
        REQUIRE(nsamples.size() == samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            for (std::size_t j = 0; j < samples[i].size(); ++j) {
                CHECK(near(nsamples[i][j], scaled(samples[i][j], -1.0), 1e-12));
            }
        }
    }
    CHECK_THROWS_AS(duality_map_sample(std::vector<Vec>{{0, 0}, {0, 0}}),
                    PreconditionError);
}

TEST_CASE("uniform dual criterion across the presets") {
    const RadiusSchedule cfg = quick();
    DualRadii radii;
    radii.delta = 0.2;

    // Orthogonal halfspaces: normals (0,-l1), (-l2,0) with l1+l2=1 give the
    // minimum sqrt(l1^2+l2^2) = 1/sqrt(2) at equal weights.
    const DualCriterionReport hs =
        dual_modulus(make_preset("halfspaces"), DualKind::kUniformQ1, 1.0, radii, cfg);
    CHECK(hs.infimum == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(dual_criterion_positive(hs));
    // The witness is an admissible unit-mass tuple.
    double mass = 0.0;
    for (const Vec& n : hs.witness.normals) mass += norm(n);
    CHECK(mass == doctest::Approx(1.0));

    // Near-cancelling normals at the origin of the first example.
    const DualCriterionReport e21 =
        dual_modulus(make_preset("example-2.1"), DualKind::kUniformQ1, 1.0, radii, cfg);
    CHECK(e21.infimum <= 1e-9);
    CHECK_FALSE(dual_criterion_positive(e21));

    // No admissible tuple when every cone is trivial.
    SetCollection whole;
    whole.space = SpaceConfig{2};
    whole.base_point = {0, 0};
    whole.sets = {SetOracle::whole_space(2), SetOracle::whole_space(2)};
    const DualCriterionReport w =
        dual_modulus(whole, DualKind::kUniformQ1, 1.0, radii, cfg);
    CHECK(w.infinite);
}

TEST_CASE("perturbed-normal criterion and its chain to the error bound") {
    const RadiusSchedule cfg = quick();
    DualRadii radii;
    radii.rho = 0.02;
    radii.eps = 0.001;

    const DualCriterionReport hs =
        dual_modulus(make_preset("halfspaces"), DualKind::kSubregQ, 1.0, radii, cfg);
    CHECK(!hs.infinite);
    CHECK(hs.infimum > 0.5);  // trends to 1/sqrt(2) as the scales shrink

    // Positivity across shrinking scales must be matched by the primal
    // error-bound property (the criterion is sufficient, not necessary).
    for (const std::string& id : {"halfspaces", "example-2.1", "example-2.2"}) {
        const SetCollection coll = make_preset(id);
        for (double q : {0.5, 1.0}) {
            double min_inf = kInf;
            for (const auto& [rho, eps] :
                 std::vector<std::pair<double, double>>{{0.05, 0.005}, {0.02, 0.001}}) {
                DualRadii r;
                r.rho = rho;
                r.eps = eps;
                const DualCriterionReport rep =
                    dual_modulus(coll, DualKind::kSubregQ, q, r, cfg);
                min_inf = std::min(min_inf, rep.infinite ? kInf : rep.infimum);
            }
            if (min_inf >= kDualPositiveThreshold) {
                CHECK(property_holds(regularity_modulus(coll, q, ModulusKind::kSub, cfg)));
            }
        }
    }
    CHECK_THROWS_AS(dual_modulus(make_preset("halfspaces"), DualKind::kSubregQ, 1.5, radii,
                                 cfg),
                    PreconditionError);
}
