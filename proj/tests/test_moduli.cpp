#include <doctest.h>

#include <cmath>

#include "regmod/moduli.hpp"
#include "regmod/presets.hpp"
#include "regmod/sampling.hpp"

using namespace regmod;

namespace {

RadiusSchedule quick() {
    RadiusSchedule cfg;
    cfg.samples_per_radius = 700;
    return cfg;
}

SetCollection duplicated_halfspace() {
    SetCollection coll;
    coll.space = SpaceConfig{2};
    coll.base_point = {0, 0};
    coll.name = "dup";
    coll.sets = {SetOracle::halfspace({0, 1}, 0), SetOracle::halfspace({0, 1}, 0)};
    return coll;
}

}  // namespace

TEST_CASE("translation margin reproduces the closed forms") {
    const RadiusSchedule cfg = quick();

    // Orthogonal halfspaces: the worst translations push both walls inward by
    // r, the nearest common point (r, r) has norm r*sqrt(2), so the margin at
    // rho is rho/sqrt(2). A direct feasibility check confirms the crossover.
    const SetCollection hs = make_preset("halfspaces");
    const MarginResult mh = translation_margin(hs, 0.5, MarginMethod::kDefinition, cfg);
    CHECK(mh.value == doctest::Approx(0.35355).epsilon(1e-3));
    {
        const double r_feas = 0.34, r_infeas = 0.37;
        auto deepest = [&](double r) {
            // translate both halfspaces inward and measure d(0, intersection)
            const std::vector<Vec> shifts{{0, -r}, {-r, 0}};
            const SetCollection t = hs.translated(shifts);
            return exact_intersection_distance(t.sets, {0, 0}).value;
        };
        CHECK(deepest(r_feas) <= 0.5);
        CHECK(deepest(r_infeas) > 0.5);
    }

    const SetCollection e21 = make_preset("example-2.1");
    for (double rho : {0.2, 0.6}) {
        const MarginResult m = translation_margin(e21, rho, MarginMethod::kDefinition, cfg);
        CHECK(m.value ==
              doctest::Approx(std::sqrt(1.0 + rho * rho) - 1.0).epsilon(1e-3));
        const MarginResult u = translation_margin(e21, rho, MarginMethod::kUnionForm, cfg);
        CHECK(std::abs(m.value - u.value) <= m.uncertainty + u.uncertainty + 1e-6);
    }

    // Vertically separated translates empty the intersection at any size.
    const SetCollection e22 = make_preset("example-2.2");
    const MarginResult m22 = translation_margin(e22, 0.4, MarginMethod::kDefinition, cfg);
    CHECK(m22.value <= 1e-6);

    // All whole spaces: vacuously feasible, flagged infinite.
    SetCollection whole;
    whole.space = SpaceConfig{2};
    whole.base_point = {0, 0};
    whole.sets = {SetOracle::whole_space(2), SetOracle::whole_space(2)};
    CHECK(translation_margin(whole, 0.3, MarginMethod::kDefinition, cfg).infinite);
}

TEST_CASE("inflation margin reproduces the closed forms") {
    const RadiusSchedule cfg = quick();
    // Worst ratio max(a,b)/sqrt(a^2+b^2) = 1/sqrt(2) on the diagonal of the
    // third quadrant; circle enumeration over angles confirms the constant.
    {
        double worst = kInf;
        for (int k = 1; k < 900; ++k) {
            const double a = M_PI + k * (M_PI / 2) / 900.0;  // third quadrant
            const double u = std::cos(a), v = std::sin(a);
            const double maxd = std::max(-u, -v);
            worst = std::min(worst, maxd / 1.0);
        }
        CHECK(worst == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-4));
    }
    const MarginResult z = inflation_margin(make_preset("halfspaces"), 0.1, 0.5, quick());
    CHECK(z.value == doctest::Approx(0.1 / std::sqrt(2.0)).epsilon(2e-3));

    const MarginResult z21 = inflation_margin(make_preset("example-2.1"), 0.1, 0.5, cfg);
    CHECK(z21.value == doctest::Approx(0.1).epsilon(2e-3));

    // Identical sets: the inclusion holds up to r = rho.
    const MarginResult zd = inflation_margin(duplicated_halfspace(), 0.25, 0.5, cfg);
    CHECK(zd.value >= 0.95 * 0.25);
}

TEST_CASE("modulus estimates match the golden constants") {
    const RadiusSchedule cfg = quick();
    const SetCollection e21 = make_preset("example-2.1");
    const SetCollection e22 = make_preset("example-2.2");

    const ModulusEstimate semi_half = regularity_modulus(e21, 0.5, ModulusKind::kSemi, cfg);
    CHECK(semi_half.verdict == Verdict::kPositive);
    CHECK(semi_half.value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.02));

    CHECK(regularity_modulus(e21, 1.0, ModulusKind::kSemi, cfg).verdict == Verdict::kZero);

    const ModulusEstimate sub21 = regularity_modulus(e21, 1.0, ModulusKind::kSub, cfg);
    CHECK(sub21.value == doctest::Approx(1.0).epsilon(0.02));

    const ModulusEstimate sub22 = regularity_modulus(e22, 0.5, ModulusKind::kSub, cfg);
    CHECK(sub22.value == doctest::Approx(1.0).epsilon(0.02));
    CHECK(regularity_modulus(e22, 1.0, ModulusKind::kSub, cfg).verdict == Verdict::kZero);

    // Order collapse for q > 1 at a boundary base point.
    CHECK(regularity_modulus(e21, 1.5, ModulusKind::kSub, cfg).verdict == Verdict::kZero);
    CHECK(regularity_modulus(e21, 1.5, ModulusKind::kUniform, cfg).verdict == Verdict::kZero);
}

TEST_CASE("interior base point flags every modulus infinite") {
    SetCollection coll;
    coll.space = SpaceConfig{2};
    coll.base_point = {0, 0};
    coll.name = "interior";
    coll.sets = {SetOracle::halfspace({0, 1}, -1), SetOracle::halfspace({1, 0}, -1)};
    CHECK(coll.base_point_interior());
    const ModulusEstimate est =
        regularity_modulus(coll, 1.0, ModulusKind::kSub, quick());
    CHECK(est.infinite);
    CHECK(est.verdict == Verdict::kPositive);
    CHECK(est.annotation == "interior point");
}

TEST_CASE("metric inequality checks at explicit gammas") {
    const RadiusSchedule cfg = quick();
    const SetCollection e21 = make_preset("example-2.1");

    // gamma below the semiregularity constant at order one half: passes.
    CHECK(check_metric_inequality(e21, 0.5, ModulusKind::kSemi, 0.5, 0.1, cfg).pass);

    // At order one the constant vanishes; the vertical pinch is the witness.
    const CheckReport fail = check_metric_inequality(e21, 1.0, ModulusKind::kSemi, 0.1, 0.1, cfg);
    CHECK_FALSE(fail.pass);
    REQUIRE(fail.witness.translations.size() == 2);
    // The binding tuple is a pinch: the halfspace pushed up, the sublevel set
    // pushed down, and the violating quotient sits below gamma.
    CHECK(fail.witness.translations[0][1] < 0.0);
    CHECK(fail.witness.translations[1][1] > 0.0);
    CHECK(fail.witness.quotient < 0.1);

    // A duplicated set satisfies the error bound with gamma = 1 exactly.
    CHECK(check_metric_inequality(duplicated_halfspace(), 1.0, ModulusKind::kSub, 1.0, 1.0,
                                  cfg)
              .pass);
}

TEST_CASE("slope estimates sit below the error-bound modulus") {
    const RadiusSchedule cfg = quick();

    const ModulusEstimate dup = slope_modulus(duplicated_halfspace(), 1.0, cfg);
    CHECK(dup.verdict == Verdict::kPositive);
    CHECK(dup.value > 0.0);
    CHECK(dup.value <= 1.0 + 1e-6);

    // Positive (here even divergent) at order one half where the collection
    // is subregular with constant one.
    const ModulusEstimate s21 = slope_modulus(make_preset("example-2.1"), 0.5, cfg);
    CHECK(property_holds(s21));

    const ModulusEstimate s22 = slope_modulus(make_preset("example-2.2"), 1.0, cfg);
    CHECK(s22.verdict == Verdict::kZero);
}

TEST_CASE("critical exponent sweeps") {
    RadiusSchedule cfg = quick();
    cfg.samples_per_radius = 500;
    const std::vector<double> grid{0.5, 1.0, 1.5, 2.0, 2.5};

    const SweepResult s24 = critical_exponent(make_preset("example-2.4"), ModulusKind::kSemi,
                                              grid, cfg);
    CHECK(s24.critical_q == doctest::Approx(2.0));
    CHECK(property_holds(s24.table[0].estimate));  // divergent counts as holding
    CHECK(s24.table[4].estimate.verdict == Verdict::kZero);

    const SweepResult s21 = critical_exponent(make_preset("example-2.1"), ModulusKind::kSemi,
                                              grid, cfg);
    CHECK(s21.critical_q == doctest::Approx(0.5));

    const SweepResult sub21 = critical_exponent(make_preset("example-2.1"), ModulusKind::kSub,
                                                std::vector<double>{0.5, 1.0}, cfg);
    CHECK(sub21.critical_q == doctest::Approx(1.0));
}

TEST_CASE("trace classification rules") {
    // Flat positive trace.
    std::vector<std::pair<double, double>> flat;
    for (int k = 0; k < 12; ++k) flat.push_back({std::pow(0.5, k), 0.7});
    CHECK(classify_trace(ModulusKind::kSemi, 1.0, flat).verdict == Verdict::kPositive);

    // Geometric decay: zero.
    std::vector<std::pair<double, double>> decay;
    for (int k = 0; k < 12; ++k) decay.push_back({std::pow(0.5, k), std::pow(0.5, k)});
    CHECK(classify_trace(ModulusKind::kSemi, 1.0, decay).verdict == Verdict::kZero);

    // Geometric growth: divergent.
    std::vector<std::pair<double, double>> grow;
    for (int k = 0; k < 12; ++k) grow.push_back({std::pow(0.5, k), std::pow(2.0, k)});
    const ModulusEstimate g = classify_trace(ModulusKind::kSemi, 1.0, grow);
    CHECK(g.verdict == Verdict::kDivergent);
    CHECK(g.infinite);

    // Vacuous tail: positive with the infinite flag.
    std::vector<std::pair<double, double>> vac;
    for (int k = 0; k < 12; ++k) vac.push_back({std::pow(0.5, k), kInf});
    const ModulusEstimate v = classify_trace(ModulusKind::kSub, 1.0, vac);
    CHECK(v.infinite);
    CHECK(v.verdict == Verdict::kPositive);
}

TEST_CASE("estimates are deterministic for a fixed seed") {
    const SetCollection coll = make_preset("example-2.1");
    RadiusSchedule cfg = quick();
    const ModulusEstimate a = regularity_modulus(coll, 0.5, ModulusKind::kSemi, cfg);
    const ModulusEstimate b = regularity_modulus(coll, 0.5, ModulusKind::kSemi, cfg);
    CHECK(a.value == b.value);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].second == b.trace[i].second);
    }
    cfg.seed = 43;
    const ModulusEstimate c = regularity_modulus(coll, 0.5, ModulusKind::kSemi, cfg);
    CHECK(c.verdict == a.verdict);  // same verdict, different sample stream
}
