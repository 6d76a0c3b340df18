#include "regmod/run.hpp"

#include <chrono>
#include <map>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "regmod/dual.hpp"
#include "regmod/mappings.hpp"
#include "regmod/moduli.hpp"
#include "regmod/presets.hpp"
#include "regmod/spec_json.hpp"

namespace regmod {

namespace {

constexpr double kRoot2Inv = 0.7071067811865476;

SetCollection load_collection(const RunConfig& cfg) {
    if (!cfg.preset.empty()) {
        if (!is_preset(cfg.preset)) {
            throw SpecParseError("unknown preset '" + cfg.preset + "'");
        }
        return make_preset(cfg.preset);
    }
    if (!cfg.spec_path.empty()) return load_collection_file(cfg.spec_path);
    throw SpecParseError("no collection given: use a preset id or a spec file");
}

std::string config_echo(const RunConfig& cfg, const SetCollection& coll) {
    std::ostringstream out;
    out << "collection=" << coll.name << " rho0=" << format_g6(cfg.schedule.rho0)
        << " shrink=" << format_g6(cfg.schedule.shrink) << " steps=" << cfg.schedule.steps
        << " samples=" << cfg.schedule.samples_per_radius << " seed=" << cfg.schedule.seed;
    return out.str();
}

int finalize(const RunConfig& cfg, Report& report, std::ostream& console,
             Report* report_out) {
    const std::string payload = cfg.format == "json" ? report.to_json() : report.to_csv();
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path, std::ios::binary);
        if (!out) {
            console << "error: cannot write '" << cfg.out_path << "'\n";
            return 2;
        }
        out << payload;
    }
    if (report_out) *report_out = report;
    return report.all_pass() ? 0 : 1;
}

long elapsed_ms(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

// Effective value of an estimate for order comparisons.
double effective(const ModulusEstimate& e) {
    if (e.infinite) return kInf;
    if (e.verdict == Verdict::kZero) return 0.0;
    return e.value;
}

double effective(const MapModulusEstimate& e) {
    if (e.infinite) return kInf;
    if (e.verdict == Verdict::kZero) return 0.0;
    return e.value;
}

std::string describe(const ModulusEstimate& e) {
    return std::string(to_string(e.verdict)) + "/" +
           (e.infinite ? "inf" : format_g6(e.value));
}

std::string describe(const MapModulusEstimate& e) {
    return std::string(to_string(e.verdict)) + "/" +
           (e.infinite ? "inf" : format_g6(e.value));
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

GoldenRow value_golden(const std::string& coll, const std::string& quantity, double q,
                       double measured, double target, double rel_tol) {
    GoldenRow row;
    row.collection = coll;
    row.quantity = quantity;
    row.q = q;
    row.measured = format_g6(measured);
    row.target = format_g6(target) + " (±" + format_g6(rel_tol * 100.0) + "%)";
    row.pass = std::isfinite(measured) &&
               std::abs(measured - target) <= rel_tol * std::abs(target);
    return row;
}

GoldenRow verdict_golden(const std::string& coll, const std::string& quantity, double q,
                         const ModulusEstimate& est, Verdict expected) {
    GoldenRow row;
    row.collection = coll;
    row.quantity = quantity;
    row.q = q;
    row.measured = to_string(est.verdict);
    row.target = to_string(expected);
    row.pass = est.verdict == expected;
    return row;
}

GoldenRow bound_golden(const std::string& coll, const std::string& quantity, double q,
                       const ModulusEstimate& est, double lower_bound) {
    GoldenRow row;
    row.collection = coll;
    row.quantity = quantity;
    row.q = q;
    row.measured = describe(est);
    row.target = ">=" + format_g6(lower_bound);
    row.pass = effective(est) >= lower_bound;
    return row;
}

void reproduce_collection(const SetCollection& coll, const RadiusSchedule& sched,
                          Report& report) {
    const std::string& id = coll.name;
    auto modulus = [&](double q, ModulusKind kind) {
        return regularity_modulus(coll, q, kind, sched);
    };
    if (id == "example-2.1") {
        for (double rho : {0.2, 0.4, 0.6}) {
            const MarginResult m =
                translation_margin(coll, rho, MarginMethod::kDefinition, sched);
            report.goldens.push_back(value_golden(
                id, "translation-margin rho=" + format_g6(rho), 1.0, m.value,
                std::sqrt(1.0 + rho * rho) - 1.0, 0.05));
        }
        report.goldens.push_back(
            value_golden(id, "semi", 0.5, modulus(0.5, ModulusKind::kSemi).value, kRoot2Inv,
                         0.10));
        report.goldens.push_back(
            verdict_golden(id, "semi", 1.0, modulus(1.0, ModulusKind::kSemi), Verdict::kZero));
        report.goldens.push_back(
            value_golden(id, "sub", 1.0, modulus(1.0, ModulusKind::kSub).value, 1.0, 0.10));
        report.goldens.push_back(value_golden(
            id, "uniform", 0.5, modulus(0.5, ModulusKind::kUniform).value, kRoot2Inv, 0.15));
    } else if (id == "example-2.2") {
        report.goldens.push_back(
            verdict_golden(id, "sub", 1.0, modulus(1.0, ModulusKind::kSub), Verdict::kZero));
        report.goldens.push_back(
            value_golden(id, "sub", 0.5, modulus(0.5, ModulusKind::kSub).value, 1.0, 0.10));
        for (double q : {0.5, 1.0}) {
            report.goldens.push_back(
                verdict_golden(id, "semi", q, modulus(q, ModulusKind::kSemi), Verdict::kZero));
        }
        // Error-bound quotient at the worst sphere point for a = 0.1.
        const double a = 0.1;
        const double rho = 2.0 * a * a * a + a;
        const Vec x{rho, 0.0};
        double maxd = 0.0;
        for (const SetOracle& s : coll.sets) maxd = std::max(maxd, s.distance(x));
        const IntersectionQuery din = collection_intersection_distance(coll, x);
        const double target = std::sqrt(4.0 * std::pow(a, 6) + std::pow(a, 4)) / rho;
        report.goldens.push_back(value_golden(id, "quotient a=0.1", 1.0, maxd / din.value,
                                              target, 0.10));
    } else if (id == "example-2.3") {
        report.goldens.push_back(
            bound_golden(id, "semi", 1.0, modulus(1.0, ModulusKind::kSemi), 0.9));
        report.goldens.push_back(
            verdict_golden(id, "sub", 1.0, modulus(1.0, ModulusKind::kSub), Verdict::kZero));
    } else if (id == "example-2.4") {
        for (double q : {0.5, 1.0}) {
            report.goldens.push_back(verdict_golden(id, "semi", q,
                                                    modulus(q, ModulusKind::kSemi),
                                                    Verdict::kDivergent));
        }
        report.goldens.push_back(
            value_golden(id, "semi", 2.0, modulus(2.0, ModulusKind::kSemi).value, 1.0, 0.25));
        report.goldens.push_back(
            verdict_golden(id, "semi", 2.5, modulus(2.5, ModulusKind::kSemi), Verdict::kZero));
    } else if (id == "halfspaces") {
        for (ModulusKind kind :
             {ModulusKind::kSemi, ModulusKind::kSub, ModulusKind::kUniform}) {
            report.goldens.push_back(value_golden(id, to_string(kind), 1.0,
                                                  modulus(1.0, kind).value, kRoot2Inv, 0.10));
        }
        DualRadii radii;
        radii.delta = 0.2;
        const DualCriterionReport dual =
            dual_modulus(coll, DualKind::kUniformQ1, 1.0, radii, sched);
        report.goldens.push_back(
            value_golden(id, "dual-uniform delta=0.2", 1.0, dual.infimum, kRoot2Inv, 0.10));
    } else {
        throw SpecParseError("no golden table for collection '" + id + "'");
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

void add_check(Report& report, const std::string& coll, const std::string& check,
               const std::string& detail, bool pass) {
    report.checks.push_back(CheckRow{coll, check, detail, pass});
}

// a <= b + slack with infinity semantics.
bool leq_with_slack(double a, double b, double slack) {
    if (std::isinf(b)) return true;
    if (std::isinf(a)) return false;
    return a <= b + slack;
}

void verify_collection(const SetCollection& coll, const RadiusSchedule& sched,
                       Report& report) {
    const std::string& id = coll.name;
    const bool interior = coll.base_point_interior();

    std::map<std::pair<int, int>, ModulusEstimate> cache;
    auto modulus = [&](double q, ModulusKind kind) -> const ModulusEstimate& {
        const std::pair<int, int> key{static_cast<int>(q * 1000), static_cast<int>(kind)};
        auto it = cache.find(key);
        if (it == cache.end()) {
            it = cache.emplace(key, regularity_modulus(coll, q, kind, sched)).first;
        }
        return it->second;
    };

    // Ordering of the three constants.
    for (double q : {0.5, 1.0}) {
        const ModulusEstimate& uni = modulus(q, ModulusKind::kUniform);
        const ModulusEstimate& semi = modulus(q, ModulusKind::kSemi);
        const ModulusEstimate& sub = modulus(q, ModulusKind::kSub);
        const double bound = std::min(effective(semi), effective(sub));
        const double slack =
            uni.uncertainty + semi.uncertainty + sub.uncertainty + 0.02;
        add_check(report, id, "constant-order q=" + format_g6(q),
                  "uniform=" + describe(uni) + " semi=" + describe(semi) +
                      " sub=" + describe(sub),
                  leq_with_slack(effective(uni), bound, slack));
    }

    // Two-method margin agreement, and q-monotonicity of the margin quotients.
    std::vector<std::pair<double, MarginResult>> margins;
    for (double rho : {0.2, 0.4, 0.6}) {
        const MarginResult a = translation_margin(coll, rho, MarginMethod::kDefinition, sched);
        const MarginResult b = translation_margin(coll, rho, MarginMethod::kUnionForm, sched);
        margins.push_back({rho, a});
        bool pass;
        std::string detail;
        if (a.infinite || b.infinite) {
            pass = a.infinite == b.infinite;
            detail = "definition=" + std::string(a.infinite ? "inf" : format_g6(a.value)) +
                     " union-form=" + (b.infinite ? "inf" : format_g6(b.value));
        } else {
            const double slack =
                a.uncertainty + b.uncertainty + 0.02 * std::max(1.0, a.value);
            pass = std::abs(a.value - b.value) <= slack;
            detail = "definition=" + format_g6(a.value) + " union-form=" + format_g6(b.value);
        }
        add_check(report, id, "margin-method-agreement rho=" + format_g6(rho), detail, pass);
    }
    {
        bool pass = true;
        std::string detail;
        for (const auto& [rho, m] : margins) {
            if (m.infinite || m.value > 1.0) continue;
            double prev = kInf;
            for (double q : {0.5, 1.0, 1.5}) {
                const double quot = std::pow(m.value, q) / rho;
                if (quot > prev + 1e-12) pass = false;
                prev = quot;
            }
            detail += "rho=" + format_g6(rho) + ":" + format_g6(m.value) + " ";
        }
        add_check(report, id, "margin-q-monotonicity",
                  detail.empty() ? "no margins at or below one" : detail, pass);
    }

    // Metric characterizations: a gamma below the estimate passes at some
    // small delta, a gamma above it fails.
    for (ModulusKind kind : {ModulusKind::kSemi, ModulusKind::kSub, ModulusKind::kUniform}) {
        for (double q : {0.5, 1.0}) {
            const ModulusEstimate& est = modulus(q, kind);
            bool pass = true;
            std::string detail = describe(est);
            if (est.infinite) {
                // Divergent quotients: test a gamma the trace has already
                // exceeded, at the scale where it did so.
                double gamma = 0.0, delta = 0.0;
                for (const auto& [rho, quot] : est.trace) {
                    if (std::isfinite(quot)) {
                        gamma = 0.5 * quot;
                        delta = rho;
                    }
                }
                if (gamma > 0.0) {
                    const CheckReport low =
                        check_metric_inequality(coll, q, kind, gamma, delta, sched);
                    pass = low.pass;
                    detail += " gamma=" + format_g6(gamma) + "@" + format_g6(delta) + ":" +
                              (low.pass ? "pass" : "fail");
                } else {
                    detail += " vacuous domain";
                }
            } else if (est.verdict == Verdict::kZero) {
                const CheckReport high =
                    check_metric_inequality(coll, q, kind, 0.05, 0.02, sched);
                pass = !high.pass;
                detail += " gamma=0.05@0.02:" + std::string(high.pass ? "pass" : "fail");
            } else if (est.verdict == Verdict::kPositive) {
                const double glo = 0.8 * est.value;
                const double ghi = 1.25 * est.value + 0.05;
                const CheckReport low = check_metric_inequality(coll, q, kind, glo, 0.02, sched);
                const CheckReport high = check_metric_inequality(coll, q, kind, ghi, 0.1, sched);
                pass = low.pass && !high.pass;
                detail += " gamma=" + format_g6(glo) + ":" +
                          std::string(low.pass ? "pass" : "fail") + " gamma=" +
                          format_g6(ghi) + ":" + std::string(high.pass ? "pass" : "fail");
            }
            add_check(report, id,
                      std::string("metric-characterization ") + to_string(kind) +
                          " q=" + format_g6(q),
                      detail, pass);
        }
    }

    // The q > 1 collapse at non-interior base points.
    {
        bool pass = true;
        std::string detail;
        if (interior) {
            detail = "interior base point: vacuous";
        } else {
            const ModulusEstimate& sub = modulus(1.5, ModulusKind::kSub);
            const ModulusEstimate& uni = modulus(1.5, ModulusKind::kUniform);
            pass = sub.verdict == Verdict::kZero && uni.verdict == Verdict::kZero;
            detail = "sub=" + describe(sub) + " uniform=" + describe(uni);
        }
        add_check(report, id, "collapse-above-q1", detail, pass);
    }

    // Dual certificate vs the translation-robust modulus at q = 1.
    {
        DualRadii radii;
        radii.delta = 0.2;
        const DualCriterionReport dual =
            dual_modulus(coll, DualKind::kUniformQ1, 1.0, radii, sched);
        const bool dual_pos = dual_criterion_positive(dual);
        const bool primal_pos = property_holds(modulus(1.0, ModulusKind::kUniform));
        add_check(report, id, "dual-uniform-certificate",
                  "dual=" + std::string(dual.infinite ? "inf" : format_g6(dual.infimum)) +
                      " primal=" + describe(modulus(1.0, ModulusKind::kUniform)),
                  dual_pos == primal_pos);
    }

    // Slope chain: the slope estimate stays below the error-bound modulus and
    // its positivity forces the error bound.
    for (double q : {0.5, 1.0}) {
        const ModulusEstimate slope = slope_modulus(coll, q, sched);
        const ModulusEstimate& sub = modulus(q, ModulusKind::kSub);
        const double slack = slope.uncertainty + sub.uncertainty + 0.05;
        bool pass = leq_with_slack(effective(slope), effective(sub), slack);
        if (property_holds(slope) && !property_holds(sub)) pass = false;
        add_check(report, id, "slope-chain q=" + format_g6(q),
                  "slope=" + describe(slope) + " sub=" + describe(sub), pass);
    }

    // Perturbed-normal certificate: positivity across shrinking scales must
    // be matched by the error-bound property.
    for (double q : {0.5, 1.0}) {
        double min_inf = kInf;
        for (const auto& [rho, eps] :
             std::vector<std::pair<double, double>>{{0.05, 0.005}, {0.02, 0.001},
                                                    {0.008, 0.0002}}) {
            DualRadii radii;
            radii.rho = rho;
            radii.eps = eps;
            const DualCriterionReport r =
                dual_modulus(coll, DualKind::kSubregQ, q, radii, sched);
            min_inf = std::min(min_inf, r.infinite ? kInf : r.infimum);
        }
        const bool certified = min_inf >= kDualPositiveThreshold;
        const ModulusEstimate& sub = modulus(q, ModulusKind::kSub);
        const bool pass = !certified || property_holds(sub);
        add_check(report, id, "dual-subreg-chain q=" + format_g6(q),
                  "min-inf=" + format_g6(min_inf) + " sub=" + describe(sub), pass);
    }

    // Product-map restatements.
    {
        const SetValuedMap map = collection_to_map(coll);
        const std::vector<std::pair<ModulusKind, MapModulusKind>> pairs{
            {ModulusKind::kSemi, MapModulusKind::kMapSemi},
            {ModulusKind::kSub, MapModulusKind::kMapSub},
            {ModulusKind::kUniform, MapModulusKind::kMapReg}};
        for (const auto& [ck, mk] : pairs) {
            for (double q : {0.5, 1.0}) {
                const ModulusEstimate& c = modulus(q, ck);
                const MapModulusEstimate m = map_modulus(map, q, mk, sched);
                bool pass;
                if (c.infinite || m.infinite) {
                    pass = c.infinite == m.infinite;
                } else if (c.verdict == Verdict::kZero || m.verdict == Verdict::kZero) {
                    pass = c.verdict == m.verdict;
                } else {
                    const double slack = c.uncertainty + m.uncertainty +
                                         0.03 * std::max(1.0, effective(c));
                    pass = std::abs(effective(c) - effective(m)) <= slack;
                }
                add_check(report, id,
                          std::string("product-map-equality ") + to_string(ck) + "/" +
                              to_string(mk) + " q=" + format_g6(q),
                          "collection=" + describe(c) + " map=" + describe(m), pass);
            }
        }
    }

    if (interior) {
        bool pass = true;
        for (double q : {0.5, 1.0}) {
            for (ModulusKind kind :
                 {ModulusKind::kSemi, ModulusKind::kSub, ModulusKind::kUniform}) {
                const ModulusEstimate& est = modulus(q, kind);
                pass = pass && est.infinite && est.verdict == Verdict::kPositive;
            }
        }
        add_check(report, id, "interior-vacuous", "all moduli flagged infinite", pass);
    }
}

void print_checks(const Report& report, std::ostream& console) {
    for (const CheckRow& c : report.checks) {
        console << (c.pass ? "[PASS] " : "[FAIL] ") << c.collection << ' ' << c.check << ": "
                << c.detail << '\n';
    }
}

void print_goldens(const Report& report, std::ostream& console) {
    for (const GoldenRow& g : report.goldens) {
        console << (g.pass ? "[PASS] " : "[FAIL] ") << g.collection << ' ' << g.quantity
                << " q=" << format_g6(g.q) << " measured=" << g.measured
                << " target=" << g.target << '\n';
    }
}

template <typename Body>
int guarded(std::ostream& console, Body&& body) {
    try {
        return body();
    } catch (const SpecParseError& e) {
        console << "error: " << e.what() << '\n';
        return 2;
    } catch (const SpecSemanticError& e) {
        console << "error: " << e.what() << '\n';
        return 3;
    } catch (const PreconditionError& e) {
        console << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace

int run_reproduce(const RunConfig& cfg, std::ostream& console, Report* report_out) {
    return guarded(console, [&] {
        const SetCollection coll = load_collection(cfg);
        Report report;
        report.config_echo = config_echo(cfg, coll);
        reproduce_collection(coll, cfg.schedule, report);
        print_goldens(report, console);
        return finalize(cfg, report, console, report_out);
    });
}

int run_estimate(const RunConfig& cfg, std::ostream& console, Report* report_out) {
    return guarded(console, [&] {
        const SetCollection coll = load_collection(cfg);
        Report report;
        report.config_echo = config_echo(cfg, coll);
        for (const std::string& kind : cfg.kinds) {
            for (double q : cfg.qs) {
                const auto t0 = std::chrono::steady_clock::now();
                ReportRow row;
                row.collection = coll.name;
                row.q = q;
                row.kind = kind;
                row.seed = cfg.schedule.seed;
                if (kind == "semi" || kind == "sub" || kind == "uniform") {
                    const ModulusKind mk = kind == "semi"   ? ModulusKind::kSemi
                                           : kind == "sub" ? ModulusKind::kSub
                                                           : ModulusKind::kUniform;
                    const ModulusEstimate est = regularity_modulus(coll, q, mk, cfg.schedule);
                    row.method = "primal";
                    row.value = est.value;
                    row.infinite = est.infinite;
                    row.verdict = to_string(est.verdict);
                    row.uncertainty = est.uncertainty;
                } else if (kind == "slope") {
                    const ModulusEstimate est = slope_modulus(coll, q, cfg.schedule);
                    row.method = "slope";
                    row.value = est.value;
                    row.infinite = est.infinite;
                    row.verdict = to_string(est.verdict);
                    row.uncertainty = est.uncertainty;
                } else if (kind == "dual-uniform" || kind == "dual-subreg") {
                    if (kind == "dual-uniform" && q != 1.0) continue;
                    if (kind == "dual-subreg" && q > 1.0) continue;
                    DualRadii radii;
                    const DualCriterionReport r = dual_modulus(
                        coll,
                        kind == "dual-uniform" ? DualKind::kUniformQ1 : DualKind::kSubregQ, q,
                        radii, cfg.schedule);
                    row.method = "dual";
                    row.value = r.infimum;
                    row.infinite = r.infinite;
                    row.verdict = dual_criterion_positive(r) ? "positive" : "zero";
                    row.uncertainty = 0.0;
                } else if (kind == "map-semi" || kind == "map-sub" || kind == "map-reg") {
                    const SetValuedMap map = collection_to_map(coll);
                    const MapModulusKind mk = kind == "map-semi"  ? MapModulusKind::kMapSemi
                                              : kind == "map-sub" ? MapModulusKind::kMapSub
                                                                  : MapModulusKind::kMapReg;
                    const MapModulusEstimate est = map_modulus(map, q, mk, cfg.schedule);
                    row.method = "map";
                    row.value = est.value;
                    row.infinite = est.infinite;
                    row.verdict = to_string(est.verdict);
                    row.uncertainty = est.uncertainty;
                } else {
                    throw SpecParseError("unknown kind '" + kind + "'");
                }
                row.wallclock_ms = elapsed_ms(t0);
                report.rows.push_back(std::move(row));
            }
        }
        console << (cfg.format == "json" ? report.to_json() : report.to_csv());
        return finalize(cfg, report, console, report_out);
    });
}

int run_sweep(const RunConfig& cfg, std::ostream& console, Report* report_out) {
    return guarded(console, [&] {
        const SetCollection coll = load_collection(cfg);
        Report report;
        report.config_echo = config_echo(cfg, coll);
        for (const std::string& kind : cfg.kinds) {
            if (kind != "semi" && kind != "sub" && kind != "uniform") {
                throw SpecParseError("sweep supports the primal kinds only");
            }
            const ModulusKind mk = kind == "semi"   ? ModulusKind::kSemi
                                   : kind == "sub" ? ModulusKind::kSub
                                                   : ModulusKind::kUniform;
            const auto t0 = std::chrono::steady_clock::now();
            const SweepResult sweep = critical_exponent(coll, mk, cfg.q_grid, cfg.schedule);
            const long ms = elapsed_ms(t0);
            for (const SweepEntry& e : sweep.table) {
                ReportRow row;
                row.collection = coll.name;
                row.q = e.q;
                row.kind = kind;
                row.method = "sweep";
                row.value = e.estimate.value;
                row.infinite = e.estimate.infinite;
                row.verdict = to_string(e.estimate.verdict);
                row.uncertainty = e.estimate.uncertainty;
                row.wallclock_ms = ms;
                row.seed = cfg.schedule.seed;
                report.rows.push_back(std::move(row));
            }
            ReportRow crit;
            crit.collection = coll.name;
            crit.q = sweep.critical_q;
            crit.kind = kind;
            crit.method = "critical-q";
            crit.value = sweep.critical_q;
            crit.verdict = sweep.any_holds ? "positive" : "zero";
            crit.wallclock_ms = ms;
            crit.seed = cfg.schedule.seed;
            report.rows.push_back(std::move(crit));
        }
        console << (cfg.format == "json" ? report.to_json() : report.to_csv());
        return finalize(cfg, report, console, report_out);
    });
}

int run_verify(const RunConfig& cfg, std::ostream& console, Report* report_out) {
    return guarded(console, [&] {
        const SetCollection coll = load_collection(cfg);
        Report report;
        report.config_echo = config_echo(cfg, coll);
        verify_collection(coll, cfg.schedule, report);
        print_checks(report, console);
        return finalize(cfg, report, console, report_out);
    });
}

}  // namespace regmod
