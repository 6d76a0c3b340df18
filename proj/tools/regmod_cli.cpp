#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regmod/run.hpp"

namespace {

void add_common(CLI::App* cmd, regmod::RunConfig& cfg) {
    cmd->add_option("--example", cfg.preset,
                    "built-in collection id (2.1 .. 2.4, halfspaces)");
    cmd->add_option("--spec", cfg.spec_path, "path to a JSON set specification");
    cmd->add_option("--q", cfg.qs, "orders to estimate")->delimiter(',');
    cmd->add_option("--kinds", cfg.kinds,
                    "estimator kinds: semi,sub,uniform,slope,dual-uniform,dual-subreg,"
                    "map-semi,map-sub,map-reg")
        ->delimiter(',');
    cmd->add_option("--q-grid", cfg.q_grid, "sweep grid of orders")->delimiter(',');
    cmd->add_option("--steps", cfg.schedule.steps, "radius schedule length");
    cmd->add_option("--rho0", cfg.schedule.rho0, "initial radius");
    cmd->add_option("--shrink", cfg.schedule.shrink, "radius shrink factor");
    cmd->add_option("--samples", cfg.schedule.samples_per_radius, "samples per radius");
    cmd->add_option("--seed", cfg.schedule.seed, "sampling seed");
    cmd->add_option("--format", cfg.format, "report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", cfg.out_path, "write the report to this path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Holder regularity moduli of set collections and set-valued maps"};
    app.require_subcommand(1);

    regmod::RunConfig cfg;
    CLI::App* reproduce =
        app.add_subcommand("reproduce", "recompute the built-in golden constants");
    CLI::App* estimate = app.add_subcommand("estimate", "run the requested estimators");
    CLI::App* sweep = app.add_subcommand("sweep", "critical-exponent sweep over q");
    CLI::App* verify = app.add_subcommand("verify", "run the cross-validation suite");
    for (CLI::App* cmd : {reproduce, estimate, sweep, verify}) add_common(cmd, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (reproduce->parsed()) return regmod::run_reproduce(cfg, std::cout);
    if (estimate->parsed()) return regmod::run_estimate(cfg, std::cout);
    if (sweep->parsed()) return regmod::run_sweep(cfg, std::cout);
    return regmod::run_verify(cfg, std::cout);
}
