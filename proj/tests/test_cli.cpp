#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "regmod/run.hpp"
#include "regmod/spec_json.hpp"

using namespace regmod;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = std::string("/tmp/regmod_test_") + name;
    std::ofstream out(path);
    out << text;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(REGMOD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

constexpr const char* kTwoHalfspaces = R"({
  "space": {"dim": 2},
  "sets": [
    {"kind": "halfspace", "normal": [0, 1], "offset": 0},
    {"kind": "halfspace", "normal": [1, 0], "offset": 0}
  ],
  "point": [0, 0]
})";

}  // namespace

TEST_CASE("JSON specs parse into working collections") {
    const SetCollection coll = load_collection_text(kTwoHalfspaces, "inline");
    CHECK(coll.sets.size() == 2);
    CHECK(coll.space.dim == 2);
    CHECK(coll.sets[0].contains({3, 0.5}));

    // Presets expand by name.
    const SetCollection preset =
        load_collection_text(R"({"preset": "example-2.2"})", "inline");
    CHECK(preset.name == "example-2.2");

    // Translate nodes rewrite the base set.
    const SetCollection shifted = load_collection_text(R"({
      "space": {"dim": 2},
      "sets": [
        {"kind": "translate",
         "base": {"kind": "halfspace", "normal": [0, 1], "offset": 0},
         "shift": [0, -0.5]},
        {"kind": "whole_space"}
      ],
      "point": [0, 0.5]
    })",
                                                       "inline");
    CHECK(shifted.sets[0].distance({0, 0}) == doctest::Approx(0.5));

    // Unions and graph kinds, including the coefficient/sign spelling.
    const SetCollection mixed = load_collection_text(R"({
      "space": {"dim": 2},
      "sets": [
        {"kind": "union", "branches": [
           {"kind": "halfspace", "normal": [-1, 0], "offset": 0},
           {"kind": "poly_sublevel", "coefficient": 1, "sign": 1, "relation": "ge"}
        ]},
        {"kind": "poly_graph", "coefficient": 1, "sign": -1}
      ],
      "point": [0, 0]
    })",
                                                     "inline");
    CHECK(mixed.sets[0].contains({-1, -5}));
    CHECK(mixed.sets[1].contains({1, -1}));
}

TEST_CASE("JSON spec error paths") {
    CHECK_THROWS_AS(load_collection_text("{not json", "bad"), SpecParseError);
    CHECK_THROWS_AS(load_collection_text(R"({"sets": [], "point": [0,0]})", "bad"),
                    SpecParseError);
    CHECK_THROWS_AS(
        load_collection_text(
            R"({"space":{"dim":2,"factor_norm":"manhattan"},
                "sets":[{"kind":"whole_space"},{"kind":"whole_space"}],
                "point":[0,0]})",
            "bad"),
        SpecParseError);
    // Semantic failure: base point outside one of the sets.
    CHECK_THROWS_AS(load_collection_text(R"({
        "space": {"dim": 2},
        "sets": [
          {"kind": "halfspace", "normal": [0, 1], "offset": 0},
          {"kind": "halfspace", "normal": [1, 0], "offset": 0}
        ],
        "point": [-1, -1]
      })",
                                         "bad"),
                    SpecSemanticError);
}

TEST_CASE("run_estimate on a spec file") {
    const std::string path = write_temp("twohalf.json", kTwoHalfspaces);
    RunConfig cfg;
    cfg.spec_path = path;
    cfg.qs = {1.0};
    cfg.kinds = {"sub"};
    cfg.schedule.samples_per_radius = 600;
    std::ostringstream console;
    Report report;
    const int code = run_estimate(cfg, console, &report);
    CHECK(code == 0);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.02));
    CHECK(report.rows[0].verdict == "positive");
}

TEST_CASE("exit codes through the run layer") {
    std::ostringstream sink;
    RunConfig bad;
    bad.preset = "example-7.7";
    CHECK(run_estimate(bad, sink) == 2);

    RunConfig malformed;
    malformed.spec_path = write_temp("malformed.json", "{oops");
    CHECK(run_estimate(malformed, sink) == 2);

    RunConfig semantic;
    semantic.spec_path = write_temp("outside.json", R"({
      "space": {"dim": 2},
      "sets": [
        {"kind": "halfspace", "normal": [0, 1], "offset": 0},
        {"kind": "halfspace", "normal": [1, 0], "offset": 0}
      ],
      "point": [-1, -1]
    })");
    CHECK(run_estimate(semantic, sink) == 3);
}

TEST_CASE("CLI binary: exit codes and determinism") {
    // Usage errors exit with 2.
    CHECK(run_cli("reproduce --example nonsense") == 2);
    CHECK(run_cli("frobnicate") == 2);

    const std::string malformed = write_temp("cli_malformed.json", "{oops");
    CHECK(run_cli("estimate --spec " + malformed) == 2);

    const std::string outside = write_temp("cli_outside.json", R"({
      "space": {"dim": 2},
      "sets": [
        {"kind": "halfspace", "normal": [0, 1], "offset": 0},
        {"kind": "halfspace", "normal": [1, 0], "offset": 0}
      ],
      "point": [-1, -1]
    })");
    CHECK(run_cli("estimate --spec " + outside) == 3);

    // A fast reproduce: the halfspace pair at reduced sampling.
    CHECK(run_cli("reproduce --example halfspaces --samples 500") == 0);

    // Byte-identical verify reports for the same seed, via the actual binary.
    const std::string out1 = "/tmp/regmod_test_verify1.csv";
    const std::string out2 = "/tmp/regmod_test_verify2.csv";
    const std::string args = "verify --example halfspaces --samples 400 --seed 42 --out ";
    CHECK(run_cli(args + out1) == 0);
    CHECK(run_cli(args + out2) == 0);
    const std::string a = slurp(out1), b = slurp(out2);
    CHECK(!a.empty());
    CHECK(a == b);
}

TEST_CASE("sweep stays positive below the critical order") {
    RunConfig cfg;
    cfg.preset = "example-2.1";
    cfg.kinds = {"sub"};
    cfg.q_grid = {0.5, 1.0};
    cfg.schedule.samples_per_radius = 500;
    std::ostringstream console;
    Report report;
    CHECK(run_sweep(cfg, console, &report) == 0);
    REQUIRE(report.rows.size() == 3);  // two grid rows plus the critical-q row
    for (const ReportRow& r : report.rows) {
        if (r.method == "sweep") {
            CHECK((r.verdict == "positive" || r.verdict == "divergent"));
        } else {
            CHECK(r.method == "critical-q");
            CHECK(r.value == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("worker count does not change the report bytes") {
    const std::string out1 = "/tmp/regmod_test_threads1.csv";
    const std::string out2 = "/tmp/regmod_test_threads3.csv";
    const std::string tail = " verify --example halfspaces --samples 400 --seed 42 --out ";
    const std::string plain =
        std::string(REGMOD_CLI_PATH) + tail + out1 + " > /dev/null 2>&1";
    const std::string threaded = std::string("REGMOD_THREADS=3 ") + REGMOD_CLI_PATH + tail +
                                 out2 + " > /dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(plain.c_str())) == 0);
    CHECK(WEXITSTATUS(std::system(threaded.c_str())) == 0);
    const std::string a = slurp(out1), b = slurp(out2);
    CHECK(!a.empty());
    CHECK(a == b);
}

TEST_CASE("interior base point verifies vacuously") {
    const std::string path = write_temp("interior.json", R"({
      "space": {"dim": 2},
      "sets": [
        {"kind": "halfspace", "normal": [0, 1], "offset": -1},
        {"kind": "halfspace", "normal": [1, 0], "offset": -1}
      ],
      "point": [0, 0]
    })");
    RunConfig cfg;
    cfg.spec_path = path;
    cfg.schedule.samples_per_radius = 300;
    std::ostringstream console;
    Report report;
    const int code = run_verify(cfg, console, &report);
    CHECK(code == 0);
    bool saw_interior_row = false;
    for (const CheckRow& c : report.checks) {
        saw_interior_row = saw_interior_row || c.check == "interior-vacuous";
        CHECK(c.pass);
    }
    CHECK(saw_interior_row);
}

TEST_CASE("report serialization shapes") {
    Report report;
    report.rows.push_back(
        {"demo", 0.5, "semi", "primal", 0.7071067, false, "positive", 0.001, 12, 42});
    const std::string csv = report.to_csv();
    CHECK(csv.find("collection,q,kind,method,value,verdict,uncertainty,wallclock_ms,seed") !=
          std::string::npos);
    CHECK(csv.find("demo,0.5,semi,primal,0.707107,positive,0.001,12,42") != std::string::npos);
    const std::string json = report.to_json();
    CHECK(json.find("\"verdict\": \"positive\"") != std::string::npos);
    CHECK(format_g6(kInf) == "inf");
    CHECK(format_g6(0.1234567891) == "0.123457");
}
