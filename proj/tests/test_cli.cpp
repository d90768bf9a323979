#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <string>

#include "bohm/config.hpp"
#include "bohm/runner.hpp"
#include "bohm/scenario.hpp"

using namespace bohm;

TEST_CASE("a complete config round-trips through the parser") {
    const std::string text =
        "# trajectory run\n"
        "[run]\n"
        "scenario = free_gaussian\n"
        "seed = 99\n"
        "n = 500\n"
        "out = out_dir  # trailing comment\n"
        "workers = 2\n"
        "[propagator]\n"
        "dt = 0.002\n"
        "t_final = 1.5\n"
        "snapshots = 0.5, 1.0, 1.5\n"
        "[ensemble]\n"
        "dt_traj = 0.005\n"
        "[plots]\n"
        "trajectory_fan = true\n"
        "density_map = false\n"
        "histogram = 0\n"
        "[tolerances]\n"
        "ks = 0.05\n";
    const RunConfig cfg = parse_config_text(text, "inline");
    CHECK(cfg.scenario == "free_gaussian");
    CHECK(cfg.seed == 99);
    CHECK(cfg.n == 500);
    CHECK(cfg.out_dir == "out_dir");
    CHECK(cfg.workers == 2);
    REQUIRE(cfg.dt.has_value());
    CHECK(*cfg.dt == 0.002);
    REQUIRE(cfg.t_final.has_value());
    CHECK(*cfg.t_final == 1.5);
    REQUIRE(cfg.snapshot_times.has_value());
    CHECK(cfg.snapshot_times->size() == 3);
    REQUIRE(cfg.dt_traj.has_value());
    CHECK(*cfg.dt_traj == 0.005);
    CHECK(cfg.plot_trajectories);
    CHECK_FALSE(cfg.plot_density);
    CHECK_FALSE(cfg.plot_histogram);
    CHECK(cfg.tolerance_overrides.at("ks") == 0.05);
}

TEST_CASE("the parser collects every problem before throwing") {
    const std::string text =
        "[run]\n"
        "scenario = not_real\n"
        "n = 0\n"
        "typo = 3\n"
        "[nonsense]\n"
        "x = 1\n"
        "[propagator]\n"
        "dt = fast\n";
    try {
        parse_config_text(text, "inline");
        FAIL("expected ConfigErrors");
    } catch (const ConfigErrors& e) {
        const auto& msgs = e.messages();
        CHECK(msgs.size() >= 5);
        auto has = [&](const std::string& needle) {
            return std::any_of(msgs.begin(), msgs.end(), [&](const std::string& m) {
                return m.find(needle) != std::string::npos;
            });
        };
        CHECK(has("unknown scenario"));
        CHECK(has("must be >= 1"));
        CHECK(has("unknown key 'run.typo'"));
        CHECK(has("unknown section [nonsense]"));
        CHECK(has("dt must be a number"));
        CHECK(has("missing required key 'run.seed'"));
        CHECK(std::string(e.what()).find("invalid configuration") != std::string::npos);
    }
}

TEST_CASE("missing scenario and seed are both required") {
    try {
        parse_config_text("[run]\nn = 10\n", "inline");
        FAIL("expected ConfigErrors");
    } catch (const ConfigErrors& e) {
        const auto& msgs = e.messages();
        CHECK(msgs.size() == 2);
        CHECK(msgs[0].find("run.scenario") != std::string::npos);
        CHECK(msgs[1].find("run.seed") != std::string::npos);
    }
}

TEST_CASE("the scenario registry lists defaults and accepts extensions") {
    const auto defaults = list_scenarios();
    CHECK(defaults.size() == 6);
    for (const char* id : {"two_slit", "stationary_universe", "branching_universe",
                           "pointer_measurement", "free_gaussian", "plane_wave"})
        CHECK(scenario_registered(id));
    CHECK_FALSE(scenario_registered("bespoke"));

    register_scenario({"bespoke", "user-registered scenario"});
    CHECK(scenario_registered("bespoke"));
    CHECK(list_scenarios().size() == defaults.size() + 1);
    // a config naming the new scenario now validates
    const RunConfig cfg =
        parse_config_text("[run]\nscenario = bespoke\nseed = 1\n", "inline");
    CHECK(cfg.scenario == "bespoke");

    reset_scenario_registry();
    CHECK(list_scenarios().empty());
    CHECK_FALSE(scenario_registered("two_slit"));
    for (const auto& info : defaults) register_scenario(info);
    CHECK(scenario_registered("two_slit"));
    CHECK(list_scenarios().size() == defaults.size());
}

TEST_CASE("a small plane-wave run writes its report and passes its gates") {
    RunConfig cfg;
    cfg.scenario = "plane_wave";
    cfg.seed = 7;
    cfg.n = 50;
    cfg.out_dir = "test_cli_run_out";
    const int rc = bohm::run(cfg);
    CHECK(rc == 0);
    namespace fs = std::filesystem;
    CHECK(fs::exists(fs::path(cfg.out_dir) / "report.json"));
    CHECK(fs::exists(fs::path(cfg.out_dir) / "trajectories.csv"));
}
