#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bohm/config.hpp"
#include "bohm/runner.hpp"
#include "bohm/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"bohmlab: pilot-wave trajectory laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> out_override;
    std::optional<std::size_t> n_override;
    std::optional<int> workers_override;

    auto* run_cmd = app.add_subcommand("run", "execute a scenario from a config file");
    run_cmd->add_option("config", config_path, "path to the config file")->required();
    run_cmd->add_option("--seed", seed_override, "override run.seed");
    run_cmd->add_option("--out", out_override, "override the output directory");
    run_cmd->add_option("--n", n_override, "override the ensemble size");
    run_cmd->add_option("--workers", workers_override, "override the worker count");

    std::string validate_path;
    auto* validate_cmd =
        app.add_subcommand("validate", "parse and validate a config file");
    validate_cmd->add_option("config", validate_path, "path to the config file")
        ->required();

    auto* list_cmd = app.add_subcommand("list", "list available scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (list_cmd->parsed()) {
            for (const auto& s : bohm::list_scenarios())
                std::printf("%-22s %s\n", s.id.c_str(), s.description.c_str());
            return 0;
        }
        if (validate_cmd->parsed()) {
            bohm::parse_config(validate_path);
            std::printf("ok: %s\n", validate_path.c_str());
            return 0;
        }
        bohm::RunConfig cfg = bohm::parse_config(config_path);
        if (seed_override) cfg.seed = *seed_override;
        if (out_override) cfg.out_dir = *out_override;
        if (n_override) cfg.n = *n_override;
        if (workers_override) cfg.workers = *workers_override;
        const int rc = bohm::run(cfg);
        std::printf("%s: %s (report in %s/report.json)\n", cfg.scenario.c_str(),
                    rc == 0 ? "all gates passed" : "GATE FAILURE", cfg.out_dir.c_str());
        return rc;
    } catch (const bohm::ConfigErrors& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const bohm::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
