#include "bohm/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "bohm/scenario.hpp"

namespace bohm {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && p == end;
}

bool parse_bool(const std::string& s, bool& out) {
    if (s == "true" || s == "1") { out = true; return true; }
    if (s == "false" || s == "0") { out = false; return true; }
    return false;
}

} // namespace

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigErrors({"cannot read config file: " + path});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::vector<std::string> errors;
    bool seed_seen = false;
    bool scenario_seen = false;

    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    auto err = [&](const std::string& msg) {
        errors.push_back(origin + ":" + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') { err("malformed section header"); continue; }
            section = trim(line.substr(1, line.size() - 2));
            static const char* known[] = {"run", "propagator", "ensemble",
                                          "plots", "tolerances"};
            bool ok = false;
            for (const char* k : known) ok = ok || section == k;
            if (!ok) err("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) { err("expected key = value"); continue; }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) { err("empty key or value"); continue; }

        if (section == "run") {
            if (key == "scenario") { cfg.scenario = value; scenario_seen = true; }
            else if (key == "seed") {
                if (!parse_u64(value, cfg.seed)) err("seed must be a nonnegative integer");
                else seed_seen = true;
            }
            else if (key == "out") cfg.out_dir = value;
            else if (key == "n") {
                std::uint64_t n;
                if (!parse_u64(value, n)) err("n must be a nonnegative integer");
                else cfg.n = static_cast<std::size_t>(n);
            }
            else if (key == "workers") {
                std::uint64_t w;
                if (!parse_u64(value, w)) err("workers must be a nonnegative integer");
                else cfg.workers = static_cast<int>(w);
            }
            else err("unknown key 'run." + key + "'");
        } else if (section == "propagator") {
            double d;
            if (key == "dt") {
                if (parse_double(value, d)) cfg.dt = d; else err("dt must be a number");
            } else if (key == "t_final") {
                if (parse_double(value, d)) cfg.t_final = d;
                else err("t_final must be a number");
            } else if (key == "snapshots") {
                std::vector<double> times;
                std::istringstream vs(value);
                std::string tok;
                bool ok = true;
                while (std::getline(vs, tok, ',')) {
                    double t;
                    if (!parse_double(trim(tok), t)) { ok = false; break; }
                    times.push_back(t);
                }
                if (ok && !times.empty()) cfg.snapshot_times = times;
                else err("snapshots must be a comma-separated number list");
            } else err("unknown key 'propagator." + key + "'");
        } else if (section == "ensemble") {
            double d;
            if (key == "dt_traj") {
                if (parse_double(value, d)) cfg.dt_traj = d;
                else err("dt_traj must be a number");
            } else err("unknown key 'ensemble." + key + "'");
        } else if (section == "plots") {
            bool b;
            if (key == "trajectory_fan") {
                if (parse_bool(value, b)) cfg.plot_trajectories = b;
                else err("expected true/false");
            } else if (key == "density_map") {
                if (parse_bool(value, b)) cfg.plot_density = b;
                else err("expected true/false");
            } else if (key == "histogram") {
                if (parse_bool(value, b)) cfg.plot_histogram = b;
                else err("expected true/false");
            } else err("unknown key 'plots." + key + "'");
        } else if (section == "tolerances") {
            static const char* known_tol[] = {
                "eigen_residual", "y_deviation", "projective_distance",
                "ks", "fringe_contrast", "spectral_difference",
                "bilinearity", "unitarity", "velocity_error",
                "trajectory_error", "branch_widths"};
            bool ok = false;
            for (const char* k : known_tol) ok = ok || key == k;
            double d;
            if (!ok) err("unknown key 'tolerances." + key + "'");
            else if (!parse_double(value, d)) err("tolerance must be a number");
            else cfg.tolerance_overrides[key] = d;
        } else {
            err("key outside of any section");
        }
    }

    if (!scenario_seen) errors.push_back(origin + ": missing required key 'run.scenario'");
    else if (!scenario_registered(cfg.scenario))
        errors.push_back(origin + ": unknown scenario '" + cfg.scenario + "'");
    if (!seed_seen) errors.push_back(origin + ": missing required key 'run.seed'");
    if (cfg.n < 1) errors.push_back(origin + ": ensemble size must be >= 1");
    if (cfg.dt && *cfg.dt == 0.0) errors.push_back(origin + ": dt must be nonzero");
    if (cfg.dt_traj && *cfg.dt_traj <= 0.0)
        errors.push_back(origin + ": dt_traj must be positive");

    if (!errors.empty()) throw ConfigErrors(std::move(errors));
    return cfg;
}

} // namespace bohm
