#ifndef BOHM_CONFIG_HPP
#define BOHM_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bohm {

/// Aggregated configuration failures: parsing reports every problem, not
/// just the first.
class ConfigErrors : public std::runtime_error {
public:
    explicit ConfigErrors(std::vector<std::string> messages)
        : std::runtime_error(join(messages)), messages_(std::move(messages)) {}
    const std::vector<std::string>& messages() const { return messages_; }

private:
    static std::string join(const std::vector<std::string>& m) {
        std::string s = "invalid configuration:";
        for (const auto& e : m) s += "\n  - " + e;
        return s;
    }
    std::vector<std::string> messages_;
};

struct RunConfig {
    std::string scenario;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    std::size_t n = 1000;

    // optional overrides; unset means scenario default
    std::optional<double> dt;
    std::optional<double> t_final;
    std::optional<double> dt_traj;
    std::optional<std::vector<double>> snapshot_times;

    int workers = 0;  // 0 = leave the OpenMP default alone
    bool plot_trajectories = true;
    bool plot_density = true;
    bool plot_histogram = true;
    std::map<std::string, double> tolerance_overrides;
};

/// Strict INI-style parser: [section] headers, key = value lines, '#'
/// comments. Unknown sections or keys are errors; all validation errors are
/// collected and thrown together as ConfigErrors.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin);

} // namespace bohm

#endif
