#pragma once

#include "sqz/bloch.hpp"
#include "sqz/coherence.hpp"
#include "sqz/davies.hpp"

#include <json.hpp>

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sqz {

/// Raised for malformed configuration; maps to the CLI usage exit code.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SpectrumSettings {
    double x_min = -10.0; ///< offsets from omega_L
    double x_max = 10.0;
    std::size_t count = 201;
};

struct EvolveSettings {
    std::string initial = "excited"; ///< excited | ground | mixed | x | y | bloch
    BlochState bloch{};              ///< used when initial == "bloch"
    double t_start = 0.0;
    double t_end = 5.0;
    std::size_t samples = 201;
};

struct ScheduleSettings {
    double t_i = 0.0;
    double n = 100.0; ///< measurement count; +inf allowed for timescales
};

struct OracleSettings {
    double Gamma = 1.0;
    std::vector<std::pair<int, double>> davies{{500, 0.04}, {1000, 0.02}, {2000, 0.01}};
    double t_max = 3.0;
    std::size_t time_samples = 601;
    std::size_t dimension_cap = default_davies_dimension_cap;
    std::size_t rate_draws = 5;
    std::uint64_t seed = 20240611;
};

struct OutputSettings {
    std::string path = "-"; ///< "-" is stdout
    std::string format = "csv";
};

struct RunConfig {
    SqueezedVacuumParams bath{1.0, 0.5, std::numbers::pi / 2.0, 10.0};
    DriveParams drive{10.0, 1.0};
    ShiftsSpec shifts{};
    ScheduleSettings schedule{};
    SpectrumSettings spectrum{};
    EvolveSettings evolve{};
    SweepGrid sweep{};
    OracleSettings oracle{};
    OutputSettings output{};
    double tolerance = 1e-9;
    ConditionMode mode = ConditionMode::Derived;
    unsigned threads = 1;
};

nlohmann::json to_json(const RunConfig& config);
/// Missing keys take defaults; unknown keys and wrong types raise ConfigError naming the key.
RunConfig config_from_json(const nlohmann::json& j);

/// Parses either JSON or the INI-style form ("[section]" headers, "key = value").
nlohmann::json parse_config_text(const std::string& text);
nlohmann::json parse_ini(const std::string& text);

/// Applies a dotted override such as "bath.gamma=2" to a config tree.
void apply_override(nlohmann::json& tree, const std::string& assignment);

std::string default_config_help();

} // namespace sqz
