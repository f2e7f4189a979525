#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gridcast/eval/backtest.h"
#include "gridcast/forecast/registry.h"
#include "gridcast/scenario/fleet.h"
#include "gridcast/scenario/simulation.h"

namespace gridcast::app {

/// Schema violation. `path` is the dotted field path, e.g. `split.test_days` or `scenarios[1].mode`.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message);
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

enum class DataSource { Synthetic, Csv };

struct DataConfig {
    DataSource source = DataSource::Synthetic;
    /// Synthetic generator settings. For CSV input only `pv` is used (the PV unit profile).
    scenario::SyntheticFleetParams synthetic;
    std::filesystem::path csv_path;
    /// Optional `household_id,existing_pv_kwp,existing_battery_kw`; households not listed have neither.
    std::filesystem::path registry_path;
};

struct RunConfig {
    DataConfig data;
    std::vector<scenario::ScenarioConfig> scenarios;
    std::vector<std::string> estimators;
    /// Scenarios on which SLP is scheduled (it describes metered behaviour only).
    std::vector<std::string> slp_scenarios{"CS"};
    forecast::EstimatorSettings forecast;
    eval::Split split;
    std::uint64_t seed = 1;
    std::size_t replications = 10;
    std::size_t summary_days = 365;
    std::filesystem::path output_dir = "gridcast-out";
    bool plots = true;
    std::size_t threads = 1; ///< backtest workers, 0 = hardware concurrency
};

/// Names that must appear in every config file.
const std::vector<std::string>& required_fields();

/// Relative paths inside the document resolve against `base_dir`.
RunConfig parse_config(const nlohmann::json& document, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Cross-field checks. Called by parse_config and again after command-line overrides.
void validate(const RunConfig& config);

/// Fully expanded config (defaults filled). Output location and worker count are left out because
/// they do not change any result.
nlohmann::json to_json(const RunConfig& config);
/// SHA-256 of the compact dump of to_json.
std::string config_hash(const RunConfig& config);

/// Built-in desk-scale run: 500 households, CS/S1/S2, all six estimators.
RunConfig desk_preset();

} // namespace gridcast::app
