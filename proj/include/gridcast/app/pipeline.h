#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gridcast/app/config.h"
#include "gridcast/app/reports.h"

namespace gridcast::app {

/// Failure inside one pipeline stage (`data`, `scenarios`, `backtests` or `reports`).
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& message);
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

enum class Command { Generate, Simulate, Forecast, Evaluate, Run };

std::string_view command_name(Command c);

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct Artifact {
    std::string file; ///< relative to the output directory
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct RunManifest {
    std::string command;
    std::string config_hash;
    nlohmann::json seeds;
    std::vector<StageTiming> stages;
    std::vector<Artifact> inputs;    ///< files read from the output directory (evaluate)
    std::vector<Artifact> artifacts; ///< every file this command wrote, manifest excluded
    std::string started_at;
    std::string finished_at;
};

nlohmann::json to_json(const RunManifest& manifest);

inline constexpr const char* kManifestFile = "manifest.json";

using Log = std::function<void(const std::string&)>;

// Individual stages, usable on their own.

scenario::Fleet load_fleet(const RunConfig& config);

struct ScenarioStage {
    std::vector<ScenarioSummaryRow> summaries;
    std::vector<ScenarioLoad> loads;
};

/// Replications base_seed, base_seed + 1, ...; replication 0 of each scenario is kept for forecasting.
ScenarioStage simulate_scenarios(const scenario::Fleet& fleet, const RunConfig& config, std::size_t replications);

struct BacktestJob {
    std::string scenario;
    std::string estimator;
};

/// (scenario, estimator) pairs in report order. SLP only appears for the scenarios in slp_scenarios.
std::vector<BacktestJob> schedule_backtests(const RunConfig& config);

/// Runs every scheduled job, `config.threads` at a time. Results come back in schedule order.
std::vector<eval::BacktestResult> run_backtests(const RunConfig& config, const std::vector<ScenarioLoad>& loads,
                                                const Log& log = {});

/// Executes the stages `command` needs, writes its files and the manifest into config.output_dir.
/// Holds the directory lock for the duration. Stage failures surface as StageError.
RunManifest run_command(Command command, const RunConfig& config, const Log& log = {});

/// data -> scenarios -> backtests -> reports.
RunManifest run_pipeline(const RunConfig& config, const Log& log = {});

} // namespace gridcast::app
