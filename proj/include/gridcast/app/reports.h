#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gridcast/data/profile_csv.h"
#include "gridcast/eval/backtest.h"
#include "gridcast/scenario/simulation.h"

namespace gridcast::app {

struct ScenarioSummaryRow {
    std::string scenario;
    std::size_t replication = 0;
    scenario::SummaryStats stats;
};

/// Replication-0 load of one scenario; this is what the forecasters see.
struct ScenarioLoad {
    std::string scenario;
    scenario::AggregateLoad load;
};

struct RunResults {
    std::vector<ScenarioSummaryRow> summaries;
    std::vector<ScenarioLoad> loads;
    std::vector<eval::BacktestResult> backtests;

    bool empty() const { return summaries.empty() && loads.empty() && backtests.empty(); }
};

/// Estimator every other one is tested against in significance.csv.
inline constexpr const char* kBaselineEstimator = "BM1";

std::string scenario_summary_csv(const std::vector<ScenarioSummaryRow>& rows);
/// Profile CSV with ids `<scenario>/residential_demand` and `<scenario>/grid_load`.
std::string scenario_loads_csv(const std::vector<ScenarioLoad>& loads);
std::string forecasts_csv(const std::vector<eval::BacktestResult>& backtests);
std::string metrics_csv(const std::vector<eval::BacktestResult>& backtests);
std::string per_hour_rmse_csv(const std::vector<eval::BacktestResult>& backtests);
/// Paired t-test of every estimator against the baseline within each scenario.
std::string significance_csv(const std::vector<eval::BacktestResult>& backtests);

/// Inverse of forecasts_csv. Day indices count from the first day of each (estimator, scenario) block.
std::vector<eval::BacktestResult> read_forecasts_csv(std::istream& in);

struct ReportFile {
    std::string name;
    std::string content;
};

/// Every report that `results` has data for, in write order.
std::vector<ReportFile> render_reports(const RunResults& results, bool plots = true);

/// Writes every report that `results` has data for and returns the file names, in write order.
/// Throws std::invalid_argument for empty results.
std::vector<std::string> write_reports(const RunResults& results, const std::filesystem::path& output_dir,
                                       bool plots = true);

} // namespace gridcast::app
