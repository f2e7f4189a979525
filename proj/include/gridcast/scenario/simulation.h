#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridcast/data/time_series.h"
#include "gridcast/scenario/fleet.h"
#include "gridcast/scenario/retrofit.h"

namespace gridcast::scenario {

/// Streaming sum of building net loads. Memory is O(horizon), independent of fleet size.
class LoadAccumulator {
public:
    LoadAccumulator(data::Timestamp start, std::size_t hours);

    void add(const data::HourlyTimeSeries& net_load);

    std::size_t buildings() const { return count_; }
    /// Signed sum; negative hours are feed-in into upper grid levels.
    data::HourlyTimeSeries grid_load() const;
    /// Sum of per-building import; building-level surplus is clipped before summation.
    data::HourlyTimeSeries residential_demand() const;

private:
    data::Timestamp start_;
    std::vector<double> grid_;
    std::vector<double> demand_;
    std::size_t count_ = 0;
};

struct AggregateLoad {
    data::HourlyTimeSeries grid_load;
    data::HourlyTimeSeries residential_demand;
};

AggregateLoad accumulate(std::span<const data::HourlyTimeSeries> net_loads);

struct SummaryStats {
    double median = 0.0;                 ///< of residential demand, kW
    double std_dev = 0.0;                ///< population std-dev of residential demand, kW
    double negative_hour_fraction = 0.0; ///< share of hours with grid load < 0
};

/// Hours [first_hour, first_hour + hours) of the horizon.
struct SummaryWindow {
    std::size_t first_hour = 0;
    std::size_t hours = 0;
};

SummaryStats summarize(const data::HourlyTimeSeries& grid_load, const data::HourlyTimeSeries& residential_demand,
                       SummaryWindow window);
SummaryStats summarize(const AggregateLoad& load, SummaryWindow window);

/// Last `days` full days of a horizon of `hours` (the whole horizon if shorter).
SummaryWindow trailing_days(std::size_t hours, std::size_t days);

/// Installed totals to reach, given for the reference town and scaled to the simulated fleet.
struct PowerTarget {
    double pv_kw = 0.0;
    double battery_kw = 0.0;
    bool additive = false; ///< true: added on top of the fleet's installed totals
};

/// Regionalization of national expansion targets onto the reference town.
struct Regionalization {
    double national_pv_kw = 345.4e6;
    double national_battery_kw = 67.4e6;
    double pv_ratio = 32.0 / 345400.0;
    double battery_ratio = 15.2 / 67400.0;
};

struct ScenarioConfig {
    std::string name;
    SelectionMode mode = SelectionMode::TargetCount;
    /// TargetCount: composition of the reference town after retrofits; absent = no retrofits.
    std::optional<FleetComposition> composition;
    PowerTarget power;
    std::size_t reference_households = 3511;
    twin::CapacityModel capacity;
    twin::BatterySpec battery;
};

/// Reference-town compositions and targets for "CS", "S1", "S2".
ScenarioConfig scenario_preset(std::string_view name, SelectionMode mode = SelectionMode::TargetCount,
                               const Regionalization& regionalization = {});

std::vector<std::string> preset_names();

/// Resolves `config` against the fleet: scaled counts or absolute power targets.
SelectionRequest selection_request(const ScenarioConfig& config, const Fleet& fleet);

struct ScenarioResult {
    std::string scenario;
    std::size_t replication = 0;
    std::uint64_t seed = 0;
    AggregateLoad load;
    SummaryStats summary;
    FleetComposition composition;
    double installed_pv_kwp = 0.0;
    double installed_battery_kw = 0.0;
};

/// One retrofit draw plus fleet simulation and aggregation.
ScenarioResult run_scenario(const Fleet& fleet, const ScenarioConfig& config, std::uint64_t seed,
                            std::optional<SummaryWindow> window = std::nullopt);

struct ReplicationSet {
    std::vector<ScenarioResult> runs;
    SummaryStats mean;
    SummaryStats std_dev; ///< population std-dev across replications
};

/// Replication k uses seed base_seed + k.
ReplicationSet replicate(const Fleet& fleet, const ScenarioConfig& config, std::size_t n_replications,
                         std::uint64_t base_seed, std::optional<SummaryWindow> window = std::nullopt);

} // namespace gridcast::scenario
