#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gridcast/data/random.h"
#include "gridcast/data/time_series.h"
#include "gridcast/twin/battery.h"

namespace gridcast::twin {

/// One household as seen by the twin. `pv_kwp` and `battery` describe the components the twin
/// simulates on top of the recorded demand; components already present when the demand was
/// metered are part of that demand.
struct Building {
    std::string id;
    std::shared_ptr<const data::HourlyTimeSeries> demand;
    double pv_kwp = 0.0;
    std::optional<BatterySpec> battery;

    bool has_pv() const { return pv_kwp > 0.0; }
    bool has_battery() const { return battery.has_value(); }
};

/// Throws std::invalid_argument if a battery is present without PV or the spec is invalid.
void validate(const Building& building);

/// Rooftop capacity model: lognormal around `median_kwp`, truncated to [min_kwp, max_kwp].
struct CapacityModel {
    double median_kwp = 9.0;
    double sigma_log = 0.5;
    double min_kwp = 2.0;
    double max_kwp = 30.0;
};

void validate(const CapacityModel& model);

/// Draws a capacity for a building that has no PV yet.
double assign_pv_capacity(const Building& building, const CapacityModel& model, data::Rng& rng);
double draw_pv_capacity(const CapacityModel& model, data::Rng& rng);

struct DispatchTrace {
    data::HourlyTimeSeries net_load; ///< kW; import positive, export negative
    std::vector<double> soc;         ///< kWh at the end of each hour
    std::vector<double> pv;          ///< kW generated
    std::vector<double> charge;      ///< kW into the battery
    std::vector<double> discharge;   ///< kW out of the battery
    double curtailed = 0.0;          ///< no curtailment in this model
};

/// Hourly replay of demand against pv_kwp * unit profile, with the battery rule if present.
/// Initial state of charge is 0.
DispatchTrace simulate_building(const Building& building, const data::HourlyTimeSeries& pv_unit_profile);

/// Net-load only variant used on the hot path of fleet simulation.
data::HourlyTimeSeries simulate_net_load(const data::HourlyTimeSeries& demand, double pv_kwp,
                                         const std::optional<BatterySpec>& battery,
                                         const data::HourlyTimeSeries& pv_unit_profile);

} // namespace gridcast::twin
