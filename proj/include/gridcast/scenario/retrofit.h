#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridcast/data/random.h"
#include "gridcast/scenario/fleet.h"
#include "gridcast/twin/battery.h"
#include "gridcast/twin/building.h"

namespace gridcast::scenario {

/// National value scaled down to the local system. Units are preserved.
double regionalize_target(double national_value, double scaling_ratio);

/// Fleet-wide installed totals to reach, in kW.
struct ExpansionTarget {
    double pv_power_target = 0.0;
    double battery_power_target = 0.0;
};

struct PvAddition {
    std::size_t building = 0; ///< registry index
    double kwp = 0.0;
};

struct PvBatteryAddition {
    std::size_t building = 0;
    double kwp = 0.0;
    twin::BatterySpec battery;
};

struct RetrofitPlan {
    std::vector<PvAddition> pv_only_additions;
    std::vector<PvBatteryAddition> pv_battery_additions;
    std::uint64_t seed = 0;

    bool empty() const { return pv_only_additions.empty() && pv_battery_additions.empty(); }
    double added_pv_kwp() const;
    double added_battery_kw() const;
};

enum class SelectionMode { TargetPower, TargetCount };

/// Number of buildings to retrofit in TargetCount mode.
struct RetrofitCounts {
    std::size_t pv_only = 0;
    std::size_t pv_battery = 0;
};

/// Additions that turn the registry's current composition into `target`.
/// Throws if the target would remove existing installations.
RetrofitCounts counts_for_composition(const std::vector<RegistryEntry>& registry, const FleetComposition& target);

struct SelectionRequest {
    SelectionMode mode = SelectionMode::TargetCount;
    ExpansionTarget target;               ///< used by TargetPower
    std::optional<RetrofitCounts> counts; ///< required by TargetCount
    twin::CapacityModel capacity;
    twin::BatterySpec battery;
};

/// Pool exhausted before a target was met.
class InfeasibleTarget : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Random selection among buildings without PV. TargetPower adds PV plants in shuffled order until
/// the fleet total reaches the PV target, then batteries on a random subset of the new plants until
/// the battery target is reached. TargetCount retrofits exactly the requested numbers.
RetrofitPlan select_retrofits(const std::vector<RegistryEntry>& registry, const SelectionRequest& request,
                              std::uint64_t seed);

/// Composition after applying `plan`.
FleetComposition apply_composition(const std::vector<RegistryEntry>& registry, const RetrofitPlan& plan);

/// Throws std::invalid_argument if a building appears twice or already has PV.
void validate(const RetrofitPlan& plan, const std::vector<RegistryEntry>& registry);

} // namespace gridcast::scenario
