#pragma once

namespace gridcast::twin {

/// Residential battery. Defaults are the median of installed home storage: 7 kW / 10.5 kWh.
struct BatterySpec {
    double power_limit = 7.0; ///< kW, symmetric for charge and discharge
    double capacity = 10.5;   ///< kWh
    double charge_efficiency = 0.95;
    double discharge_efficiency = 0.95;

    friend bool operator==(const BatterySpec&, const BatterySpec&) = default;
};

void validate(const BatterySpec& spec);

struct BatteryState {
    double soc = 0.0; ///< kWh stored
};

struct BatteryStep {
    BatteryState state;
    double grid_power = 0.0; ///< kW; import positive, export negative
    double charge = 0.0;     ///< kW drawn from PV surplus
    double discharge = 0.0;  ///< kW delivered to the household
};

/// Greedy self-consumption rule for one interval of `dt` hours.
/// `residual` is demand minus PV in kW. Surplus charges the battery, deficit discharges it;
/// the battery never exchanges energy with the grid.
BatteryStep battery_step(BatteryState state, double residual, const BatterySpec& spec, double dt = 1.0);

} // namespace gridcast::twin
