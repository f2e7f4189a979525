#include "gridcast/twin/battery.h"

#include <algorithm>
#include <stdexcept>

namespace gridcast::twin {

void validate(const BatterySpec& spec) {
    if (!(spec.power_limit > 0.0)) {
        throw std::invalid_argument("BatterySpec: power_limit must be > 0");
    }
    if (!(spec.capacity > 0.0)) {
        throw std::invalid_argument("BatterySpec: capacity must be > 0");
    }
    const auto efficiency_ok = [](double eta) { return eta > 0.0 && eta <= 1.0; };
    if (!efficiency_ok(spec.charge_efficiency) || !efficiency_ok(spec.discharge_efficiency)) {
        throw std::invalid_argument("BatterySpec: efficiencies must lie in (0, 1]");
    }
}

BatteryStep battery_step(BatteryState state, double residual, const BatterySpec& spec, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("battery_step: dt must be > 0");
    }
    const double soc = std::clamp(state.soc, 0.0, spec.capacity);
    BatteryStep out;
    if (residual > 0.0) {
        const double d = std::min({spec.power_limit, residual, soc * spec.discharge_efficiency / dt});
        out.discharge = d;
        out.grid_power = residual - d;
        out.state.soc = std::max(0.0, soc - d * dt / spec.discharge_efficiency);
    } else if (residual < 0.0) {
        const double c = std::min({spec.power_limit, -residual, (spec.capacity - soc) / (spec.charge_efficiency * dt)});
        out.charge = c;
        out.grid_power = residual + c;
        out.state.soc = std::min(spec.capacity, soc + spec.charge_efficiency * c * dt);
    } else {
        out.state.soc = soc;
    }
    return out;
}

} // namespace gridcast::twin
