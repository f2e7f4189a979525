#include "gridcast/twin/building.h"

#include <cmath>
#include <stdexcept>

namespace gridcast::twin {

void validate(const Building& building) {
    if (!(building.pv_kwp >= 0.0)) {
        throw std::invalid_argument("building " + building.id + ": pv_kwp must be >= 0");
    }
    if (building.battery) {
        if (!building.has_pv()) {
            throw std::invalid_argument("building " + building.id + ": a battery requires PV");
        }
        validate(*building.battery);
    }
}

void validate(const CapacityModel& m) {
    if (!(m.median_kwp > 0.0) || !(m.sigma_log >= 0.0) || !(m.min_kwp > 0.0) || !(m.max_kwp >= m.min_kwp)) {
        throw std::invalid_argument("CapacityModel: need median > 0, sigma_log >= 0, 0 < min_kwp <= max_kwp");
    }
    if (m.sigma_log == 0.0 && (m.median_kwp < m.min_kwp || m.median_kwp > m.max_kwp)) {
        throw std::invalid_argument("CapacityModel: degenerate median lies outside [min_kwp, max_kwp]");
    }
}

double draw_pv_capacity(const CapacityModel& m, data::Rng& rng) {
    validate(m);
    if (m.sigma_log == 0.0) {
        return m.median_kwp;
    }
    // Rejection keeps the exact truncated distribution; the default window covers about +-2.9 sigma.
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const double kwp = m.median_kwp * std::exp(m.sigma_log * rng.normal());
        if (kwp >= m.min_kwp && kwp <= m.max_kwp) {
            return kwp;
        }
    }
    throw std::runtime_error("CapacityModel: truncation window has negligible probability mass");
}

double assign_pv_capacity(const Building& building, const CapacityModel& model, data::Rng& rng) {
    if (building.has_pv()) {
        throw std::invalid_argument("assign_pv_capacity: building " + building.id + " already has PV");
    }
    return draw_pv_capacity(model, rng);
}

data::HourlyTimeSeries simulate_net_load(const data::HourlyTimeSeries& demand, double pv_kwp,
                                         const std::optional<BatterySpec>& battery,
                                         const data::HourlyTimeSeries& pv_unit_profile) {
    data::require_same_axis(demand, pv_unit_profile, "simulate_building");
    std::vector<double> net(demand.size());
    BatteryState state;
    for (std::size_t t = 0; t < demand.size(); ++t) {
        const double residual = demand[t] - pv_kwp * pv_unit_profile[t];
        if (battery) {
            const BatteryStep step = battery_step(state, residual, *battery);
            state = step.state;
            net[t] = step.grid_power;
        } else {
            net[t] = residual;
        }
    }
    return data::HourlyTimeSeries(demand.start(), std::move(net));
}

DispatchTrace simulate_building(const Building& building, const data::HourlyTimeSeries& pv_unit_profile) {
    validate(building);
    if (!building.demand) {
        throw std::invalid_argument("simulate_building: building " + building.id + " has no demand series");
    }
    const data::HourlyTimeSeries& demand = *building.demand;
    data::require_same_axis(demand, pv_unit_profile, "simulate_building");

    const std::size_t n = demand.size();
    DispatchTrace trace;
    trace.soc.resize(n);
    trace.pv.resize(n);
    trace.charge.assign(n, 0.0);
    trace.discharge.assign(n, 0.0);
    std::vector<double> net(n);
    BatteryState state;
    for (std::size_t t = 0; t < n; ++t) {
        trace.pv[t] = building.pv_kwp * pv_unit_profile[t];
        const double residual = demand[t] - trace.pv[t];
        if (building.battery) {
            const BatteryStep step = battery_step(state, residual, *building.battery);
            state = step.state;
            net[t] = step.grid_power;
            trace.charge[t] = step.charge;
            trace.discharge[t] = step.discharge;
        } else {
            net[t] = residual;
        }
        trace.soc[t] = state.soc;
    }
    trace.net_load = data::HourlyTimeSeries(demand.start(), std::move(net));
    return trace;
}

} // namespace gridcast::twin
