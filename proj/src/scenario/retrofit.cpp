#include "gridcast/scenario/retrofit.h"

#include <stdexcept>

namespace gridcast::scenario {

double regionalize_target(double national_value, double scaling_ratio) {
    if (!(scaling_ratio >= 0.0)) {
        throw std::invalid_argument("regionalize_target: scaling_ratio must be >= 0");
    }
    return national_value * scaling_ratio;
}

double RetrofitPlan::added_pv_kwp() const {
    double total = 0.0;
    for (const auto& a : pv_only_additions) {
        total += a.kwp;
    }
    for (const auto& a : pv_battery_additions) {
        total += a.kwp;
    }
    return total;
}

double RetrofitPlan::added_battery_kw() const {
    double total = 0.0;
    for (const auto& a : pv_battery_additions) {
        total += a.battery.power_limit;
    }
    return total;
}

RetrofitCounts counts_for_composition(const std::vector<RegistryEntry>& registry, const FleetComposition& target) {
    const FleetComposition current = composition_of(registry);
    if (target.total() != current.total()) {
        throw std::invalid_argument("target composition covers " + std::to_string(target.total()) +
                                    " buildings, registry has " + std::to_string(current.total()));
    }
    if (target.pv_only < current.pv_only || target.pv_battery < current.pv_battery) {
        throw std::invalid_argument("target composition would remove existing PV or battery installations");
    }
    return {target.pv_only - current.pv_only, target.pv_battery - current.pv_battery};
}

RetrofitPlan select_retrofits(const std::vector<RegistryEntry>& registry, const SelectionRequest& request,
                              std::uint64_t seed) {
    twin::validate(request.battery);
    twin::validate(request.capacity);

    std::vector<std::size_t> eligible;
    double fleet_pv = 0.0;
    double fleet_battery = 0.0;
    for (std::size_t i = 0; i < registry.size(); ++i) {
        fleet_pv += registry[i].existing_pv_kwp;
        fleet_battery += registry[i].existing_battery_kw;
        if (!registry[i].has_pv()) {
            eligible.push_back(i);
        }
    }

    data::Rng rng(seed);
    rng.shuffle(eligible);

    RetrofitPlan plan;
    plan.seed = seed;
    if (request.mode == SelectionMode::TargetCount) {
        if (!request.counts) {
            throw std::invalid_argument("select_retrofits: TargetCount mode requires counts");
        }
        const RetrofitCounts c = *request.counts;
        if (c.pv_only + c.pv_battery > eligible.size()) {
            throw InfeasibleTarget("select_retrofits: " + std::to_string(c.pv_only + c.pv_battery) +
                                   " retrofits requested but only " + std::to_string(eligible.size()) +
                                   " buildings lack PV");
        }
        std::size_t k = 0;
        for (; k < c.pv_battery; ++k) {
            plan.pv_battery_additions.push_back(
                {eligible[k], twin::draw_pv_capacity(request.capacity, rng), request.battery});
        }
        for (; k < c.pv_battery + c.pv_only; ++k) {
            plan.pv_only_additions.push_back({eligible[k], twin::draw_pv_capacity(request.capacity, rng)});
        }
        return plan;
    }

    std::vector<PvAddition> new_pv;
    std::size_t next = 0;
    while (fleet_pv < request.target.pv_power_target) {
        if (next == eligible.size()) {
            throw InfeasibleTarget("select_retrofits: PV target " + std::to_string(request.target.pv_power_target) +
                                   " kW unreachable; pool exhausted at " + std::to_string(fleet_pv) + " kW");
        }
        const double kwp = twin::draw_pv_capacity(request.capacity, rng);
        new_pv.push_back({eligible[next++], kwp});
        fleet_pv += kwp;
    }

    // Batteries go to a random subset of the new plants.
    rng.shuffle(new_pv);
    std::size_t with_battery = 0;
    while (fleet_battery < request.target.battery_power_target) {
        if (with_battery == new_pv.size()) {
            throw InfeasibleTarget("select_retrofits: battery target " +
                                   std::to_string(request.target.battery_power_target) +
                                   " kW unreachable; only " + std::to_string(new_pv.size()) + " new PV plants");
        }
        fleet_battery += request.battery.power_limit;
        ++with_battery;
    }
    for (std::size_t k = 0; k < new_pv.size(); ++k) {
        if (k < with_battery) {
            plan.pv_battery_additions.push_back({new_pv[k].building, new_pv[k].kwp, request.battery});
        } else {
            plan.pv_only_additions.push_back(new_pv[k]);
        }
    }
    return plan;
}

FleetComposition apply_composition(const std::vector<RegistryEntry>& registry, const RetrofitPlan& plan) {
    validate(plan, registry);
    FleetComposition c = composition_of(registry);
    c.no_pv -= plan.pv_only_additions.size() + plan.pv_battery_additions.size();
    c.pv_only += plan.pv_only_additions.size();
    c.pv_battery += plan.pv_battery_additions.size();
    return c;
}

void validate(const RetrofitPlan& plan, const std::vector<RegistryEntry>& registry) {
    std::vector<bool> seen(registry.size(), false);
    const auto check = [&](std::size_t i) {
        if (i >= registry.size()) {
            throw std::invalid_argument("retrofit plan references unknown building index " + std::to_string(i));
        }
        if (seen[i]) {
            throw std::invalid_argument("building " + registry[i].id + " appears twice in the retrofit plan");
        }
        if (registry[i].has_pv()) {
            throw std::invalid_argument("building " + registry[i].id + " already has PV");
        }
        seen[i] = true;
    };
    for (const auto& a : plan.pv_only_additions) {
        check(a.building);
    }
    for (const auto& a : plan.pv_battery_additions) {
        check(a.building);
    }
}

} // namespace gridcast::scenario
