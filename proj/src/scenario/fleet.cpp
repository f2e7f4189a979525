#include "gridcast/scenario/fleet.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "gridcast/data/random.h"

namespace gridcast::scenario {

FleetComposition composition_of(const std::vector<RegistryEntry>& registry) {
    FleetComposition c;
    for (const auto& e : registry) {
        if (!e.has_pv()) {
            ++c.no_pv;
        } else if (e.has_battery()) {
            ++c.pv_battery;
        } else {
            ++c.pv_only;
        }
    }
    return c;
}

FleetComposition scale_composition(const FleetComposition& reference, std::size_t households) {
    const std::size_t total = reference.total();
    if (total == 0) {
        throw std::invalid_argument("scale_composition: empty reference composition");
    }
    if (total == households) {
        return reference;
    }
    const std::array<std::size_t, 3> counts{reference.no_pv, reference.pv_only, reference.pv_battery};
    std::array<std::size_t, 3> scaled{};
    std::array<double, 3> remainder{};
    std::size_t assigned = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        const double exact = static_cast<double>(counts[k]) * static_cast<double>(households) / static_cast<double>(total);
        scaled[k] = static_cast<std::size_t>(std::floor(exact));
        remainder[k] = exact - static_cast<double>(scaled[k]);
        assigned += scaled[k];
    }
    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t k = 0; assigned < households; ++k, ++assigned) {
        ++scaled[order[k % 3]];
    }
    return {scaled[0], scaled[1], scaled[2]};
}

Fleet::Fleet(std::vector<RegistryEntry> registry, DemandProvider demand, data::HourlyTimeSeries pv_unit_profile)
    : registry_(std::move(registry)), demand_(std::move(demand)), pv_unit_(std::move(pv_unit_profile)) {
    if (registry_.empty()) {
        throw std::invalid_argument("Fleet: registry is empty");
    }
    if (!demand_) {
        throw std::invalid_argument("Fleet: missing demand provider");
    }
    data::require_nonnegative(pv_unit_, "PV unit profile");
    for (const auto& e : registry_) {
        if (e.has_battery() && !e.has_pv()) {
            throw std::invalid_argument("Fleet: building " + e.id + " has a battery without PV");
        }
    }
}

double Fleet::installed_pv_kwp() const {
    double total = 0.0;
    for (const auto& e : registry_) {
        total += e.existing_pv_kwp;
    }
    return total;
}

double Fleet::installed_battery_kw() const {
    double total = 0.0;
    for (const auto& e : registry_) {
        total += e.existing_battery_kw;
    }
    return total;
}

Fleet make_fleet(std::vector<RegistryEntry> registry, std::vector<data::HourlyTimeSeries> demand,
                 data::HourlyTimeSeries pv_unit_profile) {
    if (registry.size() != demand.size()) {
        throw std::invalid_argument("make_fleet: registry and demand sizes differ");
    }
    auto shared = std::make_shared<std::vector<std::shared_ptr<const data::HourlyTimeSeries>>>();
    shared->reserve(demand.size());
    for (auto& series : demand) {
        data::require_nonnegative(series, "household demand");
        data::require_same_axis(series, pv_unit_profile, "make_fleet");
        shared->push_back(std::make_shared<const data::HourlyTimeSeries>(std::move(series)));
    }
    return Fleet(std::move(registry), [shared](std::size_t i) { return shared->at(i); }, std::move(pv_unit_profile));
}

namespace {

std::vector<double> common_level(const SyntheticFleetParams& p) {
    std::vector<double> out(p.horizon_days, 1.0);
    if (p.common_level_sigma == 0.0) {
        return out;
    }
    const double rho = p.common_level_persistence;
    const double innovation = std::sqrt(1.0 - rho * rho);
    data::Rng rng(data::mix_seed(p.seed ^ 0x6c6576656cULL));
    double z = rng.normal();
    for (std::size_t d = 0; d < out.size(); ++d) {
        if (d > 0) {
            z = rho * z + innovation * rng.normal();
        }
        out[d] = std::exp(p.common_level_sigma * z - 0.5 * p.common_level_sigma * p.common_level_sigma);
    }
    return out;
}

} // namespace

Fleet make_synthetic_fleet(const SyntheticFleetParams& params) {
    if (params.households == 0) {
        throw std::invalid_argument("make_synthetic_fleet: households must be >= 1");
    }
    data::validate(params.demand);
    if (!(params.common_level_sigma >= 0.0) || !(params.common_level_persistence >= 0.0 && params.common_level_persistence < 1.0)) {
        throw std::invalid_argument("make_synthetic_fleet: common level needs sigma >= 0 and persistence in [0, 1)");
    }
    twin::validate(params.battery);
    twin::validate(params.capacity);
    const FleetComposition existing = scale_composition(params.existing, params.households);

    // One seed drives the whole town; template seeds are ignored.
    data::SynthPvParams pv = params.pv;
    pv.seed = data::mix_seed(params.seed ^ 0x7076756e6974ULL);
    auto pv_unit = std::make_shared<const data::HourlyTimeSeries>(
        data::synth_pv_unit_profile(pv, params.horizon_days, params.start));
    auto calendar = std::make_shared<const data::DemandCalendar>(params.start, params.horizon_days);
    auto level = std::make_shared<const std::vector<double>>(common_level(params));

    struct Household {
        data::SynthDemandParams demand;
        double pv_kwp = 0.0;
        bool battery = false;
    };
    auto households = std::make_shared<std::vector<Household>>(params.households);
    std::vector<RegistryEntry> registry(params.households);
    for (std::size_t i = 0; i < params.households; ++i) {
        data::Rng rng(data::household_seed(params.seed, i));
        Household& h = (*households)[i];
        h.demand = params.demand;
        h.demand.mean_daily_energy = params.demand.mean_daily_energy * std::exp(params.daily_energy_sigma_log * rng.normal());
        h.demand.seed = rng.next_u64();
        char id[32];
        std::snprintf(id, sizeof id, "H%05zu", i + 1);
        registry[i].id = id;
    }

    std::vector<std::size_t> order(params.households);
    std::iota(order.begin(), order.end(), 0);
    data::Rng pick(data::mix_seed(params.seed ^ 0x6578697374ULL));
    pick.shuffle(order);
    for (std::size_t k = 0; k < existing.pv_only + existing.pv_battery; ++k) {
        const std::size_t i = order[k];
        Household& h = (*households)[i];
        h.pv_kwp = twin::draw_pv_capacity(params.capacity, pick);
        h.battery = k < existing.pv_battery;
        registry[i].existing_pv_kwp = h.pv_kwp;
        registry[i].existing_battery_kw = h.battery ? params.battery.power_limit : 0.0;
    }

    const twin::BatterySpec battery = params.battery;
    auto provider = [households, calendar, level, pv_unit, battery](std::size_t i) {
        const Household& h = households->at(i);
        data::HourlyTimeSeries gross = data::synth_demand_profile(h.demand, *calendar);
        auto& values = gross.mutable_values();
        for (std::size_t t = 0; t < values.size(); ++t) {
            values[t] *= (*level)[t / data::kHoursPerDay];
        }
        if (h.pv_kwp <= 0.0) {
            return std::make_shared<const data::HourlyTimeSeries>(std::move(gross));
        }
        // A meter behind existing PV records grid import only.
        data::HourlyTimeSeries net = twin::simulate_net_load(
            gross, h.pv_kwp, h.battery ? std::optional<twin::BatterySpec>(battery) : std::nullopt, *pv_unit);
        for (double& v : net.mutable_values()) {
            v = std::max(0.0, v);
        }
        return std::make_shared<const data::HourlyTimeSeries>(std::move(net));
    };
    return Fleet(std::move(registry), provider, *pv_unit);
}

} // namespace gridcast::scenario
