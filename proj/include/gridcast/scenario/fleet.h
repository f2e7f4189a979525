#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gridcast/data/synth.h"
#include "gridcast/data/time_series.h"
#include "gridcast/twin/battery.h"
#include "gridcast/twin/building.h"

namespace gridcast::scenario {

/// Components present when the demand was metered. Their effect is already inside the metered series.
struct RegistryEntry {
    std::string id;
    double existing_pv_kwp = 0.0;
    double existing_battery_kw = 0.0; ///< 0 = no battery

    bool has_pv() const { return existing_pv_kwp > 0.0; }
    bool has_battery() const { return existing_battery_kw > 0.0; }
};

/// Counts of (no PV, PV only, PV + battery) buildings.
struct FleetComposition {
    std::size_t no_pv = 0;
    std::size_t pv_only = 0;
    std::size_t pv_battery = 0;

    std::size_t total() const { return no_pv + pv_only + pv_battery; }
    friend bool operator==(const FleetComposition&, const FleetComposition&) = default;
};

FleetComposition composition_of(const std::vector<RegistryEntry>& registry);

/// Scales a composition to `households` buildings with largest-remainder rounding.
FleetComposition scale_composition(const FleetComposition& reference, std::size_t households);

/// Registry plus the metered demand of every building and the town's PV unit profile.
class Fleet {
public:
    using DemandProvider = std::function<std::shared_ptr<const data::HourlyTimeSeries>(std::size_t index)>;

    Fleet(std::vector<RegistryEntry> registry, DemandProvider demand, data::HourlyTimeSeries pv_unit_profile);

    std::size_t size() const { return registry_.size(); }
    const std::vector<RegistryEntry>& registry() const { return registry_; }
    const RegistryEntry& entry(std::size_t index) const { return registry_.at(index); }

    /// Metered demand of building `index` (kW, >= 0).
    std::shared_ptr<const data::HourlyTimeSeries> demand(std::size_t index) const { return demand_(index); }
    const data::HourlyTimeSeries& pv_unit_profile() const { return pv_unit_; }

    double installed_pv_kwp() const;
    double installed_battery_kw() const;

private:
    std::vector<RegistryEntry> registry_;
    DemandProvider demand_;
    data::HourlyTimeSeries pv_unit_;
};

/// In-memory fleet from explicit series (e.g. parsed CSV). Registry and demand are matched by position.
Fleet make_fleet(std::vector<RegistryEntry> registry, std::vector<data::HourlyTimeSeries> demand,
                 data::HourlyTimeSeries pv_unit_profile);

/// Seeded stand-in for a metered town. Household demand is regenerated on request, so memory
/// stays O(horizon) regardless of fleet size.
struct SyntheticFleetParams {
    std::size_t households = 3511;
    std::size_t horizon_days = 1029;
    data::Timestamp start = data::default_synth_start();
    data::SynthDemandParams demand;       ///< template; seed and daily energy are set per household
    double daily_energy_sigma_log = 0.35; ///< household spread of mean daily energy around demand.mean_daily_energy
    /// Town-wide day-to-day demand level (weather, holidays): every household's demand on day d is
    /// multiplied by exp(sigma * z_d - sigma^2 / 2), z_d a unit-variance AR(1) over days.
    double common_level_sigma = 0.2;
    double common_level_persistence = 0.97;
    data::SynthPvParams pv;
    /// Buildings already equipped when metering started (scaled from the reference town if needed).
    FleetComposition existing{3017, 377, 117};
    twin::CapacityModel capacity;
    twin::BatterySpec battery;
    std::uint64_t seed = 2019;
};

Fleet make_synthetic_fleet(const SyntheticFleetParams& params);

} // namespace gridcast::scenario
