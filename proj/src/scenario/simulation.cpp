#include "gridcast/scenario/simulation.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gridcast/twin/building.h"

namespace gridcast::scenario {

namespace {

// Table I of the reference town (3511 residential buildings).
constexpr FleetComposition kScenarioS1{189, 1179, 2143};
constexpr FleetComposition kScenarioS2{1328, 888, 1295};

double median_of(std::vector<double> values) {
    const std::size_t n = values.size();
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (n % 2 == 1) {
        return *mid;
    }
    const double upper = *mid;
    const double lower = *std::max_element(values.begin(), mid);
    return 0.5 * (lower + upper);
}

} // namespace

LoadAccumulator::LoadAccumulator(data::Timestamp start, std::size_t hours)
    : start_(start), grid_(hours, 0.0), demand_(hours, 0.0) {
    if (hours == 0) {
        throw std::invalid_argument("LoadAccumulator: empty horizon");
    }
}

void LoadAccumulator::add(const data::HourlyTimeSeries& net_load) {
    if (net_load.start() != start_ || net_load.size() != grid_.size()) {
        throw std::invalid_argument("accumulate: horizon mismatch for building " + std::to_string(count_));
    }
    const auto values = net_load.values();
    for (std::size_t t = 0; t < grid_.size(); ++t) {
        grid_[t] += values[t];
        demand_[t] += std::max(0.0, values[t]);
    }
    ++count_;
}

data::HourlyTimeSeries LoadAccumulator::grid_load() const {
    return data::HourlyTimeSeries(start_, grid_);
}

data::HourlyTimeSeries LoadAccumulator::residential_demand() const {
    return data::HourlyTimeSeries(start_, demand_);
}

AggregateLoad accumulate(std::span<const data::HourlyTimeSeries> net_loads) {
    if (net_loads.empty()) {
        throw std::invalid_argument("accumulate: no buildings");
    }
    LoadAccumulator acc(net_loads.front().start(), net_loads.front().size());
    for (const auto& series : net_loads) {
        acc.add(series);
    }
    return {acc.grid_load(), acc.residential_demand()};
}

SummaryStats summarize(const data::HourlyTimeSeries& grid_load, const data::HourlyTimeSeries& residential_demand,
                       SummaryWindow window) {
    data::require_same_axis(grid_load, residential_demand, "summarize");
    if (window.hours == 0) {
        throw std::invalid_argument("summarize: empty window");
    }
    if (window.first_hour + window.hours > grid_load.size()) {
        throw std::invalid_argument("summarize: window exceeds the horizon");
    }
    const auto first = static_cast<std::ptrdiff_t>(window.first_hour);
    const auto last = first + static_cast<std::ptrdiff_t>(window.hours);
    const auto demand = residential_demand.values();
    std::vector<double> slice(demand.begin() + first, demand.begin() + last);

    double mean = 0.0;
    for (double v : slice) {
        mean += v;
    }
    mean /= static_cast<double>(slice.size());
    double ss = 0.0;
    for (double v : slice) {
        ss += (v - mean) * (v - mean);
    }

    std::size_t negative = 0;
    const auto grid = grid_load.values();
    for (auto i = first; i < last; ++i) {
        if (grid[static_cast<std::size_t>(i)] < 0.0) {
            ++negative;
        }
    }

    SummaryStats s;
    s.std_dev = std::sqrt(ss / static_cast<double>(slice.size()));
    s.negative_hour_fraction = static_cast<double>(negative) / static_cast<double>(window.hours);
    s.median = median_of(std::move(slice));
    return s;
}

SummaryStats summarize(const AggregateLoad& load, SummaryWindow window) {
    return summarize(load.grid_load, load.residential_demand, window);
}

SummaryWindow trailing_days(std::size_t hours, std::size_t days) {
    const std::size_t span = std::min(hours, days * data::kHoursPerDay);
    return {hours - span, span};
}

ScenarioConfig scenario_preset(std::string_view name, SelectionMode mode, const Regionalization& r) {
    ScenarioConfig c;
    c.name = std::string(name);
    c.mode = mode;
    if (name == "CS") {
        // Metered state: nothing is retrofitted.
        c.composition = std::nullopt;
        c.power = {0.0, 0.0, true};
    } else if (name == "S1") {
        c.composition = kScenarioS1;
        c.power = {regionalize_target(r.national_pv_kw, r.pv_ratio),
                   regionalize_target(r.national_battery_kw, r.battery_ratio), false};
    } else if (name == "S2") {
        // Linear extrapolation of the development to date: +19 MW PV, +8.8 MW battery.
        c.composition = kScenarioS2;
        c.power = {19000.0, 8800.0, true};
    } else {
        throw std::invalid_argument("unknown scenario preset '" + std::string(name) + "' (valid: CS, S1, S2)");
    }
    return c;
}

std::vector<std::string> preset_names() {
    return {"CS", "S1", "S2"};
}

SelectionRequest selection_request(const ScenarioConfig& config, const Fleet& fleet) {
    SelectionRequest req;
    req.mode = config.mode;
    req.capacity = config.capacity;
    req.battery = config.battery;
    if (config.mode == SelectionMode::TargetCount) {
        if (!config.composition) {
            req.counts = RetrofitCounts{};
        } else {
            const FleetComposition scaled = scale_composition(*config.composition, fleet.size());
            req.counts = counts_for_composition(fleet.registry(), scaled);
        }
        return req;
    }
    if (config.reference_households == 0) {
        throw std::invalid_argument("scenario " + config.name + ": reference_households must be >= 1");
    }
    const double scale = static_cast<double>(fleet.size()) / static_cast<double>(config.reference_households);
    const double pv = config.power.pv_kw * scale;
    const double battery = config.power.battery_kw * scale;
    if (config.power.additive) {
        req.target = {fleet.installed_pv_kwp() + pv, fleet.installed_battery_kw() + battery};
    } else {
        req.target = {pv, battery};
    }
    return req;
}

ScenarioResult run_scenario(const Fleet& fleet, const ScenarioConfig& config, std::uint64_t seed,
                            std::optional<SummaryWindow> window) {
    const SelectionRequest request = selection_request(config, fleet);
    const RetrofitPlan plan = select_retrofits(fleet.registry(), request, seed);
    validate(plan, fleet.registry());

    struct Added {
        double kwp = 0.0;
        std::optional<twin::BatterySpec> battery;
    };
    std::vector<std::optional<Added>> added(fleet.size());
    for (const auto& a : plan.pv_only_additions) {
        added[a.building] = Added{a.kwp, std::nullopt};
    }
    for (const auto& a : plan.pv_battery_additions) {
        added[a.building] = Added{a.kwp, a.battery};
    }

    const data::HourlyTimeSeries& pv_unit = fleet.pv_unit_profile();
    LoadAccumulator acc(pv_unit.start(), pv_unit.size());
    for (std::size_t i = 0; i < fleet.size(); ++i) {
        const auto demand = fleet.demand(i);
        if (added[i]) {
            acc.add(twin::simulate_net_load(*demand, added[i]->kwp, added[i]->battery, pv_unit));
        } else {
            acc.add(*demand);
        }
    }

    ScenarioResult result;
    result.scenario = config.name;
    result.seed = seed;
    result.load = {acc.grid_load(), acc.residential_demand()};
    result.summary = summarize(result.load, window.value_or(SummaryWindow{0, pv_unit.size()}));
    result.composition = apply_composition(fleet.registry(), plan);
    result.installed_pv_kwp = fleet.installed_pv_kwp() + plan.added_pv_kwp();
    result.installed_battery_kw = fleet.installed_battery_kw() + plan.added_battery_kw();
    return result;
}

ReplicationSet replicate(const Fleet& fleet, const ScenarioConfig& config, std::size_t n_replications,
                         std::uint64_t base_seed, std::optional<SummaryWindow> window) {
    if (n_replications == 0) {
        throw std::invalid_argument("replicate: n_replications must be >= 1");
    }
    ReplicationSet set;
    set.runs.reserve(n_replications);
    for (std::size_t k = 0; k < n_replications; ++k) {
        ScenarioResult r = run_scenario(fleet, config, base_seed + k, window);
        r.replication = k;
        set.runs.push_back(std::move(r));
    }

    const auto n = static_cast<double>(n_replications);
    for (const auto& r : set.runs) {
        set.mean.median += r.summary.median / n;
        set.mean.std_dev += r.summary.std_dev / n;
        set.mean.negative_hour_fraction += r.summary.negative_hour_fraction / n;
    }
    for (const auto& r : set.runs) {
        const auto sq = [](double x) { return x * x; };
        set.std_dev.median += sq(r.summary.median - set.mean.median) / n;
        set.std_dev.std_dev += sq(r.summary.std_dev - set.mean.std_dev) / n;
        set.std_dev.negative_hour_fraction += sq(r.summary.negative_hour_fraction - set.mean.negative_hour_fraction) / n;
    }
    set.std_dev.median = std::sqrt(set.std_dev.median);
    set.std_dev.std_dev = std::sqrt(set.std_dev.std_dev);
    set.std_dev.negative_hour_fraction = std::sqrt(set.std_dev.negative_hour_fraction);
    return set;
}

} // namespace gridcast::scenario
