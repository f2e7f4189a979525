#pragma once

#include <cstdint>
#include <vector>

#include "gridcast/data/time_series.h"

namespace gridcast::data {

/// Default start of generated horizons: 2019-01-01T00:00:00Z.
Timestamp default_synth_start();

/// Household demand generator: daily shape by day type, annual sinusoid, AR(1) noise, clipped at 0.
struct SynthDemandParams {
    double mean_daily_energy = 10.0; ///< kWh/day, > 0
    double weekday_amplitude = 0.7;  ///< scales the deviation of the daily shape from flat
    double seasonal_amplitude = 0.35; ///< relative amplitude of the annual cycle, winter peak
    double noise_sigma = 0.1;        ///< kW, stationary std-dev of the AR(1) noise
    double noise_persistence = 0.7;  ///< hourly AR(1) coefficient in [0, 1)
    std::uint64_t seed = 1;
};

void validate(const SynthDemandParams& params);

HourlyTimeSeries synth_demand_profile(const SynthDemandParams& params, std::size_t horizon_days,
                                      Timestamp start = default_synth_start());

/// Per-hour shape index and seasonal phase for a horizon, shared by all households on it.
class DemandCalendar {
public:
    DemandCalendar(Timestamp start, std::size_t horizon_days);

    Timestamp start() const { return start_; }
    std::size_t hours() const { return day_type_.size(); }
    std::size_t horizon_days() const { return hours() / kHoursPerDay; }

    std::uint8_t day_type(std::size_t i) const { return day_type_[i]; }
    std::uint8_t hour_of_day(std::size_t i) const { return hour_[i]; }
    /// cos of the annual phase, +1 in mid-January.
    double annual_phase(std::size_t i) const { return annual_[i]; }

private:
    Timestamp start_;
    std::vector<std::uint8_t> day_type_;
    std::vector<std::uint8_t> hour_;
    std::vector<double> annual_;
};

HourlyTimeSeries synth_demand_profile(const SynthDemandParams& params, const DemandCalendar& calendar);

/// Normalized (mean 1) 24-hour shape the generator uses for the given day type index
/// (0 weekday, 1 Saturday, 2 Sunday).
double base_daily_shape(std::size_t day_type, std::size_t hour);

/// Per-kWp PV generation: clear-sky elevation curve times an AR(1) cloud factor.
struct SynthPvParams {
    double latitude = 50.0;          ///< degrees, |latitude| < 66
    double cloud_persistence = 0.9;  ///< hourly AR(1) coefficient of the latent cloud state, [0, 1]
    double cloud_sigma = 1.0;        ///< maximum attenuation by clouds, [0, 1]
    int utc_offset_hours = 0;        ///< local solar noon sits at 12:00 UTC + offset
    std::uint64_t seed = 1;
};

void validate(const SynthPvParams& params);

HourlyTimeSeries synth_pv_unit_profile(const SynthPvParams& params, std::size_t horizon_days,
                                       Timestamp start = default_synth_start());

/// Clear-sky output in kW/kWp for the hour starting at `t` (evaluated at the hour midpoint).
double clear_sky_unit_output(double latitude, Timestamp t, int utc_offset_hours = 0);

} // namespace gridcast::data
