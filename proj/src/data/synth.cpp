#include "gridcast/data/synth.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gridcast/data/calendar.h"
#include "gridcast/data/random.h"

namespace gridcast::data {

namespace {

// Raw hourly weights; normalized to mean 1 on first use.
constexpr std::array<std::array<double, 24>, 3> kRawShapes{{
    // weekday: morning peak around 07-08, evening peak around 19
    {0.55, 0.45, 0.42, 0.40, 0.40, 0.45, 0.70, 1.00, 1.05, 0.95, 0.90, 0.95,
     1.10, 1.05, 0.90, 0.85, 0.90, 1.10, 1.45, 1.60, 1.55, 1.40, 1.15, 0.80},
    // saturday
    {0.65, 0.50, 0.45, 0.42, 0.40, 0.42, 0.50, 0.70, 0.95, 1.15, 1.20, 1.25,
     1.30, 1.20, 1.05, 1.00, 1.00, 1.10, 1.35, 1.45, 1.40, 1.30, 1.15, 0.90},
    // sunday
    {0.70, 0.55, 0.48, 0.44, 0.42, 0.42, 0.45, 0.55, 0.80, 1.10, 1.25, 1.40,
     1.50, 1.30, 1.05, 1.00, 1.00, 1.10, 1.30, 1.40, 1.35, 1.25, 1.05, 0.80},
}};

const std::array<std::array<double, 24>, 3>& normalized_shapes() {
    static const auto shapes = [] {
        auto out = kRawShapes;
        for (auto& day : out) {
            double sum = 0.0;
            for (double v : day) {
                sum += v;
            }
            for (double& v : day) {
                v *= 24.0 / sum;
            }
        }
        return out;
    }();
    return shapes;
}

// Standard normal CDF.
double phi(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kPeakUnitOutput = 0.85;
constexpr double kMinElevationDeg = 5.0;

} // namespace

Timestamp default_synth_start() {
    return make_timestamp(2019, 1, 1);
}

double base_daily_shape(std::size_t day_type, std::size_t hour) {
    return normalized_shapes().at(day_type).at(hour);
}

void validate(const SynthDemandParams& p) {
    if (!(p.mean_daily_energy > 0.0)) {
        throw std::invalid_argument("SynthDemandParams: mean_daily_energy must be > 0");
    }
    if (!(p.noise_sigma >= 0.0)) {
        throw std::invalid_argument("SynthDemandParams: noise_sigma must be >= 0");
    }
    if (!(p.noise_persistence >= 0.0 && p.noise_persistence < 1.0)) {
        throw std::invalid_argument("SynthDemandParams: noise_persistence must lie in [0, 1)");
    }
    if (!(p.seasonal_amplitude >= 0.0 && p.seasonal_amplitude < 1.0)) {
        throw std::invalid_argument("SynthDemandParams: seasonal_amplitude must lie in [0, 1)");
    }
    if (!(p.weekday_amplitude >= 0.0)) {
        throw std::invalid_argument("SynthDemandParams: weekday_amplitude must be >= 0");
    }
}

DemandCalendar::DemandCalendar(Timestamp start, std::size_t horizon_days) : start_(start) {
    if (horizon_days == 0) {
        throw std::invalid_argument("DemandCalendar: horizon_days must be >= 1");
    }
    const std::size_t n = horizon_days * kHoursPerDay;
    day_type_.resize(n);
    hour_.resize(n);
    annual_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Timestamp t = start + std::chrono::hours(i);
        const CalendarFeatures cal = calendar_features(t);
        day_type_[i] = static_cast<std::uint8_t>(cal.day_type);
        hour_[i] = static_cast<std::uint8_t>(cal.hour_of_day);
        const double doy = static_cast<double>(day_of_year(t));
        annual_[i] = std::cos(2.0 * std::numbers::pi * (doy - 15.0) / 365.25);
    }
}

HourlyTimeSeries synth_demand_profile(const SynthDemandParams& p, std::size_t horizon_days, Timestamp start) {
    if (horizon_days == 0) {
        throw std::invalid_argument("synth_demand_profile: horizon_days must be >= 1");
    }
    return synth_demand_profile(p, DemandCalendar(start, horizon_days));
}

HourlyTimeSeries synth_demand_profile(const SynthDemandParams& p, const DemandCalendar& calendar) {
    validate(p);
    const auto& shapes = normalized_shapes();
    const std::size_t n = calendar.hours();
    const double hourly_mean = p.mean_daily_energy / 24.0;
    const double innovation = p.noise_sigma * std::sqrt(1.0 - p.noise_persistence * p.noise_persistence);

    Rng rng(p.seed);
    std::vector<double> values(n);
    double noise = p.noise_sigma * rng.normal();
    for (std::size_t i = 0; i < n; ++i) {
        const double shape = 1.0 + p.weekday_amplitude * (shapes[calendar.day_type(i)][calendar.hour_of_day(i)] - 1.0);
        const double seasonal = 1.0 + p.seasonal_amplitude * calendar.annual_phase(i);
        if (i > 0) {
            noise = p.noise_persistence * noise + innovation * rng.normal();
        }
        values[i] = std::max(0.0, hourly_mean * std::max(0.0, shape) * seasonal + noise);
    }
    return HourlyTimeSeries(calendar.start(), std::move(values));
}

void validate(const SynthPvParams& p) {
    if (!(std::abs(p.latitude) < 66.0)) {
        throw std::invalid_argument("SynthPvParams: |latitude| must be < 66 degrees");
    }
    if (!(p.cloud_persistence >= 0.0 && p.cloud_persistence <= 1.0)) {
        throw std::invalid_argument("SynthPvParams: cloud_persistence must lie in [0, 1]");
    }
    if (!(p.cloud_sigma >= 0.0 && p.cloud_sigma <= 1.0)) {
        throw std::invalid_argument("SynthPvParams: cloud_sigma must lie in [0, 1]");
    }
}

double clear_sky_unit_output(double latitude, Timestamp t, int utc_offset_hours) {
    const Timestamp local = t + std::chrono::hours(utc_offset_hours);
    const auto day = std::chrono::floor<std::chrono::days>(local);
    const double hour = static_cast<double>(std::chrono::duration_cast<std::chrono::hours>(local - day).count()) + 0.5;
    const double doy = static_cast<double>(day_of_year(local));

    const double declination = 23.44 * kDegToRad * std::sin(2.0 * std::numbers::pi * (284.0 + doy) / 365.0);
    const double hour_angle = 15.0 * (hour - 12.0) * kDegToRad;
    const double lat = latitude * kDegToRad;
    const double sin_elevation = std::sin(lat) * std::sin(declination) +
                                 std::cos(lat) * std::cos(declination) * std::cos(hour_angle);
    if (sin_elevation <= std::sin(kMinElevationDeg * kDegToRad)) {
        return 0.0;
    }
    return std::min(1.0, kPeakUnitOutput * sin_elevation);
}

HourlyTimeSeries synth_pv_unit_profile(const SynthPvParams& p, std::size_t horizon_days, Timestamp start) {
    validate(p);
    if (horizon_days == 0) {
        throw std::invalid_argument("synth_pv_unit_profile: horizon_days must be >= 1");
    }
    const std::size_t n = horizon_days * kHoursPerDay;
    const double rho = p.cloud_persistence;
    const double innovation = std::sqrt(std::max(0.0, 1.0 - rho * rho));

    Rng rng(p.seed);
    std::vector<double> values(n);
    double latent = rng.normal();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            latent = rho * latent + innovation * rng.normal();
        }
        const double cloud_factor = 1.0 - p.cloud_sigma * phi(latent);
        const double clear = clear_sky_unit_output(p.latitude, start + std::chrono::hours(i), p.utc_offset_hours);
        values[i] = std::clamp(clear * cloud_factor, 0.0, 1.0);
    }
    return HourlyTimeSeries(start, std::move(values));
}

} // namespace gridcast::data
