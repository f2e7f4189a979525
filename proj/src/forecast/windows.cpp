#include "gridcast/forecast/windows.h"

#include <stdexcept>
#include <string>

namespace gridcast::forecast {

namespace {

DayRange resolve(const HourlyTimeSeries& series, DayRange range) {
    const std::size_t days = series.size() / kHoursPerDay;
    if (range.days == 0 && range.first_day == 0) {
        range.days = days;
    }
    if (range.end_day() > days) {
        throw std::invalid_argument("make_windows: range ends at day " + std::to_string(range.end_day()) +
                                    " but the series has " + std::to_string(days) + " whole days");
    }
    return range;
}

} // namespace

WindowDataset make_windows(const HourlyTimeSeries& series, std::size_t lookback, std::size_t horizon, DayRange range,
                           const MinMaxScaler& scaler) {
    if (lookback == 0 || lookback % kHoursPerDay != 0) {
        throw std::invalid_argument("make_windows: lookback must be a positive multiple of 24 hours");
    }
    if (horizon == 0 || horizon > kHoursPerDay) {
        throw std::invalid_argument("make_windows: horizon must be within [1, 24] hours");
    }
    range = resolve(series, range);
    const std::size_t lookback_days = lookback / kHoursPerDay;
    if (range.days <= lookback_days) {
        throw std::invalid_argument("make_windows: range of " + std::to_string(range.days) +
                                    " days is too short for a lookback of " + std::to_string(lookback_days) + " days");
    }

    WindowDataset ds;
    ds.lookback = lookback;
    ds.horizon = horizon;
    ds.scaler = scaler;
    const std::size_t count = range.days - lookback_days;
    ds.set.features = 1;
    ds.set.steps = lookback;
    ds.set.inputs.resize(static_cast<Eigen::Index>(lookback), static_cast<Eigen::Index>(count));
    ds.set.targets.resize(static_cast<Eigen::Index>(horizon), static_cast<Eigen::Index>(count));
    const auto values = series.values();
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t day = range.first_day + lookback_days + k;
        const std::size_t target_start = day * kHoursPerDay;
        const auto col = static_cast<Eigen::Index>(k);
        for (std::size_t h = 0; h < lookback; ++h) {
            ds.set.inputs(static_cast<Eigen::Index>(h), col) = scaler.apply(values[target_start - lookback + h]);
        }
        for (std::size_t h = 0; h < horizon; ++h) {
            ds.set.targets(static_cast<Eigen::Index>(h), col) = scaler.apply(values[target_start + h]);
        }
        ds.target_days.push_back(day);
    }
    return ds;
}

WindowDataset make_windows(const HourlyTimeSeries& series, std::size_t lookback, std::size_t horizon, DayRange range) {
    range = resolve(series, range);
    const auto values = series.values().subspan(range.first_day * kHoursPerDay, range.days * kHoursPerDay);
    return make_windows(series, lookback, horizon, range, MinMaxScaler::fit(values));
}

} // namespace gridcast::forecast
