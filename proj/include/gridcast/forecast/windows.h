#pragma once

#include <vector>

#include "gridcast/forecast/forecaster.h"
#include "gridcast/forecast/scaler.h"
#include "gridcast/neural/train.h"

namespace gridcast::forecast {

struct DayRange {
    std::size_t first_day = 0;
    std::size_t days = 0;

    std::size_t end_day() const { return first_day + days; }
};

/// Sliding windows: one sample per target day d in [first + lookback/24, end), with input
/// hours [24 d - lookback, 24 d) and target hours [24 d, 24 d + horizon), all scaled.
struct WindowDataset {
    std::size_t lookback = 168;
    std::size_t horizon = kHoursPerDay;
    MinMaxScaler scaler;
    neural::TrainingSet set;
    std::vector<std::size_t> target_days;

    std::size_t size() const { return target_days.size(); }
};

/// Throws std::invalid_argument if the lookback is not a positive multiple of 24, the horizon
/// is outside [1, 24], the range leaves the series, or no window fits.
WindowDataset make_windows(const HourlyTimeSeries& series, std::size_t lookback, std::size_t horizon, DayRange range,
                           const MinMaxScaler& scaler);

/// Same, with the scaler fitted on the values inside `range`.
WindowDataset make_windows(const HourlyTimeSeries& series, std::size_t lookback = 168, std::size_t horizon = kHoursPerDay,
                           DayRange range = {});

} // namespace gridcast::forecast
