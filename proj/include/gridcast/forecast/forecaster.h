#pragma once

#include <array>
#include <memory>
#include <string>

#include "gridcast/data/time_series.h"

namespace gridcast::forecast {

using data::HourlyTimeSeries;
using data::kHoursPerDay;

using DayValues = std::array<double, kHoursPerDay>;

struct DayForecast {
    DayValues kw{};
    /// Set when the estimator could not fit and returned its fallback forecast.
    bool fallback = false;
};

/// Day-ahead forecaster. Series are indexed in whole days from their start, which
/// must be a midnight. `fit` receives exactly the training days; `predict` receives the
/// history up to (excluding) the first hour of the target day, which is `context.end()`.
/// Passing only the prefix is what keeps predictions free of look-ahead.
class Forecaster {
public:
    virtual ~Forecaster() = default;

    virtual std::string name() const = 0;
    virtual void fit(const HourlyTimeSeries& training) = 0;
    virtual DayForecast predict(const HourlyTimeSeries& context) const = 0;
};

/// Throws std::invalid_argument unless the series covers whole days.
std::size_t whole_days(const HourlyTimeSeries& series, const char* what);

/// Non-finite or negative values are replaced by 0.
void clip_nonnegative(DayValues& values);

} // namespace gridcast::forecast
