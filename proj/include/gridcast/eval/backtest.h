#pragma once

#include <array>
#include <string>
#include <vector>

#include "gridcast/eval/metrics.h"
#include "gridcast/forecast/forecaster.h"

namespace gridcast::eval {

using forecast::DayValues;
using forecast::HourlyTimeSeries;

struct Split {
    std::size_t train_days = 664;
    std::size_t test_days = 365;

    std::size_t total_days() const { return train_days + test_days; }
};

struct DayResult {
    std::size_t day = 0; ///< index from the series start
    data::Timestamp start{};
    DayValues predicted{};
    DayValues actual{};
    bool fallback = false;
};

struct BacktestResult {
    std::string estimator;
    std::string scenario;
    std::vector<DayResult> days;

    std::size_t pair_count() const { return days.size() * data::kHoursPerDay; }
    std::vector<double> predicted() const;
    std::vector<double> actual() const;
    /// (predicted - actual)^2 per hour, in time order.
    std::vector<double> squared_errors() const;
    std::size_t fallback_days() const;
};

/// Fits once on days [0, train) and predicts each test day from the history before it.
/// Estimators that refit (ARIMA) do so inside predict on the trailing window.
/// Throws std::invalid_argument when the series is shorter than the split.
BacktestResult backtest(forecast::Forecaster& forecaster, const HourlyTimeSeries& series, Split split = {},
                        std::string scenario = {});

struct MetricReport {
    double rmse = 0.0;
    double mape = 0.0;
    std::size_t mape_excluded = 0;
    std::array<double, data::kHoursPerDay> per_hour_rmse{};
};

/// RMSE over all test days at each hour of the day.
std::array<double, data::kHoursPerDay> unfold_rmse_by_hour(const BacktestResult& result);

MetricReport evaluate(const BacktestResult& result);

/// Paired t-test on the squared hourly errors of two backtests over the same days.
TTestResult compare(const BacktestResult& a, const BacktestResult& b);

} // namespace gridcast::eval
