#pragma once

#include <span>
#include <string>
#include <vector>

#include "gridcast/forecast/forecaster.h"

namespace gridcast::forecast {

struct ArimaOrder {
    std::size_t p = 2;
    std::size_t d = 1;
    std::size_t q = 2;
};

struct ArimaModel {
    ArimaOrder order;
    double mean = 0.0;              ///< mean of the differenced window
    std::vector<double> ar;         ///< phi_1 .. phi_p
    std::vector<double> ma;         ///< theta_1 .. theta_q
    std::vector<double> innovations; ///< last q residual estimates, oldest first
    bool fallback = false;
    std::string note;
};

struct ArimaForecast {
    std::vector<double> values;
    bool fallback = false;
};

/// Hannan-Rissanen: difference d times and demean, fit a long AR by least squares to
/// estimate the innovations, then regress on p lags of the series and q lags of those
/// innovations. `long_ar_order` 0 picks max(10, p + q). A singular or non-finite regression
/// returns a model flagged as fallback.
/// Throws std::invalid_argument unless the window is longer than p + q + d + 10.
ArimaModel fit_arima(std::span<const double> window, ArimaOrder order = {}, std::size_t long_ar_order = 0);

/// Recursive forecast of `horizon` steps after the end of `window`, integrated d times.
/// Fallback models (and non-finite forecasts) repeat the last observed value.
ArimaForecast forecast_arima(const ArimaModel& model, std::span<const double> window, std::size_t horizon);

/// Refits on the trailing `window_hours` before every target day.
class ArimaForecaster final : public Forecaster {
public:
    explicit ArimaForecaster(ArimaOrder order = {}, std::size_t window_hours = 120);

    std::string name() const override { return "ARIMA"; }
    void fit(const HourlyTimeSeries&) override {}
    DayForecast predict(const HourlyTimeSeries& context) const override;

private:
    ArimaOrder order_;
    std::size_t window_hours_;
};

} // namespace gridcast::forecast
