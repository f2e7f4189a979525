#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gridcast/data/calendar.h"
#include "gridcast/forecast/arima.h"
#include "gridcast/forecast/forecaster.h"
#include "gridcast/forecast/neural_forecaster.h"

namespace gridcast::forecast {

/// Names accepted by make_forecaster: BM1, BM2, SLP, ARIMA, LSTM, CNN-LSTM.
const std::vector<std::string>& estimator_names();

struct EstimatorSettings {
    data::CalendarConfig calendar;
    ArimaOrder arima_order;
    std::size_t arima_window_hours = 120;
    std::size_t lookback = 168;
    std::size_t lstm_epochs = 200;
    std::size_t cnn_lstm_epochs = 50;
    std::size_t batch_size = 32;
    double learning_rate = 1e-3;
    std::uint64_t seed = 1;
};

/// Throws std::invalid_argument listing the valid names for an unknown one.
std::unique_ptr<Forecaster> make_forecaster(std::string_view name, const EstimatorSettings& settings = {});

} // namespace gridcast::forecast
