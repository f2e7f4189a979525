#include "gridcast/forecast/registry.h"

#include <stdexcept>

#include "gridcast/forecast/baselines.h"

namespace gridcast::forecast {

const std::vector<std::string>& estimator_names() {
    static const std::vector<std::string> names{"BM1", "BM2", "SLP", "ARIMA", "LSTM", "CNN-LSTM"};
    return names;
}

std::unique_ptr<Forecaster> make_forecaster(std::string_view name, const EstimatorSettings& s) {
    if (name == "BM1") {
        return std::make_unique<NaiveForecaster>(1);
    }
    if (name == "BM2") {
        return std::make_unique<NaiveForecaster>(7);
    }
    if (name == "SLP") {
        return std::make_unique<SlpForecaster>(s.calendar);
    }
    if (name == "ARIMA") {
        return std::make_unique<ArimaForecaster>(s.arima_order, s.arima_window_hours);
    }
    if (name == "LSTM" || name == "CNN-LSTM") {
        NeuralForecastConfig c = name == "LSTM" ? lstm_config(s.seed) : cnn_lstm_config(s.seed);
        c.lookback = s.lookback;
        c.train.epochs = name == "LSTM" ? s.lstm_epochs : s.cnn_lstm_epochs;
        c.train.batch_size = s.batch_size;
        c.train.adam.learning_rate = s.learning_rate;
        return std::make_unique<NeuralForecaster>(c);
    }
    std::string valid;
    for (const auto& n : estimator_names()) {
        valid += (valid.empty() ? "" : ", ") + n;
    }
    throw std::invalid_argument("unknown estimator '" + std::string(name) + "' (valid: " + valid + ")");
}

} // namespace gridcast::forecast
