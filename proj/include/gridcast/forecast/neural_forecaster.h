#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gridcast/forecast/windows.h"
#include "gridcast/neural/network.h"
#include "gridcast/neural/train.h"

namespace gridcast::forecast {

struct NeuralForecastConfig {
    std::string name = "LSTM";
    neural::NetworkSpec spec = neural::vanilla_lstm_spec();
    std::size_t lookback = 168;
    neural::TrainConfig train;
    std::uint64_t seed = 1;
};

/// LSTM(100) -> Dense(24), 200 epochs.
NeuralForecastConfig lstm_config(std::uint64_t seed = 1);
/// Conv1D(32, 3) -> MaxPool(2) -> LSTM(200) -> Dense(100, LeakyReLU) -> Dense(24), 50 epochs.
NeuralForecastConfig cnn_lstm_config(std::uint64_t seed = 1);

/// Scaled sliding-window regression onto the next 24 hours. Predictions are inverse-scaled
/// and clipped at 0.
class NeuralForecaster final : public Forecaster {
public:
    explicit NeuralForecaster(NeuralForecastConfig config);

    std::string name() const override { return config_.name; }
    void fit(const HourlyTimeSeries& training) override;
    void fit_dataset(const WindowDataset& dataset);
    DayForecast predict(const HourlyTimeSeries& context) const override;

    const NeuralForecastConfig& config() const { return config_; }
    const neural::Network& network() const;
    const MinMaxScaler& scaler() const { return scaler_; }
    const neural::TrainResult& training_result() const { return result_; }

private:
    NeuralForecastConfig config_;
    std::optional<neural::Network> network_;
    MinMaxScaler scaler_;
    neural::TrainResult result_;
};

NeuralForecaster train_lstm_forecaster(const WindowDataset& dataset, std::uint64_t seed);
NeuralForecaster train_cnn_lstm_forecaster(const WindowDataset& dataset, std::uint64_t seed);

} // namespace gridcast::forecast
