#include "gridcast/forecast/neural_forecaster.h"

#include <stdexcept>

#include "gridcast/data/random.h"

namespace gridcast::forecast {

NeuralForecastConfig lstm_config(std::uint64_t seed) {
    NeuralForecastConfig c;
    c.name = "LSTM";
    c.spec = neural::vanilla_lstm_spec(100, kHoursPerDay);
    c.train.epochs = 200;
    c.seed = seed;
    return c;
}

NeuralForecastConfig cnn_lstm_config(std::uint64_t seed) {
    NeuralForecastConfig c;
    c.name = "CNN-LSTM";
    c.spec = neural::cnn_lstm_spec(32, 3, 2, 200, 100, kHoursPerDay);
    c.train.epochs = 50;
    c.seed = seed;
    return c;
}

NeuralForecaster::NeuralForecaster(NeuralForecastConfig config) : config_(std::move(config)) {
    if (config_.spec.input_channels != 1 || config_.spec.dense.empty() ||
        config_.spec.dense.back().units != kHoursPerDay) {
        throw std::invalid_argument("NeuralForecaster: network must map one input channel to 24 outputs");
    }
    config_.spec.input_steps = config_.lookback;
}

void NeuralForecaster::fit(const HourlyTimeSeries& training) {
    const std::size_t days = whole_days(training, "NeuralForecaster");
    fit_dataset(make_windows(training, config_.lookback, kHoursPerDay, {0, days}));
}

void NeuralForecaster::fit_dataset(const WindowDataset& dataset) {
    if (dataset.size() == 0) {
        throw std::invalid_argument("NeuralForecaster: empty dataset");
    }
    if (dataset.lookback != config_.lookback || dataset.horizon != kHoursPerDay) {
        throw std::invalid_argument("NeuralForecaster: dataset windows do not match the configured lookback");
    }
    scaler_ = dataset.scaler;
    network_.emplace(config_.spec, config_.seed);
    neural::TrainConfig train = config_.train;
    train.seed = data::mix_seed(config_.seed ^ 0x7261696eULL);
    result_ = neural::train(*network_, dataset.set, train);
}

const neural::Network& NeuralForecaster::network() const {
    if (!network_) {
        throw std::logic_error("NeuralForecaster: not fitted");
    }
    return *network_;
}

DayForecast NeuralForecaster::predict(const HourlyTimeSeries& context) const {
    if (context.size() < config_.lookback) {
        throw std::invalid_argument("NeuralForecaster: history shorter than the lookback");
    }
    // a private copy keeps predict free of shared mutable state
    neural::Network net = network();
    neural::SequenceBatch x(1, config_.lookback, 1);
    const auto tail = context.values().last(config_.lookback);
    for (std::size_t t = 0; t < config_.lookback; ++t) {
        x.data()(0, static_cast<Eigen::Index>(t)) = scaler_.apply(tail[t]);
    }
    const neural::Matrix y = net.forward(x);
    DayForecast out;
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
        out.kw[h] = scaler_.invert(y(static_cast<Eigen::Index>(h), 0));
    }
    clip_nonnegative(out.kw);
    return out;
}

NeuralForecaster train_lstm_forecaster(const WindowDataset& dataset, std::uint64_t seed) {
    NeuralForecastConfig c = lstm_config(seed);
    c.lookback = dataset.lookback;
    NeuralForecaster f(c);
    f.fit_dataset(dataset);
    return f;
}

NeuralForecaster train_cnn_lstm_forecaster(const WindowDataset& dataset, std::uint64_t seed) {
    NeuralForecastConfig c = cnn_lstm_config(seed);
    c.lookback = dataset.lookback;
    NeuralForecaster f(c);
    f.fit_dataset(dataset);
    return f;
}

} // namespace gridcast::forecast
