#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gridcast/neural/network.h"
#include "gridcast/neural/optim.h"

namespace gridcast::neural {

/// Fixed-length samples stored column-wise. Row t * features + f of `inputs` is feature f at step t.
struct TrainingSet {
    std::size_t features = 1;
    std::size_t steps = 0;
    Matrix inputs;  ///< (steps * features) x samples
    Matrix targets; ///< outputs x samples

    std::size_t size() const { return static_cast<std::size_t>(inputs.cols()); }
    void validate() const;
};

/// Gathers the listed samples into one sequence batch.
SequenceBatch gather_batch(const TrainingSet& set, std::span<const std::size_t> samples);

struct TrainConfig {
    std::size_t epochs = 200;
    std::size_t batch_size = 32;
    AdamConfig adam;
    std::uint64_t seed = 1;
    bool shuffle = true;
    /// Called after every epoch with the sample-weighted mean batch loss.
    std::function<void(std::size_t epoch, double loss)> on_epoch;
};

struct TrainResult {
    double initial_loss = 0.0; ///< full-set loss before the first update
    double final_loss = 0.0;   ///< full-set loss after the last update
    std::vector<double> epoch_loss;
};

class TrainingDiverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mini-batch Adam on the MSE loss. The sample order is reshuffled each epoch with a
/// generator seeded from `config.seed`. Throws TrainingDiverged on a non-finite loss or parameter.
TrainResult train(Network& network, const TrainingSet& set, const TrainConfig& config);

/// Forward pass over all samples in batches; outputs x samples.
Matrix predict(Network& network, const TrainingSet& set, std::size_t batch_size = 256);

double evaluate_loss(Network& network, const TrainingSet& set, std::size_t batch_size = 256);

} // namespace gridcast::neural
