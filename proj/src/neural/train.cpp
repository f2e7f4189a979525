#include "gridcast/neural/train.h"

#include <cmath>
#include <numeric>
#include <string>

#include "gridcast/data/random.h"

namespace gridcast::neural {

namespace {

using Index = Eigen::Index;

bool all_finite(Network& network) {
    for (const auto& p : network.parameters()) {
        if (!p.value.allFinite()) {
            return false;
        }
    }
    return true;
}

} // namespace

void TrainingSet::validate() const {
    if (features == 0 || steps == 0) {
        throw std::invalid_argument("TrainingSet: features and steps must be >= 1");
    }
    if (static_cast<std::size_t>(inputs.rows()) != features * steps) {
        throw std::invalid_argument("TrainingSet: input rows must equal steps * features");
    }
    if (inputs.cols() != targets.cols()) {
        throw std::invalid_argument("TrainingSet: inputs and targets hold different sample counts");
    }
    if (inputs.cols() == 0) {
        throw std::invalid_argument("TrainingSet: no samples");
    }
}

SequenceBatch gather_batch(const TrainingSet& set, std::span<const std::size_t> samples) {
    const std::size_t B = samples.size();
    const Index F = static_cast<Index>(set.features);
    SequenceBatch batch(set.features, set.steps, B);
    Matrix& out = batch.data();
    for (std::size_t t = 0; t < set.steps; ++t) {
        for (std::size_t b = 0; b < B; ++b) {
            out.col(static_cast<Index>(t * B + b)) =
                set.inputs.col(static_cast<Index>(samples[b])).segment(static_cast<Index>(t) * F, F);
        }
    }
    return batch;
}

Matrix predict(Network& network, const TrainingSet& set, std::size_t batch_size) {
    set.validate();
    if (batch_size == 0) {
        throw std::invalid_argument("predict: batch_size must be >= 1");
    }
    Matrix out(static_cast<Index>(network.outputs()), static_cast<Index>(set.size()));
    std::vector<std::size_t> idx;
    for (std::size_t first = 0; first < set.size(); first += batch_size) {
        const std::size_t n = std::min(batch_size, set.size() - first);
        idx.resize(n);
        std::iota(idx.begin(), idx.end(), first);
        out.middleCols(static_cast<Index>(first), static_cast<Index>(n)) = network.forward(gather_batch(set, idx));
    }
    return out;
}

double evaluate_loss(Network& network, const TrainingSet& set, std::size_t batch_size) {
    return mse_loss(predict(network, set, batch_size), set.targets).value;
}

TrainResult train(Network& network, const TrainingSet& set, const TrainConfig& config) {
    set.validate();
    if (config.batch_size == 0) {
        throw std::invalid_argument("train: batch_size must be >= 1");
    }
    if (static_cast<std::size_t>(set.targets.rows()) != network.outputs()) {
        throw std::invalid_argument("train: target rows do not match the network outputs");
    }
    TrainResult result;
    result.initial_loss = evaluate_loss(network, set);
    if (!std::isfinite(result.initial_loss)) {
        throw TrainingDiverged("train: initial loss is not finite");
    }

    data::Rng rng(config.seed);
    AdamState adam(config.adam);
    std::vector<std::size_t> order(set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Matrix target_batch;

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        if (config.shuffle) {
            rng.shuffle(order);
        }
        double weighted = 0.0;
        for (std::size_t first = 0; first < order.size(); first += config.batch_size) {
            const std::size_t n = std::min(config.batch_size, order.size() - first);
            const std::span<const std::size_t> idx(order.data() + first, n);
            target_batch.resize(set.targets.rows(), static_cast<Index>(n));
            for (std::size_t b = 0; b < n; ++b) {
                target_batch.col(static_cast<Index>(b)) = set.targets.col(static_cast<Index>(idx[b]));
            }
            const Loss loss = mse_loss(network.forward(gather_batch(set, idx)), target_batch);
            if (!std::isfinite(loss.value)) {
                throw TrainingDiverged("train: loss became non-finite in epoch " + std::to_string(epoch + 1));
            }
            network.backward(loss.grad);
            auto params = network.parameters();
            adam_update(params, adam);
            network.mark_updated();
            weighted += loss.value * static_cast<double>(n);
        }
        if (!all_finite(network)) {
            throw TrainingDiverged("train: parameters became non-finite in epoch " + std::to_string(epoch + 1));
        }
        const double epoch_loss = weighted / static_cast<double>(set.size());
        result.epoch_loss.push_back(epoch_loss);
        if (config.on_epoch) {
            config.on_epoch(epoch + 1, epoch_loss);
        }
    }
    result.final_loss = evaluate_loss(network, set);
    return result;
}

} // namespace gridcast::neural
