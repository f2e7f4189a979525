#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridcast/neural/layers.h"

namespace gridcast::neural {

struct ConvSpec {
    std::size_t filters = 32;
    std::size_t kernel_size = 3;
    std::size_t pool_size = 2;

    friend bool operator==(const ConvSpec&, const ConvSpec&) = default;
};

struct DenseSpec {
    std::size_t units = 24;
    Activation activation = Activation::Linear;

    friend bool operator==(const DenseSpec&, const DenseSpec&) = default;
};

/// Fixed composition: [Conv1D+pool] -> [LSTM, last hidden state | flatten] -> Dense...
struct NetworkSpec {
    std::size_t input_channels = 1;
    std::size_t input_steps = 168; ///< only used to size the first dense layer when there is no LSTM
    std::optional<ConvSpec> conv;
    std::optional<std::size_t> lstm_units;
    std::vector<DenseSpec> dense;

    friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

/// LSTM(units, tanh) -> Dense(horizon, linear).
NetworkSpec vanilla_lstm_spec(std::size_t units = 100, std::size_t horizon = 24);
/// Conv1D(filters, k, LeakyReLU) -> MaxPool(pool) -> LSTM(units) -> Dense(dense_units, LeakyReLU) -> Dense(horizon).
NetworkSpec cnn_lstm_spec(std::size_t filters = 32, std::size_t kernel = 3, std::size_t pool = 2,
                          std::size_t units = 200, std::size_t dense_units = 100, std::size_t horizon = 24);
/// Flattened input -> Dense(outputs, linear).
NetworkSpec linear_spec(std::size_t input_steps, std::size_t outputs, std::size_t input_channels = 1);

std::string describe(const NetworkSpec& spec);

/// A named parameter with its gradient buffer. Vectors are exposed as single-column matrices.
struct ParamRef {
    std::string name;
    Eigen::Map<Matrix> value;
    Eigen::Map<Matrix> grad;
};

class Network {
public:
    /// Glorot-uniform weights (bound sqrt(6 / (fan_in + fan_out))), zero biases,
    /// LSTM forget-gate bias 1. Deterministic per seed.
    Network(NetworkSpec spec, std::uint64_t seed);

    const NetworkSpec& spec() const { return spec_; }
    std::size_t outputs() const;

    /// Output matrix (outputs x batch).
    Matrix forward(const SequenceBatch& input);
    /// Fills the gradient buffers for the last forward pass. `d_output` is dLoss/dOutput.
    /// Returns the gradient w.r.t. the input sequence.
    SequenceBatch backward(const Matrix& d_output);

    std::vector<ParamRef> parameters();
    std::size_t parameter_count() const;

    /// Bumps the revision; caches from earlier forward passes become stale.
    void mark_updated() { ++revision_; }
    std::uint64_t revision() const { return revision_; }

    const std::optional<LstmParams>& lstm() const { return lstm_; }
    const std::optional<ConvParams>& conv() const { return conv_; }
    const std::vector<DenseParams>& dense() const { return dense_; }

private:
    NetworkSpec spec_;
    std::optional<ConvParams> conv_;
    std::optional<LstmParams> lstm_;
    std::vector<DenseParams> dense_;

    // gradient buffers, same layout as the parameters
    std::optional<ConvParams> conv_grad_;
    std::optional<LstmParams> lstm_grad_;
    std::vector<DenseParams> dense_grad_;

    ConvCache conv_cache_;
    LstmCache lstm_cache_;
    std::vector<DenseCache> dense_cache_;
    std::size_t last_steps_ = 0;
    std::size_t last_batch_ = 0;
    std::uint64_t revision_ = 0;
};

} // namespace gridcast::neural
