#pragma once

#include <cstdint>
#include <vector>

#include "gridcast/neural/tensor.h"

namespace gridcast::neural {

enum class Activation { Linear, TanH, LeakyReLU };

constexpr double kLeakySlope = 0.01;

double activate(Activation a, double x);
void activate_inplace(Activation a, Matrix& m);
/// d activation / d pre-activation, evaluated at the pre-activation values.
Matrix activation_derivative(Activation a, const Matrix& pre);

// ---------------------------------------------------------------------------
// LSTM: gates stacked as (input, forget, cell candidate, output), each `units` rows.
// ---------------------------------------------------------------------------

struct LstmParams {
    Matrix W; ///< (4 * units) x input_dim
    Matrix U; ///< (4 * units) x units
    Vector b; ///< 4 * units

    LstmParams() = default;
    LstmParams(std::size_t input_dim, std::size_t units);

    std::size_t units() const { return static_cast<std::size_t>(U.cols()); }
    std::size_t input_dim() const { return static_cast<std::size_t>(W.cols()); }
};

struct LstmCache {
    SequenceBatch input;
    Matrix gates;  ///< activated gates, (4 * units) x (steps * batch)
    Matrix cells;  ///< c_t
    Matrix tanh_c; ///< tanh(c_t)
    Matrix hidden; ///< h_t
    std::uint64_t revision = 0;
};

struct LstmGrads {
    Matrix dW;
    Matrix dU;
    Vector db;
    SequenceBatch dx;
};

/// Runs the recurrence from h_0 = c_0 = 0 and returns all hidden states (units x steps*batch).
/// `revision` tags the cache so backward can reject gradients against updated parameters.
const Matrix& lstm_forward(const LstmParams& params, const SequenceBatch& sequence, LstmCache& cache,
                           std::uint64_t revision = 0);

/// Backpropagation through time. `d_hidden` is the loss gradient w.r.t. every hidden state.
LstmGrads lstm_backward(const LstmParams& params, const LstmCache& cache, const Matrix& d_hidden,
                        std::uint64_t revision = 0);

// ---------------------------------------------------------------------------
// Conv1D (valid) + LeakyReLU + non-overlapping max-pool.
// ---------------------------------------------------------------------------

struct ConvParams {
    std::size_t in_channels = 1;
    std::size_t kernel_size = 3;
    std::size_t pool_size = 2;
    Matrix W; ///< filters x (kernel_size * in_channels); column k * in_channels + c is tap k of channel c
    Vector b; ///< filters

    ConvParams() = default;
    ConvParams(std::size_t in_channels, std::size_t filters, std::size_t kernel_size, std::size_t pool_size);

    std::size_t filters() const { return static_cast<std::size_t>(W.rows()); }
    std::size_t output_steps(std::size_t steps) const;
};

struct ConvCache {
    std::size_t input_steps = 0;
    Matrix columns;  ///< im2col, (kernel * in_channels) x (conv_steps * batch)
    Matrix pre;      ///< pre-activation, filters x (conv_steps * batch)
    std::vector<std::uint8_t> argmax; ///< offset inside each pool window, per pooled output element
    std::size_t batch = 0;
    std::uint64_t revision = 0;
};

struct ConvGrads {
    Matrix dW;
    Vector db;
    SequenceBatch dx;
};

SequenceBatch conv1d_maxpool_forward(const ConvParams& params, const SequenceBatch& sequence, ConvCache& cache,
                                     std::uint64_t revision = 0);
ConvGrads conv1d_maxpool_backward(const ConvParams& params, const ConvCache& cache, const SequenceBatch& d_out,
                                  std::uint64_t revision = 0);

// ---------------------------------------------------------------------------
// Dense
// ---------------------------------------------------------------------------

struct DenseParams {
    Matrix W; ///< outputs x inputs
    Vector b;
    Activation activation = Activation::Linear;

    DenseParams() = default;
    DenseParams(std::size_t inputs, std::size_t outputs, Activation activation);
};

struct DenseCache {
    Matrix input;
    Matrix pre;
    std::uint64_t revision = 0;
};

struct DenseGrads {
    Matrix dW;
    Vector db;
    Matrix dx;
};

Matrix dense_forward(const DenseParams& params, const Matrix& input, DenseCache& cache, std::uint64_t revision = 0);
DenseGrads dense_backward(const DenseParams& params, const DenseCache& cache, const Matrix& d_out,
                          std::uint64_t revision = 0);

/// Thrown when backward is asked to differentiate through a cache of different parameters.
class StaleCache : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace gridcast::neural
