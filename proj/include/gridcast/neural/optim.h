#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gridcast/neural/network.h"

namespace gridcast::neural {

struct Loss {
    double value = 0.0;
    Matrix grad; ///< d loss / d prediction
};

/// Mean squared error over every element; gradient 2 (prediction - target) / N.
Loss mse_loss(const Matrix& prediction, const Matrix& target);

struct AdamConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct AdamState {
    AdamConfig config;
    std::vector<Matrix> m;
    std::vector<Matrix> v;
    std::uint64_t step = 0;

    AdamState() = default;
    explicit AdamState(AdamConfig c) : config(c) {}
};

/// One Adam step over every parameter using the gradients stored next to it.
/// Moments are zero-initialised on the first call.
void adam_update(std::span<ParamRef> params, AdamState& state);

} // namespace gridcast::neural
