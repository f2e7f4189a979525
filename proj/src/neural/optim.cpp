#include "gridcast/neural/optim.h"

#include <cmath>
#include <stdexcept>

namespace gridcast::neural {

Loss mse_loss(const Matrix& prediction, const Matrix& target) {
    if (prediction.rows() != target.rows() || prediction.cols() != target.cols()) {
        throw std::invalid_argument("mse_loss: prediction and target shapes differ");
    }
    if (prediction.size() == 0) {
        throw std::invalid_argument("mse_loss: empty input");
    }
    const double n = static_cast<double>(prediction.size());
    Loss out;
    Matrix diff = prediction - target;
    out.value = diff.squaredNorm() / n;
    out.grad = (2.0 / n) * diff;
    return out;
}

void adam_update(std::span<ParamRef> params, AdamState& state) {
    if (state.m.empty()) {
        for (const auto& p : params) {
            state.m.push_back(Matrix::Zero(p.value.rows(), p.value.cols()));
            state.v.push_back(Matrix::Zero(p.value.rows(), p.value.cols()));
        }
    }
    if (state.m.size() != params.size()) {
        throw std::invalid_argument("adam_update: parameter count does not match the optimizer state");
    }
    const AdamConfig& c = state.config;
    ++state.step;
    const double t = static_cast<double>(state.step);
    const double correct1 = 1.0 - std::pow(c.beta1, t);
    const double correct2 = 1.0 - std::pow(c.beta2, t);
    for (std::size_t k = 0; k < params.size(); ++k) {
        auto& p = params[k];
        Matrix& m = state.m[k];
        Matrix& v = state.v[k];
        if (m.rows() != p.value.rows() || m.cols() != p.value.cols() || p.grad.rows() != p.value.rows() ||
            p.grad.cols() != p.value.cols()) {
            throw std::invalid_argument("adam_update: shape mismatch for " + p.name);
        }
        m = c.beta1 * m + (1.0 - c.beta1) * p.grad;
        v = c.beta2 * v + (1.0 - c.beta2) * p.grad.cwiseAbs2();
        p.value.array() -= c.learning_rate * (m.array() / correct1) / ((v.array() / correct2).sqrt() + c.epsilon);
    }
}

} // namespace gridcast::neural
