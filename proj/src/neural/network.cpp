#include "gridcast/neural/network.h"

#include <cmath>
#include <sstream>

#include "gridcast/data/random.h"

namespace gridcast::neural {

namespace {

using Index = Eigen::Index;

void glorot_uniform(Matrix& m, std::size_t fan_in, std::size_t fan_out, data::Rng& rng) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (Index c = 0; c < m.cols(); ++c) {
        for (Index r = 0; r < m.rows(); ++r) {
            m(r, c) = rng.uniform(-bound, bound);
        }
    }
}

Eigen::Map<Matrix> as_map(Matrix& m) {
    return {m.data(), m.rows(), m.cols()};
}

Eigen::Map<Matrix> as_map(Vector& v) {
    return {v.data(), v.size(), 1};
}

std::string_view activation_name(Activation a) {
    switch (a) {
    case Activation::Linear: return "linear";
    case Activation::TanH: return "tanh";
    case Activation::LeakyReLU: return "leaky_relu";
    }
    return "?";
}

} // namespace

NetworkSpec vanilla_lstm_spec(std::size_t units, std::size_t horizon) {
    NetworkSpec s;
    s.lstm_units = units;
    s.dense = {{horizon, Activation::Linear}};
    return s;
}

NetworkSpec cnn_lstm_spec(std::size_t filters, std::size_t kernel, std::size_t pool, std::size_t units,
                          std::size_t dense_units, std::size_t horizon) {
    NetworkSpec s;
    s.conv = ConvSpec{filters, kernel, pool};
    s.lstm_units = units;
    s.dense = {{dense_units, Activation::LeakyReLU}, {horizon, Activation::Linear}};
    return s;
}

NetworkSpec linear_spec(std::size_t input_steps, std::size_t outputs, std::size_t input_channels) {
    NetworkSpec s;
    s.input_channels = input_channels;
    s.input_steps = input_steps;
    s.dense = {{outputs, Activation::Linear}};
    return s;
}

std::string describe(const NetworkSpec& spec) {
    std::ostringstream out;
    out << "input(channels=" << spec.input_channels << ")";
    if (spec.conv) {
        out << " -> conv1d(filters=" << spec.conv->filters << ",kernel=" << spec.conv->kernel_size
            << ",leaky_relu) -> maxpool(" << spec.conv->pool_size << ")";
    }
    if (spec.lstm_units) {
        out << " -> lstm(units=" << *spec.lstm_units << ")";
    } else {
        out << " -> flatten(steps=" << spec.input_steps << ")";
    }
    for (const auto& d : spec.dense) {
        out << " -> dense(" << d.units << "," << activation_name(d.activation) << ")";
    }
    return out.str();
}

Network::Network(NetworkSpec spec, std::uint64_t seed) : spec_(std::move(spec)) {
    if (spec_.dense.empty()) {
        throw std::invalid_argument("Network: at least one dense layer is required");
    }
    if (spec_.input_channels == 0) {
        throw std::invalid_argument("Network: input_channels must be >= 1");
    }
    data::Rng rng(seed);
    std::size_t channels = spec_.input_channels;
    if (spec_.conv) {
        conv_.emplace(channels, spec_.conv->filters, spec_.conv->kernel_size, spec_.conv->pool_size);
        glorot_uniform(conv_->W, channels * spec_.conv->kernel_size, spec_.conv->filters * spec_.conv->kernel_size, rng);
        conv_grad_ = *conv_;
        channels = spec_.conv->filters;
    }
    std::size_t features = 0;
    if (spec_.lstm_units) {
        const std::size_t units = *spec_.lstm_units;
        if (units == 0) {
            throw std::invalid_argument("Network: lstm units must be >= 1");
        }
        lstm_.emplace(channels, units);
        glorot_uniform(lstm_->W, channels, 4 * units, rng);
        glorot_uniform(lstm_->U, units, 4 * units, rng);
        lstm_->b.segment(static_cast<Index>(units), static_cast<Index>(units)).setOnes();
        lstm_grad_ = *lstm_;
        features = units;
    } else {
        if (spec_.conv) {
            throw std::invalid_argument("Network: a conv layer must feed an LSTM");
        }
        features = channels * spec_.input_steps;
    }
    for (const auto& d : spec_.dense) {
        DenseParams layer(features, d.units, d.activation);
        glorot_uniform(layer.W, features, d.units, rng);
        dense_.push_back(layer);
        features = d.units;
    }
    dense_grad_ = dense_;
    dense_cache_.resize(dense_.size());
}

std::size_t Network::outputs() const {
    return spec_.dense.back().units;
}

Matrix Network::forward(const SequenceBatch& input) {
    if (input.features() != spec_.input_channels) {
        throw std::invalid_argument("Network::forward: expected " + std::to_string(spec_.input_channels) +
                                    " input channels, got " + std::to_string(input.features()));
    }
    last_steps_ = input.steps();
    last_batch_ = input.batch();
    const Index B = static_cast<Index>(input.batch());

    Matrix features;
    if (lstm_) {
        const Matrix* hidden = nullptr;
        if (conv_) {
            const SequenceBatch pooled = conv1d_maxpool_forward(*conv_, input, conv_cache_, revision_);
            hidden = &lstm_forward(*lstm_, pooled, lstm_cache_, revision_);
        } else {
            hidden = &lstm_forward(*lstm_, input, lstm_cache_, revision_);
        }
        features = hidden->rightCols(B);
    } else {
        if (input.steps() != spec_.input_steps) {
            throw std::invalid_argument("Network::forward: flattening model expects " +
                                        std::to_string(spec_.input_steps) + " steps");
        }
        const Index C = static_cast<Index>(input.features());
        features.resize(C * static_cast<Index>(input.steps()), B);
        for (std::size_t t = 0; t < input.steps(); ++t) {
            features.middleRows(static_cast<Index>(t) * C, C) = input.step(t);
        }
    }
    for (std::size_t k = 0; k < dense_.size(); ++k) {
        features = dense_forward(dense_[k], features, dense_cache_[k], revision_);
    }
    return features;
}

SequenceBatch Network::backward(const Matrix& d_output) {
    Matrix d = d_output;
    for (std::size_t k = dense_.size(); k-- > 0;) {
        DenseGrads g = dense_backward(dense_[k], dense_cache_[k], d, revision_);
        dense_grad_[k].W = std::move(g.dW);
        dense_grad_[k].b = std::move(g.db);
        d = std::move(g.dx);
    }
    const Index B = static_cast<Index>(last_batch_);
    if (!lstm_) {
        const Index C = static_cast<Index>(spec_.input_channels);
        SequenceBatch dx(spec_.input_channels, last_steps_, last_batch_);
        for (std::size_t t = 0; t < last_steps_; ++t) {
            dx.step(t) = d.middleRows(static_cast<Index>(t) * C, C);
        }
        return dx;
    }
    const std::size_t lstm_steps = lstm_cache_.input.steps();
    Matrix d_hidden = Matrix::Zero(static_cast<Index>(lstm_->units()), static_cast<Index>(lstm_steps) * B);
    d_hidden.rightCols(B) = d;
    LstmGrads lg = lstm_backward(*lstm_, lstm_cache_, d_hidden, revision_);
    lstm_grad_->W = std::move(lg.dW);
    lstm_grad_->U = std::move(lg.dU);
    lstm_grad_->b = std::move(lg.db);
    if (!conv_) {
        return std::move(lg.dx);
    }
    ConvGrads cg = conv1d_maxpool_backward(*conv_, conv_cache_, lg.dx, revision_);
    conv_grad_->W = std::move(cg.dW);
    conv_grad_->b = std::move(cg.db);
    return std::move(cg.dx);
}

std::vector<ParamRef> Network::parameters() {
    std::vector<ParamRef> out;
    if (conv_) {
        out.push_back({"conv.W", as_map(conv_->W), as_map(conv_grad_->W)});
        out.push_back({"conv.b", as_map(conv_->b), as_map(conv_grad_->b)});
    }
    if (lstm_) {
        out.push_back({"lstm.W", as_map(lstm_->W), as_map(lstm_grad_->W)});
        out.push_back({"lstm.U", as_map(lstm_->U), as_map(lstm_grad_->U)});
        out.push_back({"lstm.b", as_map(lstm_->b), as_map(lstm_grad_->b)});
    }
    for (std::size_t k = 0; k < dense_.size(); ++k) {
        const std::string prefix = "dense" + std::to_string(k);
        out.push_back({prefix + ".W", as_map(dense_[k].W), as_map(dense_grad_[k].W)});
        out.push_back({prefix + ".b", as_map(dense_[k].b), as_map(dense_grad_[k].b)});
    }
    return out;
}

std::size_t Network::parameter_count() const {
    std::size_t n = 0;
    if (conv_) {
        n += static_cast<std::size_t>(conv_->W.size() + conv_->b.size());
    }
    if (lstm_) {
        n += static_cast<std::size_t>(lstm_->W.size() + lstm_->U.size() + lstm_->b.size());
    }
    for (const auto& d : dense_) {
        n += static_cast<std::size_t>(d.W.size() + d.b.size());
    }
    return n;
}

} // namespace gridcast::neural
