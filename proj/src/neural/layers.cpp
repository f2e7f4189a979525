#include "gridcast/neural/layers.h"

#include <cmath>
#include <string>

namespace gridcast::neural {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t v) {
    return static_cast<Index>(v);
}

// Both written through exp so Eigen vectorizes them.
template <class Block>
void sigmoid_inplace(Block&& m) {
    m = (1.0 + (-m.array()).exp()).inverse().matrix();
}

template <class Block>
void tanh_inplace(Block&& m) {
    m = (2.0 * (1.0 + (-2.0 * m.array()).exp()).inverse() - 1.0).matrix();
}

void check_revision(std::uint64_t cached, std::uint64_t current, const char* layer) {
    if (cached != current) {
        throw StaleCache(std::string(layer) + " backward: cache was produced with revision " + std::to_string(cached) +
                         ", parameters are at revision " + std::to_string(current));
    }
}

} // namespace

double activate(Activation a, double x) {
    switch (a) {
    case Activation::Linear: return x;
    case Activation::TanH: return std::tanh(x);
    case Activation::LeakyReLU: return x >= 0.0 ? x : kLeakySlope * x;
    }
    return x;
}

void activate_inplace(Activation a, Matrix& m) {
    switch (a) {
    case Activation::Linear: return;
    case Activation::TanH: tanh_inplace(m); return;
    case Activation::LeakyReLU: m = m.cwiseMax(kLeakySlope * m); return;
    }
}

Matrix activation_derivative(Activation a, const Matrix& pre) {
    switch (a) {
    case Activation::Linear: return Matrix::Ones(pre.rows(), pre.cols());
    case Activation::TanH: {
        Matrix t = pre;
        tanh_inplace(t);
        return (1.0 - t.array().square()).matrix();
    }
    case Activation::LeakyReLU: return (pre.array() >= 0.0).select(Matrix::Ones(pre.rows(), pre.cols()),
                                                                   Matrix::Constant(pre.rows(), pre.cols(), kLeakySlope));
    }
    return Matrix::Ones(pre.rows(), pre.cols());
}

// ------------------------------------------------------------------ LSTM

LstmParams::LstmParams(std::size_t input_dim, std::size_t units)
    : W(Matrix::Zero(idx(4 * units), idx(input_dim))), U(Matrix::Zero(idx(4 * units), idx(units))),
      b(Vector::Zero(idx(4 * units))) {}

const Matrix& lstm_forward(const LstmParams& p, const SequenceBatch& x, LstmCache& cache, std::uint64_t revision) {
    if (x.features() != p.input_dim()) {
        throw std::invalid_argument("lstm_forward: input has " + std::to_string(x.features()) + " features, layer expects " +
                                    std::to_string(p.input_dim()));
    }
    if (x.steps() == 0 || x.batch() == 0) {
        throw std::invalid_argument("lstm_forward: empty sequence");
    }
    const Index H = idx(p.units());
    const Index B = idx(x.batch());
    const std::size_t T = x.steps();

    cache.input = x;
    cache.revision = revision;
    cache.gates.noalias() = p.W * x.data();
    cache.gates.colwise() += p.b;
    cache.cells.resize(H, idx(T) * B);
    cache.tanh_c.resize(H, idx(T) * B);
    cache.hidden.resize(H, idx(T) * B);

    for (std::size_t t = 0; t < T; ++t) {
        const Index col = idx(t) * B;
        auto z = cache.gates.middleCols(col, B);
        if (t > 0) {
            z.noalias() += p.U * cache.hidden.middleCols(col - B, B);
        }
        sigmoid_inplace(z.topRows(2 * H));
        tanh_inplace(z.middleRows(2 * H, H));
        sigmoid_inplace(z.bottomRows(H));

        auto c = cache.cells.middleCols(col, B);
        c = z.topRows(H).cwiseProduct(z.middleRows(2 * H, H));
        if (t > 0) {
            c += z.middleRows(H, H).cwiseProduct(cache.cells.middleCols(col - B, B));
        }
        auto tc = cache.tanh_c.middleCols(col, B);
        tc = c;
        tanh_inplace(tc);
        cache.hidden.middleCols(col, B) = z.bottomRows(H).cwiseProduct(tc);
    }
    return cache.hidden;
}

LstmGrads lstm_backward(const LstmParams& p, const LstmCache& cache, const Matrix& d_hidden, std::uint64_t revision) {
    check_revision(cache.revision, revision, "lstm");
    const Index H = idx(p.units());
    const Index B = idx(cache.input.batch());
    const std::size_t T = cache.input.steps();
    if (d_hidden.rows() != H || d_hidden.cols() != idx(T) * B) {
        throw std::invalid_argument("lstm_backward: upstream gradient shape mismatch");
    }

    Matrix dz(4 * H, idx(T) * B);
    Matrix dh_next = Matrix::Zero(H, B);
    Matrix dc_next = Matrix::Zero(H, B);
    Matrix dh(H, B);
    Matrix dc(H, B);

    for (std::size_t step = T; step-- > 0;) {
        const Index col = idx(step) * B;
        const auto g = cache.gates.middleCols(col, B);
        const auto i_gate = g.topRows(H).array();
        const auto f_gate = g.middleRows(H, H).array();
        const auto cand = g.middleRows(2 * H, H).array();
        const auto o_gate = g.bottomRows(H).array();
        const auto tc = cache.tanh_c.middleCols(col, B).array();

        dh = d_hidden.middleCols(col, B) + dh_next;
        dc = (dh.array() * o_gate * (1.0 - tc.square()) + dc_next.array()).matrix();

        auto dzt = dz.middleCols(col, B);
        dzt.topRows(H) = (dc.array() * cand * i_gate * (1.0 - i_gate)).matrix();
        if (step > 0) {
            const auto c_prev = cache.cells.middleCols(col - B, B).array();
            dzt.middleRows(H, H) = (dc.array() * c_prev * f_gate * (1.0 - f_gate)).matrix();
        } else {
            dzt.middleRows(H, H).setZero();
        }
        dzt.middleRows(2 * H, H) = (dc.array() * i_gate * (1.0 - cand.square())).matrix();
        dzt.bottomRows(H) = (dh.array() * tc * o_gate * (1.0 - o_gate)).matrix();

        dc_next = (dc.array() * f_gate).matrix();
        dh_next.noalias() = p.U.transpose() * dzt;
    }

    LstmGrads grads;
    grads.dW.noalias() = dz * cache.input.data().transpose();
    grads.dU = Matrix::Zero(4 * H, H);
    if (T > 1) {
        const Index n = idx(T - 1) * B;
        grads.dU.noalias() = dz.rightCols(n) * cache.hidden.leftCols(n).transpose();
    }
    grads.db = dz.rowwise().sum();
    Matrix dx = p.W.transpose() * dz;
    grads.dx = SequenceBatch(std::move(dx), T, cache.input.batch());
    return grads;
}

// ------------------------------------------------------------------ Conv1D + max-pool

ConvParams::ConvParams(std::size_t in_channels_, std::size_t filters, std::size_t kernel, std::size_t pool)
    : in_channels(in_channels_), kernel_size(kernel), pool_size(pool),
      W(Matrix::Zero(idx(filters), idx(kernel * in_channels_))), b(Vector::Zero(idx(filters))) {
    if (kernel_size == 0 || pool_size == 0 || in_channels == 0 || filters == 0) {
        throw std::invalid_argument("ConvParams: kernel_size, pool_size, channels and filters must be >= 1");
    }
    if (pool_size > 255) {
        throw std::invalid_argument("ConvParams: pool_size must be <= 255");
    }
}

std::size_t ConvParams::output_steps(std::size_t steps) const {
    if (steps < kernel_size) {
        return 0;
    }
    return (steps - kernel_size + 1) / pool_size;
}

SequenceBatch conv1d_maxpool_forward(const ConvParams& p, const SequenceBatch& x, ConvCache& cache,
                                     std::uint64_t revision) {
    if (x.features() != p.in_channels) {
        throw std::invalid_argument("conv1d: input has " + std::to_string(x.features()) + " channels, layer expects " +
                                    std::to_string(p.in_channels));
    }
    if (x.steps() < p.kernel_size) {
        throw std::invalid_argument("conv1d: sequence of " + std::to_string(x.steps()) +
                                    " steps is shorter than the kernel (" + std::to_string(p.kernel_size) + ")");
    }
    const std::size_t conv_steps = x.steps() - p.kernel_size + 1;
    const std::size_t pooled = conv_steps / p.pool_size;
    if (pooled == 0) {
        throw std::invalid_argument("conv1d: sequence too short for one pooling window");
    }
    const Index B = idx(x.batch());
    const Index C = idx(p.in_channels);

    cache.input_steps = x.steps();
    cache.batch = x.batch();
    cache.revision = revision;
    cache.columns.resize(idx(p.kernel_size) * C, idx(conv_steps) * B);
    for (std::size_t t = 0; t < conv_steps; ++t) {
        for (std::size_t k = 0; k < p.kernel_size; ++k) {
            cache.columns.block(idx(k) * C, idx(t) * B, C, B) = x.step(t + k);
        }
    }
    cache.pre.noalias() = p.W * cache.columns;
    cache.pre.colwise() += p.b;

    const Index F = idx(p.filters());
    SequenceBatch out(p.filters(), pooled, x.batch());
    cache.argmax.assign(static_cast<std::size_t>(F * idx(pooled) * B), 0);
    for (std::size_t q = 0; q < pooled; ++q) {
        for (Index b = 0; b < B; ++b) {
            for (Index f = 0; f < F; ++f) {
                double best = 0.0;
                std::uint8_t arg = 0;
                for (std::size_t r = 0; r < p.pool_size; ++r) {
                    const double v = activate(Activation::LeakyReLU, cache.pre(f, idx(q * p.pool_size + r) * B + b));
                    if (r == 0 || v > best) {
                        best = v;
                        arg = static_cast<std::uint8_t>(r);
                    }
                }
                out.data()(f, idx(q) * B + b) = best;
                cache.argmax[static_cast<std::size_t>((idx(q) * B + b) * F + f)] = arg;
            }
        }
    }
    return out;
}

ConvGrads conv1d_maxpool_backward(const ConvParams& p, const ConvCache& cache, const SequenceBatch& d_out,
                                  std::uint64_t revision) {
    check_revision(cache.revision, revision, "conv1d");
    const Index B = idx(cache.batch);
    const Index F = idx(p.filters());
    const Index C = idx(p.in_channels);
    const std::size_t conv_steps = cache.input_steps - p.kernel_size + 1;
    const std::size_t pooled = conv_steps / p.pool_size;
    if (d_out.features() != p.filters() || d_out.steps() != pooled || d_out.batch() != cache.batch) {
        throw std::invalid_argument("conv1d backward: upstream gradient shape mismatch");
    }

    Matrix d_pre = Matrix::Zero(F, idx(conv_steps) * B);
    for (std::size_t q = 0; q < pooled; ++q) {
        for (Index b = 0; b < B; ++b) {
            for (Index f = 0; f < F; ++f) {
                const std::size_t r = cache.argmax[static_cast<std::size_t>((idx(q) * B + b) * F + f)];
                const Index col = idx(q * p.pool_size + r) * B + b;
                const double slope = cache.pre(f, col) >= 0.0 ? 1.0 : kLeakySlope;
                d_pre(f, col) = d_out.data()(f, idx(q) * B + b) * slope;
            }
        }
    }

    ConvGrads grads;
    grads.dW.noalias() = d_pre * cache.columns.transpose();
    grads.db = d_pre.rowwise().sum();
    const Matrix d_columns = p.W.transpose() * d_pre;
    grads.dx = SequenceBatch(p.in_channels, cache.input_steps, cache.batch);
    for (std::size_t t = 0; t < conv_steps; ++t) {
        for (std::size_t k = 0; k < p.kernel_size; ++k) {
            grads.dx.step(t + k) += d_columns.block(idx(k) * C, idx(t) * B, C, B);
        }
    }
    return grads;
}

// ------------------------------------------------------------------ Dense

DenseParams::DenseParams(std::size_t inputs, std::size_t outputs, Activation a)
    : W(Matrix::Zero(idx(outputs), idx(inputs))), b(Vector::Zero(idx(outputs))), activation(a) {}

Matrix dense_forward(const DenseParams& p, const Matrix& input, DenseCache& cache, std::uint64_t revision) {
    if (input.rows() != p.W.cols()) {
        throw std::invalid_argument("dense: input dimension " + std::to_string(input.rows()) + " != " +
                                    std::to_string(p.W.cols()));
    }
    cache.input = input;
    cache.revision = revision;
    cache.pre.noalias() = p.W * input;
    cache.pre.colwise() += p.b;
    Matrix out = cache.pre;
    activate_inplace(p.activation, out);
    return out;
}

DenseGrads dense_backward(const DenseParams& p, const DenseCache& cache, const Matrix& d_out, std::uint64_t revision) {
    check_revision(cache.revision, revision, "dense");
    if (d_out.rows() != cache.pre.rows() || d_out.cols() != cache.pre.cols()) {
        throw std::invalid_argument("dense backward: upstream gradient shape mismatch");
    }
    const Matrix d_pre = p.activation == Activation::Linear
                             ? d_out
                             : Matrix(d_out.cwiseProduct(activation_derivative(p.activation, cache.pre)));
    DenseGrads grads;
    grads.dW.noalias() = d_pre * cache.input.transpose();
    grads.db = d_pre.rowwise().sum();
    grads.dx.noalias() = p.W.transpose() * d_pre;
    return grads;
}

} // namespace gridcast::neural
