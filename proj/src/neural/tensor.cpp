#include "gridcast/neural/tensor.h"

namespace gridcast::neural {

std::size_t element_count(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t d : shape) {
        n *= d;
    }
    return n;
}

Tensor::Tensor(std::vector<std::size_t> shape_, std::vector<double> data_) : shape(std::move(shape_)), data(std::move(data_)) {
    if (element_count(shape) != data.size()) {
        throw std::invalid_argument("Tensor: data length does not match the product of the shape");
    }
}

Tensor Tensor::from_matrix(const Matrix& m) {
    Tensor t;
    t.shape = {static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())};
    t.data.resize(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            t.data[static_cast<std::size_t>(r * m.cols() + c)] = m(r, c);
        }
    }
    return t;
}

Matrix Tensor::to_matrix() const {
    std::size_t rows = 0;
    std::size_t cols = 1;
    if (shape.size() == 1) {
        rows = shape[0];
    } else if (shape.size() == 2) {
        rows = shape[0];
        cols = shape[1];
    } else {
        throw std::invalid_argument("Tensor::to_matrix: rank must be 1 or 2");
    }
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = data[r * cols + c];
        }
    }
    return m;
}

SequenceBatch SequenceBatch::from_single(const Tensor& sequence) {
    if (sequence.shape.size() != 2) {
        throw std::invalid_argument("SequenceBatch::from_single: expected a (steps x features) tensor");
    }
    const std::size_t steps = sequence.shape[0];
    const std::size_t features = sequence.shape[1];
    SequenceBatch out(features, steps, 1);
    for (std::size_t t = 0; t < steps; ++t) {
        for (std::size_t f = 0; f < features; ++f) {
            out.data()(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(t)) = sequence.data[t * features + f];
        }
    }
    return out;
}

} // namespace gridcast::neural
