#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace gridcast::neural {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense row-major array with an explicit shape; the exchange format for parameters on disk.
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> data;

    Tensor() = default;
    Tensor(std::vector<std::size_t> shape_, std::vector<double> data_);

    std::size_t size() const { return data.size(); }

    static Tensor from_matrix(const Matrix& m);
    /// Rank-2 (or rank-1 as a column) tensor back into a matrix.
    Matrix to_matrix() const;
};

std::size_t element_count(const std::vector<std::size_t>& shape);

/// A batch of equally long sequences. Column t * batch + b holds the feature vector of
/// sample b at step t, so one time step is a contiguous block of `batch` columns.
class SequenceBatch {
public:
    SequenceBatch() = default;
    SequenceBatch(std::size_t features, std::size_t steps, std::size_t batch)
        : steps_(steps), batch_(batch), data_(Matrix::Zero(static_cast<Eigen::Index>(features),
                                                           static_cast<Eigen::Index>(steps * batch))) {}
    SequenceBatch(Matrix data, std::size_t steps, std::size_t batch) : steps_(steps), batch_(batch), data_(std::move(data)) {
        if (static_cast<std::size_t>(data_.cols()) != steps * batch) {
            throw std::invalid_argument("SequenceBatch: column count must equal steps * batch");
        }
    }

    std::size_t features() const { return static_cast<std::size_t>(data_.rows()); }
    std::size_t steps() const { return steps_; }
    std::size_t batch() const { return batch_; }

    auto step(std::size_t t) { return data_.middleCols(col(t), static_cast<Eigen::Index>(batch_)); }
    auto step(std::size_t t) const { return data_.middleCols(col(t), static_cast<Eigen::Index>(batch_)); }

    Matrix& data() { return data_; }
    const Matrix& data() const { return data_; }

    /// Sequence of one sample as a (steps x features) tensor.
    static SequenceBatch from_single(const Tensor& sequence);

private:
    Eigen::Index col(std::size_t t) const { return static_cast<Eigen::Index>(t * batch_); }

    std::size_t steps_ = 0;
    std::size_t batch_ = 0;
    Matrix data_;
};

} // namespace gridcast::neural
