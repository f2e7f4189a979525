#pragma once

#include <span>

namespace gridcast::forecast {

/// Min-max scaling to [0, 1] with the range of the data it was fitted on.
class MinMaxScaler {
public:
    MinMaxScaler() = default;
    MinMaxScaler(double min, double max);

    static MinMaxScaler fit(std::span<const double> values);

    double min() const { return min_; }
    double max() const { return max_; }

    double apply(double x) const { return (x - min_) / span_; }
    double invert(double y) const { return y * span_ + min_; }

private:
    double min_ = 0.0;
    double max_ = 1.0;
    double span_ = 1.0; // 1 for a constant range, so the data maps to 0
};

} // namespace gridcast::forecast
