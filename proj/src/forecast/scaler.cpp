#include "gridcast/forecast/scaler.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gridcast::forecast {

MinMaxScaler::MinMaxScaler(double min, double max) : min_(min), max_(max) {
    if (!std::isfinite(min) || !std::isfinite(max) || max < min) {
        throw std::invalid_argument("MinMaxScaler: need finite min <= max");
    }
    span_ = max > min ? max - min : 1.0;
}

MinMaxScaler MinMaxScaler::fit(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("MinMaxScaler::fit: no data");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return MinMaxScaler(*lo, *hi);
}

} // namespace gridcast::forecast
