#pragma once

#include <cstdint>
#include <string>

#include "gridcast/neural/network.h"

namespace gridcast::neural {

struct GradCheckOptions {
    double epsilon = 1e-5;
    /// Coordinates checked per parameter tensor; 0 checks all of them.
    std::size_t max_coords_per_param = 0;
    std::uint64_t seed = 1;
    /// Lower bound on the denominator of the relative error, so gradients that are
    /// zero up to rounding do not blow the ratio up.
    double denominator_floor = 1e-7;
    bool include_input = true;
};

struct GradCheckResult {
    double max_relative_error = 0.0;
    std::string worst_param;
    std::size_t worst_index = 0;
    double worst_analytic = 0.0;
    double worst_numeric = 0.0;
    std::size_t coordinates_checked = 0;
};

double relative_error(double analytic, double numeric, double floor);

/// Compares backprop gradients of the MSE loss with central differences
/// (f(x + eps) - f(x - eps)) / (2 eps). Parameters are restored afterwards.
GradCheckResult grad_check(Network& network, const SequenceBatch& input, const Matrix& target,
                           const GradCheckOptions& options = {});

} // namespace gridcast::neural
