#include "gridcast/neural/grad_check.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gridcast/data/random.h"
#include "gridcast/neural/optim.h"

namespace gridcast::neural {

namespace {

std::vector<std::size_t> pick_coordinates(std::size_t n, std::size_t limit, data::Rng& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (limit == 0 || limit >= n) {
        return idx;
    }
    rng.shuffle(idx);
    idx.resize(limit);
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace

double relative_error(double analytic, double numeric, double floor) {
    const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
    return std::abs(analytic - numeric) / denom;
}

GradCheckResult grad_check(Network& network, const SequenceBatch& input, const Matrix& target,
                           const GradCheckOptions& options) {
    if (!(options.epsilon > 0.0)) {
        throw std::invalid_argument("grad_check: epsilon must be positive");
    }
    auto loss_at = [&](const SequenceBatch& x) { return mse_loss(network.forward(x), target).value; };

    const Loss loss = mse_loss(network.forward(input), target);
    const SequenceBatch d_input = network.backward(loss.grad);

    GradCheckResult result;
    data::Rng rng(options.seed);
    auto record = [&](const std::string& name, std::size_t index, double analytic, double numeric) {
        const double err = relative_error(analytic, numeric, options.denominator_floor);
        ++result.coordinates_checked;
        if (err > result.max_relative_error || result.coordinates_checked == 1) {
            result.max_relative_error = err;
            result.worst_param = name;
            result.worst_index = index;
            result.worst_analytic = analytic;
            result.worst_numeric = numeric;
        }
    };

    const double eps = options.epsilon;
    for (auto& p : network.parameters()) {
        const Matrix analytic = p.grad;
        double* values = p.value.data();
        for (std::size_t i : pick_coordinates(static_cast<std::size_t>(p.value.size()), options.max_coords_per_param, rng)) {
            const double saved = values[i];
            values[i] = saved + eps;
            const double plus = loss_at(input);
            values[i] = saved - eps;
            const double minus = loss_at(input);
            values[i] = saved;
            record(p.name, i, analytic.data()[i], (plus - minus) / (2.0 * eps));
        }
    }

    if (options.include_input) {
        SequenceBatch x = input;
        double* values = x.data().data();
        for (std::size_t i : pick_coordinates(static_cast<std::size_t>(x.data().size()), options.max_coords_per_param, rng)) {
            const double saved = values[i];
            values[i] = saved + eps;
            const double plus = loss_at(x);
            values[i] = saved - eps;
            const double minus = loss_at(x);
            values[i] = saved;
            record("input", i, d_input.data().data()[i], (plus - minus) / (2.0 * eps));
        }
    }
    // leave the caches consistent with the unperturbed parameters
    network.forward(input);
    return result;
}

} // namespace gridcast::neural
