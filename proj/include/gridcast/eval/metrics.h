#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace gridcast::eval {

/// sqrt(mean((pred - actual)^2)). Throws std::invalid_argument on empty or unequal input.
double rmse(std::span<const double> predicted, std::span<const double> actual);

struct Mape {
    double percent = 0.0;
    std::size_t excluded = 0; ///< pairs with actual == 0
};

/// 100 * mean(|pred - actual| / |actual|) over pairs with a nonzero actual.
/// Throws std::invalid_argument when every actual is zero.
Mape mape(std::span<const double> predicted, std::span<const double> actual);

/// 100 * (baseline - candidate) / baseline. Throws std::invalid_argument for baseline <= 0.
double improvement(double rmse_baseline, double rmse_candidate);

struct TTestResult {
    double t_statistic = 0.0;
    double degrees_of_freedom = 0.0;
    double p_value = 1.0;
    /// Differences had zero variance: t is 0 (all differences 0, p = 1) or +-inf (p = 0).
    bool degenerate = false;
};

/// Paired Student t-test on a - b with df = n - 1 and a two-sided p-value.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of Student's t distribution with `df` degrees of freedom.
double student_t_cdf(double t, double df);

} // namespace gridcast::eval
