#include "gridcast/eval/metrics.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gridcast::eval {

namespace {

void check_pairs(std::span<const double> a, std::span<const double> b, const char* what) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(what) + ": inputs have different lengths");
    }
    if (a.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty input");
    }
}

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 10000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) {
            return h;
        }
    }
    throw std::runtime_error("regularized_incomplete_beta: continued fraction did not converge");
}

} // namespace

double rmse(std::span<const double> predicted, std::span<const double> actual) {
    check_pairs(predicted, actual, "rmse");
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double e = predicted[i] - actual[i];
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(predicted.size()));
}

Mape mape(std::span<const double> predicted, std::span<const double> actual) {
    check_pairs(predicted, actual, "mape");
    Mape out;
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (actual[i] == 0.0) {
            ++out.excluded;
            continue;
        }
        sum += std::abs(predicted[i] - actual[i]) / std::abs(actual[i]);
        ++used;
    }
    if (used == 0) {
        throw std::invalid_argument("mape: every actual value is zero");
    }
    out.percent = 100.0 * sum / static_cast<double>(used);
    return out;
}

double improvement(double rmse_baseline, double rmse_candidate) {
    if (!(rmse_baseline > 0.0)) {
        throw std::invalid_argument("improvement: baseline RMSE must be positive");
    }
    return 100.0 * (rmse_baseline - rmse_candidate) / rmse_baseline;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument("regularized_incomplete_beta: a and b must be positive");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("regularized_incomplete_beta: x must lie in [0, 1]");
    }
    if (x == 0.0 || x == 1.0) {
        return x;
    }
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    // the fraction converges fast for x < (a + 1) / (a + b + 2); use symmetry otherwise
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) {
        throw std::invalid_argument("student_t_cdf: df must be positive");
    }
    if (std::isinf(t)) {
        return t > 0 ? 1.0 : 0.0;
    }
    const double tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
    return t >= 0.0 ? 1.0 - tail : tail;
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
    check_pairs(a, b, "paired_t_test");
    const std::size_t n = a.size();
    if (n < 2) {
        throw std::invalid_argument("paired_t_test: need at least two pairs");
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean += a[i] - b[i];
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dev = (a[i] - b[i]) - mean;
        ss += dev * dev;
    }
    TTestResult r;
    r.degrees_of_freedom = static_cast<double>(n - 1);
    const double sd = std::sqrt(ss / r.degrees_of_freedom);
    if (sd == 0.0) {
        r.degenerate = true;
        if (mean == 0.0) {
            r.t_statistic = 0.0;
            r.p_value = 1.0;
        } else {
            r.t_statistic = mean > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
            r.p_value = 0.0;
        }
        return r;
    }
    r.t_statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
    const double df = r.degrees_of_freedom;
    r.p_value = regularized_incomplete_beta(0.5 * df, 0.5, df / (df + r.t_statistic * r.t_statistic));
    return r;
}

} // namespace gridcast::eval
