#include "gridcast/forecast/arima.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gridcast::forecast {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<double> difference(std::span<const double> x) {
    std::vector<double> out;
    out.reserve(x.size() > 0 ? x.size() - 1 : 0);
    for (std::size_t i = 1; i < x.size(); ++i) {
        out.push_back(x[i] - x[i - 1]);
    }
    return out;
}

// Least squares; false when the design is rank deficient or the fit is not finite.
bool least_squares(const MatrixXd& X, const VectorXd& y, VectorXd& beta) {
    if (X.cols() == 0) {
        beta.resize(0);
        return true;
    }
    if (X.rows() <= X.cols()) {
        return false;
    }
    Eigen::ColPivHouseholderQR<MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < X.cols()) {
        return false;
    }
    beta = qr.solve(y);
    return beta.allFinite();
}

ArimaModel fallback_model(ArimaOrder order, std::string note) {
    ArimaModel m;
    m.order = order;
    m.fallback = true;
    m.note = std::move(note);
    return m;
}

} // namespace

ArimaModel fit_arima(std::span<const double> window, ArimaOrder order, std::size_t long_ar_order) {
    const std::size_t p = order.p, d = order.d, q = order.q;
    if (window.size() <= p + q + d + 10) {
        throw std::invalid_argument("fit_arima: window of " + std::to_string(window.size()) +
                                    " values is too short for the order (need more than p + q + d + 10)");
    }
    std::vector<double> w(window.begin(), window.end());
    for (std::size_t k = 0; k < d; ++k) {
        w = difference(w);
    }
    const std::size_t n = w.size();
    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(n);
    for (double& v : w) {
        v -= mean;
    }

    ArimaModel model;
    model.order = order;
    model.mean = mean;

    // stage 1: innovations from a long autoregression
    std::vector<double> e(n, 0.0);
    std::size_t start = p;
    if (q > 0) {
        const std::size_t m = long_ar_order > 0 ? long_ar_order : std::max<std::size_t>(10, p + q);
        if (n <= 2 * m + q + p + 1) {
            return fallback_model(order, "window too short for the long autoregression");
        }
        MatrixXd X(static_cast<Index>(n - m), static_cast<Index>(m));
        VectorXd y(static_cast<Index>(n - m));
        for (std::size_t t = m; t < n; ++t) {
            y(static_cast<Index>(t - m)) = w[t];
            for (std::size_t k = 1; k <= m; ++k) {
                X(static_cast<Index>(t - m), static_cast<Index>(k - 1)) = w[t - k];
            }
        }
        VectorXd a;
        if (!least_squares(X, y, a)) {
            return fallback_model(order, "singular long autoregression");
        }
        const VectorXd resid = y - X * a;
        for (std::size_t t = m; t < n; ++t) {
            e[t] = resid(static_cast<Index>(t - m));
        }
        start = std::max(p, m + q);
    }

    // stage 2: regression on lagged values and lagged innovations
    const std::size_t rows = n - start;
    MatrixXd X(static_cast<Index>(rows), static_cast<Index>(p + q));
    VectorXd y(static_cast<Index>(rows));
    for (std::size_t t = start; t < n; ++t) {
        const auto r = static_cast<Index>(t - start);
        y(r) = w[t];
        for (std::size_t k = 1; k <= p; ++k) {
            X(r, static_cast<Index>(k - 1)) = w[t - k];
        }
        for (std::size_t k = 1; k <= q; ++k) {
            X(r, static_cast<Index>(p + k - 1)) = e[t - k];
        }
    }
    VectorXd beta;
    if (!least_squares(X, y, beta)) {
        return fallback_model(order, "singular regression");
    }
    model.ar.assign(beta.data(), beta.data() + p);
    model.ma.assign(beta.data() + p, beta.data() + p + q);
    model.innovations.assign(e.end() - static_cast<std::ptrdiff_t>(q), e.end());
    return model;
}

ArimaForecast forecast_arima(const ArimaModel& model, std::span<const double> window, std::size_t horizon) {
    if (window.empty()) {
        throw std::invalid_argument("forecast_arima: empty window");
    }
    auto drift = [&] { return ArimaForecast{std::vector<double>(horizon, window.back()), true}; };
    const std::size_t p = model.order.p, d = model.order.d, q = model.order.q;
    if (model.fallback) {
        return drift();
    }
    if (window.size() <= d + p) {
        throw std::invalid_argument("forecast_arima: window too short for the model order");
    }

    // every differencing level, so forecasts can be integrated back
    std::vector<std::vector<double>> levels{std::vector<double>(window.begin(), window.end())};
    for (std::size_t k = 0; k < d; ++k) {
        levels.push_back(difference(levels.back()));
    }
    std::vector<double> x = levels.back();
    for (double& v : x) {
        v -= model.mean;
    }
    std::vector<double> eps = model.innovations;

    std::vector<double> out(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
        double v = 0.0;
        for (std::size_t k = 1; k <= p; ++k) {
            v += model.ar[k - 1] * x[x.size() - k];
        }
        for (std::size_t k = 1; k <= q; ++k) {
            v += model.ma[k - 1] * eps[eps.size() - k];
        }
        x.push_back(v);
        eps.push_back(0.0);
        out[h] = v + model.mean;
    }
    for (std::size_t k = d; k-- > 0;) {
        double last = levels[k].back();
        for (double& v : out) {
            last += v;
            v = last;
        }
    }
    if (!std::all_of(out.begin(), out.end(), [](double v) { return std::isfinite(v); })) {
        return drift();
    }
    return {out, false};
}

ArimaForecaster::ArimaForecaster(ArimaOrder order, std::size_t window_hours) : order_(order), window_hours_(window_hours) {
    if (window_hours <= order.p + order.q + order.d + 10) {
        throw std::invalid_argument("ArimaForecaster: fit window must be longer than p + q + d + 10 hours");
    }
}

DayForecast ArimaForecaster::predict(const HourlyTimeSeries& context) const {
    if (context.size() < window_hours_) {
        throw std::invalid_argument("ArimaForecaster: history shorter than the fit window");
    }
    const auto window = context.values().last(window_hours_);
    const ArimaForecast f = forecast_arima(fit_arima(window, order_), window, kHoursPerDay);
    DayForecast out;
    std::copy(f.values.begin(), f.values.end(), out.kw.begin());
    out.fallback = f.fallback;
    clip_nonnegative(out.kw);
    return out;
}

} // namespace gridcast::forecast
