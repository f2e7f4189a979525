#include "gridcast/eval/backtest.h"

#include <stdexcept>

namespace gridcast::eval {

using data::kHoursPerDay;

std::vector<double> BacktestResult::predicted() const {
    std::vector<double> out;
    out.reserve(pair_count());
    for (const auto& d : days) {
        out.insert(out.end(), d.predicted.begin(), d.predicted.end());
    }
    return out;
}

std::vector<double> BacktestResult::actual() const {
    std::vector<double> out;
    out.reserve(pair_count());
    for (const auto& d : days) {
        out.insert(out.end(), d.actual.begin(), d.actual.end());
    }
    return out;
}

std::vector<double> BacktestResult::squared_errors() const {
    std::vector<double> out;
    out.reserve(pair_count());
    for (const auto& d : days) {
        for (std::size_t h = 0; h < kHoursPerDay; ++h) {
            const double e = d.predicted[h] - d.actual[h];
            out.push_back(e * e);
        }
    }
    return out;
}

std::size_t BacktestResult::fallback_days() const {
    std::size_t n = 0;
    for (const auto& d : days) {
        n += d.fallback ? 1 : 0;
    }
    return n;
}

BacktestResult backtest(forecast::Forecaster& forecaster, const HourlyTimeSeries& series, Split split,
                        std::string scenario) {
    if (split.train_days == 0 || split.test_days == 0) {
        throw std::invalid_argument("backtest: train and test days must both be >= 1");
    }
    if (series.size() < split.total_days() * kHoursPerDay) {
        throw std::invalid_argument("backtest: series covers " + std::to_string(series.size() / kHoursPerDay) +
                                    " days, split needs " + std::to_string(split.total_days()));
    }
    BacktestResult result;
    result.estimator = forecaster.name();
    result.scenario = std::move(scenario);
    forecaster.fit(series.slice(0, split.train_days * kHoursPerDay));
    result.days.reserve(split.test_days);
    for (std::size_t day = split.train_days; day < split.total_days(); ++day) {
        const std::size_t first = day * kHoursPerDay;
        const forecast::DayForecast f = forecaster.predict(series.slice(0, first));
        DayResult r;
        r.day = day;
        r.start = series.time_at(first);
        r.predicted = f.kw;
        r.fallback = f.fallback;
        for (std::size_t h = 0; h < kHoursPerDay; ++h) {
            r.actual[h] = series[first + h];
        }
        result.days.push_back(r);
    }
    return result;
}

std::array<double, kHoursPerDay> unfold_rmse_by_hour(const BacktestResult& result) {
    if (result.days.empty()) {
        throw std::invalid_argument("unfold_rmse_by_hour: empty backtest");
    }
    std::array<double, kHoursPerDay> out{};
    std::vector<double> p(result.days.size()), a(result.days.size());
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
        for (std::size_t k = 0; k < result.days.size(); ++k) {
            p[k] = result.days[k].predicted[h];
            a[k] = result.days[k].actual[h];
        }
        out[h] = rmse(p, a);
    }
    return out;
}

MetricReport evaluate(const BacktestResult& result) {
    const auto p = result.predicted();
    const auto a = result.actual();
    MetricReport r;
    r.rmse = rmse(p, a);
    const Mape m = mape(p, a);
    r.mape = m.percent;
    r.mape_excluded = m.excluded;
    r.per_hour_rmse = unfold_rmse_by_hour(result);
    return r;
}

TTestResult compare(const BacktestResult& a, const BacktestResult& b) {
    if (a.days.size() != b.days.size()) {
        throw std::invalid_argument("compare: backtests cover different numbers of days");
    }
    for (std::size_t k = 0; k < a.days.size(); ++k) {
        if (a.days[k].start != b.days[k].start) {
            throw std::invalid_argument("compare: backtests are not paired by timestamp");
        }
    }
    return paired_t_test(a.squared_errors(), b.squared_errors());
}

} // namespace gridcast::eval
