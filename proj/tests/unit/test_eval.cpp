#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "gridcast/data/random.h"
#include "gridcast/eval/backtest.h"
#include "gridcast/eval/metrics.h"
#include "gridcast/forecast/baselines.h"
#include "gridcast/forecast/registry.h"

using namespace gridcast;
using namespace gridcast::eval;

namespace {

HourlyTimeSeries days_series(std::size_t days, const std::function<double(std::size_t, std::size_t)>& f) {
    std::vector<double> v(days * data::kHoursPerDay);
    for (std::size_t t = 0; t < v.size(); ++t) {
        v[t] = f(t / 24, t % 24);
    }
    return HourlyTimeSeries(data::make_timestamp(2019, 1, 1), std::move(v));
}

/// Backtest whose errors are given per (day, hour).
BacktestResult synthetic_result(std::size_t days, const std::function<double(std::size_t, std::size_t)>& error) {
    BacktestResult r;
    for (std::size_t d = 0; d < days; ++d) {
        DayResult day;
        day.day = d;
        for (std::size_t h = 0; h < 24; ++h) {
            day.actual[h] = 10.0;
            day.predicted[h] = 10.0 + error(d, h);
        }
        r.days.push_back(day);
    }
    return r;
}

} // namespace

TEST(Rmse, Examples) {
    const std::vector<double> x{1.0, 2.0, 3.0};
    EXPECT_EQ(rmse(x, x), 0.0);
    EXPECT_NEAR(rmse(std::vector<double>{3, 4}, std::vector<double>{0, 0}), 3.53553, 1e-5);
    EXPECT_THROW(rmse(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW(rmse(std::vector<double>{1}, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(Rmse, HomogeneousAndMatchesBruteForce) {
    data::Rng rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(500);
        std::vector<double> p(n), a(n), scaled(n);
        const double k = rng.uniform(-5.0, 5.0);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.uniform(0.0, 100.0);
            p[i] = a[i] + rng.normal();
            scaled[i] = a[i] + k * (p[i] - a[i]);
            sum += (p[i] - a[i]) * (p[i] - a[i]);
        }
        const double r = rmse(p, a);
        EXPECT_NEAR(r, std::sqrt(sum / n), 1e-12 * r);
        EXPECT_NEAR(rmse(scaled, a), std::abs(k) * r, 1e-9 * (1 + std::abs(k) * r));
    }
}

TEST(Mape, Examples) {
    Mape m = mape(std::vector<double>{90, 110}, std::vector<double>{100, 100});
    EXPECT_NEAR(m.percent, 10.0, 1e-12);
    EXPECT_EQ(m.excluded, 0u);
    m = mape(std::vector<double>{4, 5}, std::vector<double>{4, 5});
    EXPECT_EQ(m.percent, 0.0);
    m = mape(std::vector<double>{5, 110}, std::vector<double>{0, 100});
    EXPECT_NEAR(m.percent, 10.0, 1e-12);
    EXPECT_EQ(m.excluded, 1u);
    EXPECT_THROW(mape(std::vector<double>{1, 2}, std::vector<double>{0, 0}), std::invalid_argument);
}

TEST(Mape, MatchesBruteForce) {
    data::Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.below(300);
        std::vector<double> p(n), a(n);
        double sum = 0.0;
        std::size_t used = 0;
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.1, 50.0);
            p[i] = rng.uniform(0.0, 50.0);
            if (a[i] != 0.0) {
                sum += std::abs(p[i] - a[i]) / a[i];
                ++used;
            }
        }
        if (used == 0) continue;
        const Mape m = mape(p, a);
        EXPECT_NEAR(m.percent, 100.0 * sum / used, 1e-12 * m.percent);
        EXPECT_EQ(m.excluded, n - used);
    }
}

TEST(Improvement, Examples) {
    EXPECT_NEAR(improvement(579.9, 182.4), 68.5, 0.05);
    EXPECT_EQ(improvement(3.0, 3.0), 0.0);
    EXPECT_EQ(improvement(3.0, 0.0), 100.0);
    EXPECT_THROW(improvement(0.0, 1.0), std::invalid_argument);
}

TEST(IncompleteBeta, AgreesWithBoost) {
    for (double a : {0.5, 1.0, 2.5, 10.0, 400.0, 4379.5}) {
        for (double b : {0.5, 1.0, 4.0, 30.0}) {
            for (double x : {0.0, 1e-6, 0.01, 0.3, 0.5, 0.77, 0.99, 1.0}) {
                const double ours = regularized_incomplete_beta(a, b, x);
                const double ref = boost::math::ibeta(a, b, x);
                EXPECT_NEAR(ours, ref, 1e-12 + 1e-10 * ref) << a << ' ' << b << ' ' << x;
            }
        }
    }
    EXPECT_NEAR(regularized_incomplete_beta(2.5, 4.0, 0.3), 0.3521975859067672, 1e-13);
}

TEST(StudentT, CdfAgreesWithBoost) {
    for (double df : {1.0, 2.0, 9.0, 30.0, 8759.0}) {
        const boost::math::students_t dist(df);
        for (double t : {-40.0, -3.46, -1.0, -0.1, 0.0, 0.5, 2.0, 12.0}) {
            const double ref = boost::math::cdf(dist, t);
            EXPECT_NEAR(student_t_cdf(t, df), ref, 1e-12 + 1e-9 * ref) << df << ' ' << t;
        }
    }
    EXPECT_EQ(student_t_cdf(std::numeric_limits<double>::infinity(), 5.0), 1.0);
    EXPECT_EQ(student_t_cdf(-std::numeric_limits<double>::infinity(), 5.0), 0.0);
}

TEST(TTest, IdenticalInputs) {
    const std::vector<double> a{1, 2, 3, 4};
    const TTestResult r = paired_t_test(a, a);
    EXPECT_EQ(r.t_statistic, 0.0);
    EXPECT_EQ(r.p_value, 1.0);
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.degrees_of_freedom, 3.0);
}

TEST(TTest, FixtureMatchesHandComputation) {
    const std::vector<double> a{2.1, 3.4, 1.9, 5.0, 4.2, 3.3, 2.8, 4.9, 3.1, 2.2};
    const std::vector<double> b{1.8, 3.0, 2.2, 4.1, 3.9, 2.7, 2.9, 4.0, 2.5, 2.0};
    double mean = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) mean += (a[i] - b[i]) / 10.0;
    double ss = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) ss += std::pow(a[i] - b[i] - mean, 2);
    const double t = mean / std::sqrt(ss / 9.0 / 10.0);

    const TTestResult r = paired_t_test(a, b);
    EXPECT_NEAR(r.t_statistic, t, 1e-9);
    EXPECT_NEAR(r.t_statistic, 3.0732340362979937, 1e-9);
    EXPECT_NEAR(r.p_value, 0.013284386880608201, 1e-9);
    EXPECT_EQ(r.degrees_of_freedom, 9.0);
    EXPECT_FALSE(r.degenerate);

    const TTestResult swapped = paired_t_test(b, a);
    EXPECT_DOUBLE_EQ(swapped.t_statistic, -r.t_statistic);
    EXPECT_DOUBLE_EQ(swapped.p_value, r.p_value);
}

TEST(TTest, ConstantShiftIsInfinite) {
    const std::vector<double> a{2, 3, 4};
    const std::vector<double> b{1, 2, 3};
    const TTestResult r = paired_t_test(a, b);
    EXPECT_TRUE(std::isinf(r.t_statistic));
    EXPECT_GT(r.t_statistic, 0.0);
    EXPECT_EQ(r.p_value, 0.0);
    EXPECT_TRUE(r.degenerate);
    EXPECT_LT(paired_t_test(b, a).t_statistic, 0.0);
}

TEST(TTest, InvalidInputs) {
    EXPECT_THROW(paired_t_test(std::vector<double>{1}, std::vector<double>{2}), std::invalid_argument);
    EXPECT_THROW(paired_t_test(std::vector<double>{1, 2}, std::vector<double>{2}), std::invalid_argument);
}

TEST(Unfold, ConstantAndSingleHourErrors) {
    const auto flat = unfold_rmse_by_hour(synthetic_result(5, [](auto, auto) { return 1.0; }));
    for (double v : flat) EXPECT_DOUBLE_EQ(v, 1.0);
    const auto noon = unfold_rmse_by_hour(synthetic_result(5, [](auto d, auto h) { return h == 12 ? 1.0 + d : 0.0; }));
    for (std::size_t h = 0; h < 24; ++h) {
        if (h == 12) {
            EXPECT_NEAR(noon[h], std::sqrt((1 + 4 + 9 + 16 + 25) / 5.0), 1e-12);
        } else {
            EXPECT_EQ(noon[h], 0.0);
        }
    }
}

TEST(Unfold, MseDecomposes) {
    data::Rng rng(6);
    const BacktestResult r = synthetic_result(40, [&](auto, auto h) { return rng.normal() * (1.0 + h); });
    const auto per_hour = unfold_rmse_by_hour(r);
    double mean_sq = 0.0;
    for (double v : per_hour) mean_sq += v * v / 24.0;
    const double overall = evaluate(r).rmse;
    EXPECT_NEAR(overall * overall, mean_sq, 1e-10 * mean_sq);
}

TEST(Backtest, DefaultSplitGives8760Pairs) {
    const auto s = days_series(1029, [](auto d, auto h) { return 1.0 + (d % 7) + 0.1 * h; });
    forecast::NaiveForecaster bm1(1);
    const BacktestResult r = backtest(bm1, s, {}, "CS");
    EXPECT_EQ(r.pair_count(), 8760u);
    EXPECT_EQ(r.days.front().day, 664u);
    EXPECT_EQ(r.days.back().day, 1028u);
    EXPECT_EQ(r.estimator, "BM1");
    EXPECT_EQ(r.scenario, "CS");
    EXPECT_EQ(r.days.front().start, s.time_at(664 * 24));
}

TEST(Backtest, PeriodicSeriesHasZeroDayBeforeError) {
    const auto s = days_series(40, [](auto, auto h) { return 2.0 + std::sin(h * 0.3); });
    forecast::NaiveForecaster bm1(1);
    const BacktestResult r = backtest(bm1, s, {30, 10});
    for (double e : r.squared_errors()) EXPECT_EQ(e, 0.0);
    EXPECT_EQ(evaluate(r).rmse, 0.0);
}

TEST(Backtest, ShortSeriesThrows) {
    const auto s = days_series(20, [](auto, auto) { return 1.0; });
    forecast::NaiveForecaster bm1(1);
    EXPECT_THROW(backtest(bm1, s, {15, 10}), std::invalid_argument);
}

TEST(Backtest, NoLeakageUnderPerturbation) {
    data::Rng rng(13);
    const auto s = days_series(400, [&](auto, auto h) { return std::max(0.0, 3.0 + std::sin(h * 0.26) + rng.normal()); });
    forecast::EstimatorSettings settings;
    settings.lookback = 48;
    settings.lstm_epochs = 2;
    settings.cnn_lstm_epochs = 1;
    const Split split{370, 30};
    for (const auto& name : forecast::estimator_names()) {
        auto base = forecast::make_forecaster(name, settings);
        const BacktestResult ref = backtest(*base, s, split);
        for (std::size_t target : {375u, 399u}) {
            std::vector<double> v(s.values().begin(), s.values().end());
            for (std::size_t t = target * 24; t < v.size(); ++t) {
                v[t] = 50.0 + rng.uniform(0.0, 100.0);
            }
            const HourlyTimeSeries perturbed(s.start(), v);
            auto f = forecast::make_forecaster(name, settings);
            const BacktestResult r = backtest(*f, perturbed, split);
            for (std::size_t i = 0; i < r.days.size(); ++i) {
                if (r.days[i].day <= target) {
                    ASSERT_EQ(r.days[i].predicted, ref.days[i].predicted) << name << " day " << r.days[i].day;
                }
            }
        }
    }
}

TEST(Backtest, RepeatedRunsGiveIdenticalReports) {
    const auto s = days_series(400, [](auto d, auto h) { return 2.0 + std::sin(h * 0.26 + d * 0.1); });
    forecast::EstimatorSettings settings;
    settings.lookback = 48;
    settings.lstm_epochs = 2;
    for (const char* name : {"ARIMA", "LSTM"}) {
        auto a = forecast::make_forecaster(name, settings);
        auto b = forecast::make_forecaster(name, settings);
        const MetricReport ra = evaluate(backtest(*a, s, {370, 30}));
        const MetricReport rb = evaluate(backtest(*b, s, {370, 30}));
        EXPECT_EQ(ra.rmse, rb.rmse) << name;
        EXPECT_EQ(ra.mape, rb.mape) << name;
        EXPECT_EQ(ra.per_hour_rmse, rb.per_hour_rmse) << name;
    }
}

TEST(Compare, UsesSquaredErrors) {
    const BacktestResult a = synthetic_result(3, [](auto d, auto h) { return 1.0 + 0.1 * d + 0.01 * h; });
    const BacktestResult b = synthetic_result(3, [](auto, auto) { return 0.5; });
    const TTestResult direct = paired_t_test(a.squared_errors(), b.squared_errors());
    const TTestResult r = compare(a, b);
    EXPECT_EQ(r.t_statistic, direct.t_statistic);
    EXPECT_EQ(r.degrees_of_freedom, 71.0);
    EXPECT_GT(r.t_statistic, 0.0);
}
