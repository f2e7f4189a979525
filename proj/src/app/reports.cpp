#include "gridcast/app/reports.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "gridcast/app/output.h"
#include "gridcast/app/svg.h"

namespace gridcast::app {

using data::format_double;

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

double parse_number(std::string_view text, std::size_t row, const char* column) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw data::ParseError(row, std::string(column) + ": not a number: \"" + std::string(text) + "\"");
    }
    return v;
}

std::size_t parse_index(std::string_view text, std::size_t row, const char* column) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw data::ParseError(row, std::string(column) + ": not an index: \"" + std::string(text) + "\"");
    }
    return v;
}

bool is_baseline(const eval::BacktestResult& r) {
    return r.estimator == kBaselineEstimator;
}

} // namespace

std::string scenario_summary_csv(const std::vector<ScenarioSummaryRow>& rows) {
    std::ostringstream out;
    out << "scenario,replication,median_kw,std_kw,neg_hour_frac\n";
    for (const auto& r : rows) {
        out << r.scenario << ',' << r.replication << ',' << format_double(r.stats.median) << ','
            << format_double(r.stats.std_dev) << ',' << format_double(r.stats.negative_hour_fraction) << '\n';
    }
    return out.str();
}

std::string scenario_loads_csv(const std::vector<ScenarioLoad>& loads) {
    std::ostringstream out;
    data::write_profile_csv_header(out);
    for (const auto& l : loads) {
        data::write_profile_csv_rows(out, l.scenario + "/residential_demand", l.load.residential_demand);
        data::write_profile_csv_rows(out, l.scenario + "/grid_load", l.load.grid_load);
    }
    return out.str();
}

std::string forecasts_csv(const std::vector<eval::BacktestResult>& backtests) {
    std::ostringstream out;
    out << "estimator,scenario,day,hour,prediction_kw,actual_kw\n";
    for (const auto& r : backtests) {
        for (const auto& d : r.days) {
            const std::string day = data::format_timestamp(d.start);
            for (std::size_t h = 0; h < data::kHoursPerDay; ++h) {
                out << r.estimator << ',' << r.scenario << ',' << day << ',' << h << ','
                    << format_double(d.predicted[h]) << ',' << format_double(d.actual[h]) << '\n';
            }
        }
    }
    return out.str();
}

std::string metrics_csv(const std::vector<eval::BacktestResult>& backtests) {
    std::ostringstream out;
    out << "scenario,estimator,rmse_kw,mape_pct,mape_excluded\n";
    for (const auto& r : backtests) {
        const eval::MetricReport m = eval::evaluate(r);
        out << r.scenario << ',' << r.estimator << ',' << format_double(m.rmse) << ',' << format_double(m.mape) << ','
            << m.mape_excluded << '\n';
    }
    return out.str();
}

std::string per_hour_rmse_csv(const std::vector<eval::BacktestResult>& backtests) {
    std::ostringstream out;
    out << "scenario,estimator,hour,rmse_kw\n";
    for (const auto& r : backtests) {
        const auto hourly = eval::unfold_rmse_by_hour(r);
        for (std::size_t h = 0; h < hourly.size(); ++h) {
            out << r.scenario << ',' << r.estimator << ',' << h << ',' << format_double(hourly[h]) << '\n';
        }
    }
    return out.str();
}

std::string significance_csv(const std::vector<eval::BacktestResult>& backtests) {
    std::ostringstream out;
    out << "scenario,estimator,baseline,rmse_kw,baseline_rmse_kw,improvement_pct,t_statistic,df,p_value,degenerate\n";
    for (const auto& base : backtests) {
        if (!is_baseline(base)) {
            continue;
        }
        const double base_rmse = eval::evaluate(base).rmse;
        for (const auto& r : backtests) {
            if (r.scenario != base.scenario || is_baseline(r)) {
                continue;
            }
            const double rmse = eval::evaluate(r).rmse;
            const eval::TTestResult t = eval::compare(r, base);
            out << r.scenario << ',' << r.estimator << ',' << base.estimator << ',' << format_double(rmse) << ','
                << format_double(base_rmse) << ','
                << (base_rmse > 0.0 ? format_double(eval::improvement(base_rmse, rmse)) : std::string("nan")) << ','
                << format_double(t.t_statistic) << ',' << format_double(t.degrees_of_freedom) << ','
                << format_double(t.p_value) << ',' << (t.degenerate ? 1 : 0) << '\n';
        }
    }
    return out.str();
}

std::vector<eval::BacktestResult> read_forecasts_csv(std::istream& in) {
    std::string line;
    std::size_t row = 1;
    if (!std::getline(in, line)) {
        throw data::ParseError(1, "missing header");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "estimator,scenario,day,hour,prediction_kw,actual_kw") {
        throw data::ParseError(1, "unexpected header \"" + line + "\"");
    }

    std::vector<eval::BacktestResult> out;
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    std::vector<std::size_t> next_hour;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto f = split_fields(line);
        if (f.size() != 6) {
            throw data::ParseError(row, "expected 6 fields, got " + std::to_string(f.size()));
        }
        const std::pair<std::string, std::string> key{std::string(f[0]), std::string(f[1])};
        auto [it, inserted] = index.try_emplace(key, out.size());
        if (inserted) {
            eval::BacktestResult r;
            r.estimator = key.first;
            r.scenario = key.second;
            out.push_back(std::move(r));
            next_hour.push_back(0);
        }
        eval::BacktestResult& r = out[it->second];
        const std::size_t hour = parse_index(f[3], row, "hour");
        if (hour >= data::kHoursPerDay) {
            throw data::ParseError(row, "hour must be in [0, 23]");
        }
        data::Timestamp start;
        try {
            start = data::parse_timestamp(f[2]);
        } catch (const std::invalid_argument& e) {
            throw data::ParseError(row, std::string("day: ") + e.what());
        }
        if (hour != next_hour[it->second]) {
            throw data::ParseError(row, "expected hour " + std::to_string(next_hour[it->second]) + ", got " +
                                            std::to_string(hour));
        }
        next_hour[it->second] = (hour + 1) % data::kHoursPerDay;
        if (hour == 0) {
            if (!r.days.empty() && start <= r.days.back().start) {
                throw data::ParseError(row, "days of " + key.first + "/" + key.second + " are not increasing");
            }
            eval::DayResult d;
            d.day = r.days.size();
            d.start = start;
            r.days.push_back(d);
        } else if (r.days.empty() || r.days.back().start != start) {
            throw data::ParseError(row, "hour " + std::to_string(hour) + " without the preceding hours of its day");
        }
        eval::DayResult& d = r.days.back();
        d.predicted[hour] = parse_number(f[4], row, "prediction_kw");
        d.actual[hour] = parse_number(f[5], row, "actual_kw");
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (next_hour[i] != 0) {
            throw data::ParseError(row, out[i].estimator + "/" + out[i].scenario + ": last day is incomplete");
        }
    }
    return out;
}

std::vector<ReportFile> render_reports(const RunResults& results, bool plots) {
    std::vector<ReportFile> files;
    if (!results.summaries.empty()) {
        files.push_back({"scenario_summary.csv", scenario_summary_csv(results.summaries)});
    }
    if (!results.loads.empty()) {
        files.push_back({"scenario_loads.csv", scenario_loads_csv(results.loads)});
        if (plots) {
            std::vector<PlotSeries> series;
            for (const auto& l : results.loads) {
                const auto v = l.load.residential_demand.values();
                series.push_back({l.scenario, {v.begin(), v.end()}});
            }
            files.push_back({"residential_demand_violin.svg",
                             violin_svg("Residential demand by scenario", "residential demand (kW)", series)});
        }
    }
    if (!results.backtests.empty()) {
        files.push_back({"forecasts.csv", forecasts_csv(results.backtests)});
        files.push_back({"metrics.csv", metrics_csv(results.backtests)});
        files.push_back({"per_hour_rmse.csv", per_hour_rmse_csv(results.backtests)});
        files.push_back({"significance.csv", significance_csv(results.backtests)});
        if (plots) {
            std::vector<std::string> scenarios;
            for (const auto& r : results.backtests) {
                if (std::find(scenarios.begin(), scenarios.end(), r.scenario) == scenarios.end()) {
                    scenarios.push_back(r.scenario);
                }
            }
            for (const auto& s : scenarios) {
                std::vector<PlotSeries> series;
                for (const auto& r : results.backtests) {
                    if (r.scenario == s) {
                        const auto hourly = eval::unfold_rmse_by_hour(r);
                        series.push_back({r.estimator, {hourly.begin(), hourly.end()}});
                    }
                }
                files.push_back({"per_hour_rmse_" + s + ".svg",
                                 line_chart_svg("RMSE by hour of day, " + s, "hour of day", "RMSE (kW)", series)});
            }
        }
    }
    return files;
}

std::vector<std::string> write_reports(const RunResults& results, const std::filesystem::path& output_dir,
                                       bool plots) {
    if (results.empty()) {
        throw std::invalid_argument("write_reports: nothing to write");
    }
    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + output_dir.string() + ": " + ec.message());
    }
    std::vector<std::string> written;
    for (const auto& f : render_reports(results, plots)) {
        write_file_atomic(output_dir / f.name, f.content);
        written.push_back(f.name);
    }
    return written;
}

} // namespace gridcast::app
