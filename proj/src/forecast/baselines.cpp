#include "gridcast/forecast/baselines.h"

#include <stdexcept>
#include <string>

namespace gridcast::forecast {

using data::CalendarFeatures;

DayValues predict_naive(const HourlyTimeSeries& history, std::size_t target_day, std::size_t offset_days) {
    if (offset_days == 0) {
        throw std::invalid_argument("predict_naive: offset must be >= 1 day");
    }
    if (target_day < offset_days) {
        throw std::invalid_argument("predict_naive: day " + std::to_string(target_day) + " has no history " +
                                    std::to_string(offset_days) + " days earlier");
    }
    const std::size_t first = (target_day - offset_days) * kHoursPerDay;
    if (first + kHoursPerDay > history.size()) {
        throw std::invalid_argument("predict_naive: history ends before the reference day");
    }
    DayValues out{};
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
        out[h] = history[first + h];
    }
    return out;
}

NaiveForecaster::NaiveForecaster(std::size_t offset_days) : offset_days_(offset_days) {
    if (offset_days == 0) {
        throw std::invalid_argument("NaiveForecaster: offset must be >= 1 day");
    }
}

std::string NaiveForecaster::name() const {
    if (offset_days_ == 1) {
        return "BM1";
    }
    if (offset_days_ == 7) {
        return "BM2";
    }
    return "naive-" + std::to_string(offset_days_) + "d";
}

DayForecast NaiveForecaster::predict(const HourlyTimeSeries& context) const {
    const std::size_t day = whole_days(context, "NaiveForecaster");
    return {predict_naive(context, day, offset_days_), false};
}

SlpTable build_slp(const HourlyTimeSeries& history, DayRange training, const data::CalendarConfig& calendar) {
    if (calendar_features(history.start(), calendar).hour_of_day != 0) {
        throw std::invalid_argument("build_slp: series must start at local midnight");
    }
    if (training.days == 0) {
        throw std::invalid_argument("build_slp: empty training range");
    }
    if (training.end_day() * kHoursPerDay > history.size()) {
        throw std::invalid_argument("build_slp: training range leaves the series");
    }
    SlpTable table;
    table.calendar = calendar;
    for (std::size_t d = training.first_day; d < training.end_day(); ++d) {
        const std::size_t first = d * kHoursPerDay;
        const CalendarFeatures f = calendar_features(history.time_at(first), calendar);
        const std::size_t c = SlpTable::cell_index(f.season, f.day_type);
        ++table.day_counts[c];
        for (std::size_t h = 0; h < kHoursPerDay; ++h) {
            table.cells[c][h] += history[first + h];
        }
    }
    for (std::size_t s = 0; s < data::kSeasonCount; ++s) {
        for (std::size_t dt = 0; dt < data::kDayTypeCount; ++dt) {
            const std::size_t c = s * data::kDayTypeCount + dt;
            if (table.day_counts[c] == 0) {
                throw EmptySlpCell("build_slp: no training day for season " +
                                   std::string(to_string(static_cast<data::Season>(s))) + ", day type " +
                                   std::string(to_string(static_cast<data::DayType>(dt))));
            }
            for (double& v : table.cells[c]) {
                v /= static_cast<double>(table.day_counts[c]);
            }
        }
    }
    return table;
}

DayValues predict_slp(const SlpTable& table, data::Timestamp day_start) {
    const CalendarFeatures f = calendar_features(day_start, table.calendar);
    return table.cell(f.season, f.day_type);
}

void SlpForecaster::fit(const HourlyTimeSeries& training) {
    table_ = build_slp(training, {0, whole_days(training, "SlpForecaster")}, calendar_);
}

DayForecast SlpForecaster::predict(const HourlyTimeSeries& context) const {
    return {predict_slp(table(), context.end()), false};
}

const SlpTable& SlpForecaster::table() const {
    if (!table_) {
        throw std::logic_error("SlpForecaster: predict called before fit");
    }
    return *table_;
}

} // namespace gridcast::forecast
