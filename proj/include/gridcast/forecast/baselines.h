#pragma once

#include <array>
#include <optional>

#include "gridcast/data/calendar.h"
#include "gridcast/forecast/forecaster.h"
#include "gridcast/forecast/windows.h"

namespace gridcast::forecast {

/// The 24 values `offset_days` before `target_day`. Only days before `target_day` are read.
/// Throws std::invalid_argument when the history does not reach back that far.
DayValues predict_naive(const HourlyTimeSeries& history, std::size_t target_day, std::size_t offset_days);

/// BM1 (offset 1, "day before") and BM2 (offset 7, "week before").
class NaiveForecaster final : public Forecaster {
public:
    explicit NaiveForecaster(std::size_t offset_days);

    std::string name() const override;
    void fit(const HourlyTimeSeries&) override {}
    DayForecast predict(const HourlyTimeSeries& context) const override;

private:
    std::size_t offset_days_;
};

/// Mean 24-hour profile per (season, day type) cell, indexed season * 3 + day type.
struct SlpTable {
    std::array<DayValues, data::kSeasonCount * data::kDayTypeCount> cells{};
    std::array<std::size_t, data::kSeasonCount * data::kDayTypeCount> day_counts{};
    data::CalendarConfig calendar;

    static std::size_t cell_index(data::Season s, data::DayType d) {
        return static_cast<std::size_t>(s) * data::kDayTypeCount + static_cast<std::size_t>(d);
    }
    const DayValues& cell(data::Season s, data::DayType d) const { return cells[cell_index(s, d)]; }
};

class EmptySlpCell : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Averages the training days of every cell. The series start must be a local midnight.
/// Throws EmptySlpCell naming the first cell without any training day.
SlpTable build_slp(const HourlyTimeSeries& history, DayRange training, const data::CalendarConfig& calendar = {});

/// Profile of the cell the day starting at `day_start` falls into.
DayValues predict_slp(const SlpTable& table, data::Timestamp day_start);

class SlpForecaster final : public Forecaster {
public:
    explicit SlpForecaster(data::CalendarConfig calendar = {}) : calendar_(calendar) {}

    std::string name() const override { return "SLP"; }
    void fit(const HourlyTimeSeries& training) override;
    DayForecast predict(const HourlyTimeSeries& context) const override;

    const SlpTable& table() const;

private:
    data::CalendarConfig calendar_;
    std::optional<SlpTable> table_;
};

} // namespace gridcast::forecast
