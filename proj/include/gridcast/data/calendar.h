#pragma once

#include <array>
#include <string_view>

#include "gridcast/data/time_series.h"

namespace gridcast::data {

enum class DayType { Weekday = 0, Saturday = 1, Sunday = 2 };
enum class Season { Winter = 0, Summer = 1, Transition = 2 };

constexpr std::size_t kDayTypeCount = 3;
constexpr std::size_t kSeasonCount = 3;

std::string_view to_string(DayType d);
std::string_view to_string(Season s);

struct MonthDay {
    unsigned month = 1;
    unsigned day = 1;

    friend auto operator<=>(const MonthDay&, const MonthDay&) = default;
};

/// Inclusive date ranges; Winter wraps over the new year. Anything outside both is Transition.
struct SeasonCalendar {
    MonthDay winter_first{11, 1};
    MonthDay winter_last{3, 20};
    MonthDay summer_first{5, 15};
    MonthDay summer_last{9, 14};
};

struct CalendarConfig {
    SeasonCalendar seasons;
    /// Fixed offset applied before deriving local calendar fields.
    int utc_offset_hours = 0;
};

struct CalendarFeatures {
    DayType day_type = DayType::Weekday;
    Season season = Season::Transition;
    unsigned hour_of_day = 0;

    friend bool operator==(const CalendarFeatures&, const CalendarFeatures&) = default;
};

CalendarFeatures calendar_features(Timestamp t, const CalendarConfig& config = {});

Season season_of(MonthDay date, const SeasonCalendar& seasons);

/// Day of year in [1, 366] for the local date of `t`.
unsigned day_of_year(Timestamp t, int utc_offset_hours = 0);

} // namespace gridcast::data
