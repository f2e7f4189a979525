#include "gridcast/data/calendar.h"

#include <stdexcept>

namespace gridcast::data {

std::string_view to_string(DayType d) {
    switch (d) {
    case DayType::Weekday: return "Weekday";
    case DayType::Saturday: return "Saturday";
    case DayType::Sunday: return "Sunday";
    }
    return "?";
}

std::string_view to_string(Season s) {
    switch (s) {
    case Season::Winter: return "Winter";
    case Season::Summer: return "Summer";
    case Season::Transition: return "Transition";
    }
    return "?";
}

Season season_of(MonthDay date, const SeasonCalendar& seasons) {
    const auto in_range = [&](MonthDay first, MonthDay last) {
        if (first <= last) {
            return first <= date && date <= last;
        }
        return date >= first || date <= last;
    };
    if (in_range(seasons.winter_first, seasons.winter_last)) {
        return Season::Winter;
    }
    if (in_range(seasons.summer_first, seasons.summer_last)) {
        return Season::Summer;
    }
    return Season::Transition;
}

CalendarFeatures calendar_features(Timestamp t, const CalendarConfig& config) {
    if (!is_hour_aligned(t)) {
        throw std::invalid_argument("calendar_features: timestamp not aligned to a full hour");
    }
    const Timestamp local = t + std::chrono::hours(config.utc_offset_hours);
    const auto day = std::chrono::floor<std::chrono::days>(local);
    const std::chrono::year_month_day ymd{day};
    const std::chrono::weekday wd{day};

    CalendarFeatures f;
    f.hour_of_day = static_cast<unsigned>(std::chrono::duration_cast<std::chrono::hours>(local - day).count());
    if (wd == std::chrono::Saturday) {
        f.day_type = DayType::Saturday;
    } else if (wd == std::chrono::Sunday) {
        f.day_type = DayType::Sunday;
    } else {
        f.day_type = DayType::Weekday;
    }
    f.season = season_of({static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day())}, config.seasons);
    return f;
}

unsigned day_of_year(Timestamp t, int utc_offset_hours) {
    const auto day = std::chrono::floor<std::chrono::days>(t + std::chrono::hours(utc_offset_hours));
    const std::chrono::year_month_day ymd{day};
    const std::chrono::sys_days jan1{ymd.year() / std::chrono::January / 1};
    return static_cast<unsigned>((day - jan1).count()) + 1;
}

} // namespace gridcast::data
