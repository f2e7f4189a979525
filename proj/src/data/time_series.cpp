#include "gridcast/data/time_series.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gridcast::data {

namespace {

bool read_int(std::string_view text, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > text.size()) {
        return false;
    }
    const char* first = text.data() + pos;
    const char* last = first + len;
    for (const char* p = first; p != last; ++p) {
        if (*p < '0' || *p > '9') {
            return false;
        }
    }
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

} // namespace

Timestamp parse_timestamp(std::string_view text) {
    // 2019-01-01T00:00:00Z
    int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
    const bool shape_ok = text.size() == 20 && text[4] == '-' && text[7] == '-' && text[10] == 'T' &&
                          text[13] == ':' && text[16] == ':' && text[19] == 'Z';
    if (!shape_ok || !read_int(text, 0, 4, year) || !read_int(text, 5, 2, month) || !read_int(text, 8, 2, day) ||
        !read_int(text, 11, 2, hour) || !read_int(text, 14, 2, minute) || !read_int(text, 17, 2, second)) {
        throw std::invalid_argument("timestamp '" + std::string(text) + "' is not ISO-8601 UTC (YYYY-MM-DDTHH:MM:SSZ)");
    }
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                                          std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok() || hour > 23 || minute > 59 || second > 59) {
        throw std::invalid_argument("timestamp '" + std::string(text) + "' is out of range");
    }
    return std::chrono::sys_days{ymd} + std::chrono::hours{hour} + std::chrono::minutes{minute} +
           std::chrono::seconds{second};
}

std::string format_timestamp(Timestamp t) {
    const auto day = std::chrono::floor<std::chrono::days>(t);
    const std::chrono::year_month_day ymd{day};
    const std::chrono::hh_mm_ss hms{t - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

Timestamp make_timestamp(int year, unsigned month, unsigned day, unsigned hour) {
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    if (!ymd.ok() || hour > 23) {
        throw std::invalid_argument("invalid calendar date");
    }
    return std::chrono::sys_days{ymd} + std::chrono::hours{hour};
}

bool is_hour_aligned(Timestamp t) {
    return t.time_since_epoch().count() % 3600 == 0;
}

HourlyTimeSeries::HourlyTimeSeries(Timestamp start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
    if (!is_hour_aligned(start_)) {
        throw std::invalid_argument("series start " + format_timestamp(start_) + " is not aligned to a full hour");
    }
    if (values_.empty()) {
        throw std::invalid_argument("hourly series must hold at least one value");
    }
}

HourlyTimeSeries HourlyTimeSeries::slice(std::size_t first, std::size_t count) const {
    if (first + count > values_.size() || count == 0) {
        throw std::out_of_range("series slice outside horizon");
    }
    return HourlyTimeSeries(time_at(first), std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(first),
                                                                values_.begin() +
                                                                    static_cast<std::ptrdiff_t>(first + count)));
}

void require_nonnegative(const HourlyTimeSeries& series, std::string_view what) {
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!(series[i] >= 0.0) || !std::isfinite(series[i])) {
            throw std::invalid_argument(std::string(what) + ": value at " + format_timestamp(series.time_at(i)) +
                                        " must be finite and nonnegative");
        }
    }
}

void require_same_axis(const HourlyTimeSeries& a, const HourlyTimeSeries& b, std::string_view what) {
    if (!a.same_axis(b)) {
        throw std::invalid_argument(std::string(what) + ": horizon mismatch (" + format_timestamp(a.start()) + " +" +
                                    std::to_string(a.size()) + "h vs " + format_timestamp(b.start()) + " +" +
                                    std::to_string(b.size()) + "h)");
    }
}

} // namespace gridcast::data
