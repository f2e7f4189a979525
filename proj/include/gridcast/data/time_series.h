#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gridcast::data {

/// UTC instant with one-second resolution. Series timestamps are always whole hours.
using Timestamp = std::chrono::sys_seconds;

constexpr std::chrono::hours kHour{1};
constexpr std::size_t kHoursPerDay = 24;

/// Parses `YYYY-MM-DDTHH:MM:SSZ`. Throws std::invalid_argument on anything else.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

Timestamp make_timestamp(int year, unsigned month, unsigned day, unsigned hour = 0);

bool is_hour_aligned(Timestamp t);

/// Uniformly sampled hourly power values in kW. Index i is exactly start + i hours.
class HourlyTimeSeries {
public:
    HourlyTimeSeries() = default;
    HourlyTimeSeries(Timestamp start, std::vector<double> values);

    Timestamp start() const { return start_; }
    Timestamp time_at(std::size_t index) const { return start_ + std::chrono::hours(index); }
    Timestamp end() const { return time_at(values_.size()); }

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }
    std::vector<double>& mutable_values() { return values_; }

    /// Sub-range [first, first + count) as its own series.
    HourlyTimeSeries slice(std::size_t first, std::size_t count) const;

    bool same_axis(const HourlyTimeSeries& other) const {
        return start_ == other.start_ && values_.size() == other.values_.size();
    }

    friend bool operator==(const HourlyTimeSeries&, const HourlyTimeSeries&) = default;

private:
    Timestamp start_{};
    std::vector<double> values_;
};

/// Throws std::invalid_argument naming `what` if any value is negative or not finite.
void require_nonnegative(const HourlyTimeSeries& series, std::string_view what);

/// Throws std::invalid_argument unless both series share start and length.
void require_same_axis(const HourlyTimeSeries& a, const HourlyTimeSeries& b, std::string_view what);

} // namespace gridcast::data
