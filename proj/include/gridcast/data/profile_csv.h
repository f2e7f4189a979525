#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gridcast/data/time_series.h"

namespace gridcast::data {

/// CSV problem tied to a 1-based file row (the header is row 1).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t row, const std::string& message);
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

struct NamedSeries {
    std::string id;
    HourlyTimeSeries series;
};

enum class ValueSign { NonNegative, Signed };

/// Reads `household_id,timestamp,value_kw`. Households come back in order of first appearance.
/// Rows of different households may interleave; within one household time must advance by
/// exactly one hour per row.
std::vector<NamedSeries> parse_profile_csv(std::istream& in, ValueSign sign = ValueSign::NonNegative);

void write_profile_csv_header(std::ostream& out);
void write_profile_csv_rows(std::ostream& out, const std::string& id, const HourlyTimeSeries& series);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

} // namespace gridcast::data
