#include "gridcast/forecast/forecaster.h"

#include <cmath>
#include <stdexcept>

namespace gridcast::forecast {

std::size_t whole_days(const HourlyTimeSeries& series, const char* what) {
    if (series.size() % kHoursPerDay != 0) {
        throw std::invalid_argument(std::string(what) + ": series length " + std::to_string(series.size()) +
                                    " is not a whole number of days");
    }
    return series.size() / kHoursPerDay;
}

void clip_nonnegative(DayValues& values) {
    for (double& v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            v = 0.0;
        }
    }
}

} // namespace gridcast::forecast
