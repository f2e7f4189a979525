#include "gridcast/data/profile_csv.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>

namespace gridcast::data {

namespace {

constexpr std::string_view kHeader = "household_id,timestamp,value_kw";

std::string_view trim_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    return line;
}

struct Pending {
    Timestamp start{};
    Timestamp last{};
    std::vector<double> values;
};

} // namespace

ParseError::ParseError(std::size_t row, const std::string& message)
    : std::runtime_error("row " + std::to_string(row) + ": " + message), row_(row) {}

std::vector<NamedSeries> parse_profile_csv(std::istream& in, ValueSign sign) {
    std::string line;
    std::size_t row = 0;
    if (!std::getline(in, line)) {
        throw ParseError(1, "missing header '" + std::string(kHeader) + "'");
    }
    ++row;
    if (trim_cr(line) != kHeader) {
        throw ParseError(1, "expected header '" + std::string(kHeader) + "'");
    }

    std::vector<std::string> order;
    std::unordered_map<std::string, Pending> pending;
    while (std::getline(in, line)) {
        ++row;
        const std::string_view text = trim_cr(line);
        if (text.empty()) {
            continue;
        }
        const auto c1 = text.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
        if (c2 == std::string_view::npos || text.find(',', c2 + 1) != std::string_view::npos) {
            throw ParseError(row, "expected 3 comma-separated fields");
        }
        const std::string id(text.substr(0, c1));
        if (id.empty()) {
            throw ParseError(row, "empty household_id");
        }
        Timestamp t;
        try {
            t = parse_timestamp(text.substr(c1 + 1, c2 - c1 - 1));
        } catch (const std::invalid_argument& e) {
            throw ParseError(row, e.what());
        }
        if (!is_hour_aligned(t)) {
            throw ParseError(row, "timestamp not aligned to a full hour");
        }
        const std::string_view field = text.substr(c2 + 1);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
            throw ParseError(row, "value_kw '" + std::string(field) + "' is not a finite decimal number");
        }
        if (sign == ValueSign::NonNegative && value < 0.0) {
            throw ParseError(row, "negative demand value " + std::string(field));
        }

        auto [it, inserted] = pending.try_emplace(id);
        Pending& p = it->second;
        if (inserted) {
            order.push_back(id);
            p.start = t;
        } else if (t <= p.last) {
            throw ParseError(row, "timestamps of household '" + id + "' are not increasing");
        } else if (t != p.last + kHour) {
            throw ParseError(row, "gap in household '" + id + "' after " + format_timestamp(p.last));
        }
        p.last = t;
        p.values.push_back(value);
    }

    std::vector<NamedSeries> out;
    out.reserve(order.size());
    for (const auto& id : order) {
        Pending& p = pending.at(id);
        out.push_back({id, HourlyTimeSeries(p.start, std::move(p.values))});
    }
    return out;
}

void write_profile_csv_header(std::ostream& out) {
    out << kHeader << '\n';
}

void write_profile_csv_rows(std::ostream& out, const std::string& id, const HourlyTimeSeries& series) {
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << id << ',' << format_timestamp(series.time_at(i)) << ',' << format_double(series[i]) << '\n';
    }
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf, ptr);
}

} // namespace gridcast::data
