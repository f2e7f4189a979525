#pragma once

#include <string>
#include <vector>

namespace gridcast::app {

struct PlotSeries {
    std::string name;
    std::vector<double> values;
};

/// Lines over x = 0, 1, ..., n - 1 with a legend.
std::string line_chart_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<PlotSeries>& series);

/// One mirrored kernel-density outline per series, median marked.
std::string violin_svg(const std::string& title, const std::string& y_label, const std::vector<PlotSeries>& series);

} // namespace gridcast::app
