#include "gridcast/app/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace gridcast::app {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 160;
constexpr double kTop = 40;
constexpr double kBottom = 50;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

/// Rounds the span up to 1, 2 or 5 times a power of ten and returns the tick step.
double nice_step(double span, int ticks) {
    if (!(span > 0.0)) {
        return 1.0;
    }
    const double raw = span / ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    return (f <= 1.0 ? 1.0 : f <= 2.0 ? 2.0 : f <= 5.0 ? 5.0 : 10.0) * mag;
}

struct Frame {
    double y_min = 0.0;
    double y_max = 1.0;

    double plot_w() const { return kWidth - kLeft - kRight; }
    double plot_h() const { return kHeight - kTop - kBottom; }
    double y(double v) const { return kTop + plot_h() * (1.0 - (v - y_min) / (y_max - y_min)); }
};

Frame frame_for(double lo, double hi) {
    Frame f;
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        return f;
    }
    if (hi <= lo) {
        hi = lo + 1.0;
    }
    const double step = nice_step(hi - lo, 5);
    f.y_min = std::floor(lo / step) * step;
    f.y_max = std::ceil(hi / step) * step;
    if (f.y_max <= f.y_min) {
        f.y_max = f.y_min + step;
    }
    return f;
}

void header(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
        << "</text>\n";
}

void y_axis(std::ostringstream& out, const Frame& f, const std::string& label) {
    const double step = nice_step(f.y_max - f.y_min, 5);
    for (double v = f.y_min; v <= f.y_max + 1e-9 * step; v += step) {
        const double y = f.y(v);
        out << "<line x1=\"" << num(kLeft) << "\" x2=\"" << num(kLeft + f.plot_w()) << "\" y1=\"" << num(y)
            << "\" y2=\"" << num(y) << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << num(v)
            << "</text>\n";
    }
    out << "<text transform=\"translate(18," << num(kTop + f.plot_h() / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(label) << "</text>\n";
    out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(f.plot_w()) << "\" height=\""
        << num(f.plot_h()) << "\" fill=\"none\" stroke=\"#444\"/>\n";
}

void legend_entry(std::ostringstream& out, std::size_t i, const std::string& name) {
    const double y = kTop + 10 + 20 * static_cast<double>(i);
    const double x = kWidth - kRight + 15;
    const char* colour = kPalette[i % std::size(kPalette)];
    out << "<line x1=\"" << num(x) << "\" x2=\"" << num(x + 20) << "\" y1=\"" << num(y) << "\" y2=\"" << num(y)
        << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << num(x + 26) << "\" y=\"" << num(y + 4) << "\">" << escape(name) << "</text>\n";
}

} // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<PlotSeries>& series) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t n = 0;
    for (const auto& s : series) {
        for (double v : s.values) {
            if (std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        n = std::max(n, s.values.size());
    }
    Frame f = frame_for(std::min(lo, 0.0), hi);
    const double dx = n > 1 ? f.plot_w() / static_cast<double>(n - 1) : 0.0;

    std::ostringstream out;
    header(out, title);
    y_axis(out, f, y_label);
    for (std::size_t i = 0; i < n; ++i) {
        out << "<text x=\"" << num(kLeft + dx * static_cast<double>(i)) << "\" y=\""
            << num(kTop + f.plot_h() + 16) << "\" text-anchor=\"middle\">" << i << "</text>\n";
    }
    out << "<text x=\"" << num(kLeft + f.plot_w() / 2) << "\" y=\"" << num(kHeight - 10)
        << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        out << "<polyline fill=\"none\" stroke-width=\"2\" stroke=\"" << kPalette[k % std::size(kPalette)]
            << "\" points=\"";
        for (std::size_t i = 0; i < series[k].values.size(); ++i) {
            const double v = series[k].values[i];
            if (std::isfinite(v)) {
                out << num(kLeft + dx * static_cast<double>(i)) << ',' << num(f.y(v)) << ' ';
            }
        }
        out << "\"/>\n";
        legend_entry(out, k, series[k].name);
    }
    out << "</svg>\n";
    return out.str();
}

std::string violin_svg(const std::string& title, const std::string& y_label, const std::vector<PlotSeries>& series) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : series) {
        for (double v : s.values) {
            if (std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    Frame f = frame_for(std::min(lo, 0.0), hi);
    const double slot = series.empty() ? f.plot_w() : f.plot_w() / static_cast<double>(series.size());
    constexpr int kGrid = 64;

    std::ostringstream out;
    header(out, title);
    y_axis(out, f, y_label);
    for (std::size_t k = 0; k < series.size(); ++k) {
        std::vector<double> v;
        for (double x : series[k].values) {
            if (std::isfinite(x)) {
                v.push_back(x);
            }
        }
        const double centre = kLeft + slot * (static_cast<double>(k) + 0.5);
        out << "<text x=\"" << num(centre) << "\" y=\"" << num(kTop + f.plot_h() + 16) << "\" text-anchor=\"middle\">"
            << escape(series[k].name) << "</text>\n";
        if (v.size() < 2) {
            continue;
        }
        std::sort(v.begin(), v.end());
        const double n = static_cast<double>(v.size());
        double mean = 0.0;
        for (double x : v) {
            mean += x;
        }
        mean /= n;
        double var = 0.0;
        for (double x : v) {
            var += (x - mean) * (x - mean);
        }
        const double sd = std::sqrt(var / n);
        // Silverman's rule of thumb
        const double bw = std::max(1.06 * sd * std::pow(n, -0.2), 1e-9 * std::max(1.0, std::abs(mean)));

        std::vector<double> ys(kGrid);
        std::vector<double> density(kGrid, 0.0);
        double peak = 0.0;
        for (int g = 0; g < kGrid; ++g) {
            ys[g] = v.front() + (v.back() - v.front()) * g / (kGrid - 1);
            // samples farther than 4 bandwidths contribute < 4e-4 of the peak
            const auto first = std::lower_bound(v.begin(), v.end(), ys[g] - 4 * bw);
            const auto last = std::upper_bound(v.begin(), v.end(), ys[g] + 4 * bw);
            for (auto it = first; it != last; ++it) {
                const double z = (ys[g] - *it) / bw;
                density[g] += std::exp(-0.5 * z * z);
            }
            peak = std::max(peak, density[g]);
        }
        const double half = 0.42 * slot;
        const char* colour = kPalette[k % std::size(kPalette)];
        out << "<polygon fill=\"" << colour << "\" fill-opacity=\"0.5\" stroke=\"" << colour << "\" points=\"";
        for (int g = 0; g < kGrid; ++g) {
            out << num(centre + half * density[g] / peak) << ',' << num(f.y(ys[g])) << ' ';
        }
        for (int g = kGrid; g-- > 0;) {
            out << num(centre - half * density[g] / peak) << ',' << num(f.y(ys[g])) << ' ';
        }
        out << "\"/>\n";
        const std::size_t m = v.size() / 2;
        const double median = v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
        out << "<line x1=\"" << num(centre - half / 3) << "\" x2=\"" << num(centre + half / 3) << "\" y1=\""
            << num(f.y(median)) << "\" y2=\"" << num(f.y(median)) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace gridcast::app
