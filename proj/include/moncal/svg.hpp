#pragma once

// Seasonal analysis figure: detrended values by month with the seasonal index, and
// per-month boxplots of the irregular component.

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "moncal/decompose.hpp"

namespace moncal {

namespace detail {

struct Box {
    double lo, q1, med, q3, hi;
};

inline double quantile_sorted(const std::vector<double>& v, double p) {
    const double h = (static_cast<double>(v.size()) - 1.0) * p;
    const auto i = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(i);
    return i + 1 < v.size() ? v[i] + frac * (v[i + 1] - v[i]) : v[i];
}

inline Box box_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return {v.front(), quantile_sorted(v, 0.25), quantile_sorted(v, 0.5), quantile_sorted(v, 0.75), v.back()};
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace detail

inline std::string seasonal_svg(const DecompositionResult& d, const std::string& symbol) {
    constexpr double W = 960, H = 420, panel_w = 440, top = 50, plot_h = 320, left0 = 50, left1 = 510;
    std::array<std::vector<double>, 12> detr, irr;
    for (std::size_t i = 0; i < d.months.size(); ++i) {
        detr[static_cast<std::size_t>(d.months[i] - 1)].push_back(d.detrended[i]);
        irr[static_cast<std::size_t>(d.months[i] - 1)].push_back(d.irregular[i]);
    }
    auto range_of = [](const std::array<std::vector<double>, 12>& g, double extra_lo, double extra_hi) {
        double lo = extra_lo, hi = extra_hi;
        for (const auto& v : g)
            for (double x : v) {
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.05 * (hi - lo);
        return std::pair{lo - pad, hi + pad};
    };
    double smin = *std::min_element(d.seasonal_index.begin(), d.seasonal_index.end());
    double smax = *std::max_element(d.seasonal_index.begin(), d.seasonal_index.end());
    const auto [dlo, dhi] = range_of(detr, smin, smax);
    const auto [ilo, ihi] = range_of(irr, d.mode == DecompositionMode::Multiplicative ? 1.0 : 0.0,
                                     d.mode == DecompositionMode::Multiplicative ? 1.0 : 0.0);

    auto xpos = [&](double left, int month) { return left + (month - 0.5) * panel_w / 12.0; };
    auto ypos = [&](double v, double lo, double hi) { return top + plot_h * (1.0 - (v - lo) / (hi - lo)); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << (symbol.empty() ? "Index" : symbol)
       << " seasonal analysis (" << to_string(d.mode) << ")</text>\n";

    auto frame = [&](double left, double lo, double hi, const char* title) {
        os << "<text x=\"" << left + panel_w / 2 << "\" y=\"" << top - 10 << "\" text-anchor=\"middle\">" << title << "</text>\n";
        os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << panel_w << "\" height=\"" << plot_h
           << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int m = 1; m <= 12; ++m)
            os << "<text x=\"" << detail::num(xpos(left, m)) << "\" y=\"" << top + plot_h + 15
               << "\" text-anchor=\"middle\">" << month_abbrev(m) << "</text>\n";
        for (double v : {lo, 0.5 * (lo + hi), hi})
            os << "<text x=\"" << left - 4 << "\" y=\"" << detail::num(ypos(v, lo, hi) + 4) << "\" text-anchor=\"end\">"
               << detail::num(v) << "</text>\n";
    };

    frame(left0, dlo, dhi, "Detrended data by month");
    for (int m = 1; m <= 12; ++m) {
        for (double v : detr[static_cast<std::size_t>(m - 1)])
            os << "<circle cx=\"" << detail::num(xpos(left0, m)) << "\" cy=\"" << detail::num(ypos(v, dlo, dhi))
               << "\" r=\"2.5\" fill=\"steelblue\" fill-opacity=\"0.6\"/>\n";
    }
    os << "<polyline fill=\"none\" stroke=\"firebrick\" stroke-width=\"2\" points=\"";
    for (int m = 1; m <= 12; ++m)
        os << detail::num(xpos(left0, m)) << ',' << detail::num(ypos(d.seasonal_at(m), dlo, dhi)) << ' ';
    os << "\"/>\n";

    frame(left1, ilo, ihi, "Residuals (irregular) by month");
    const double bw = panel_w / 12.0 * 0.5;
    for (int m = 1; m <= 12; ++m) {
        const auto& v = irr[static_cast<std::size_t>(m - 1)];
        if (v.empty()) continue;
        const auto b = detail::box_of(v);
        const double x = xpos(left1, m);
        auto y = [&](double val) { return detail::num(ypos(val, ilo, ihi)); };
        os << "<line x1=\"" << detail::num(x) << "\" x2=\"" << detail::num(x) << "\" y1=\"" << y(b.lo) << "\" y2=\""
           << y(b.hi) << "\" stroke=\"black\"/>\n";
        os << "<rect x=\"" << detail::num(x - bw / 2) << "\" y=\"" << y(b.q3) << "\" width=\"" << detail::num(bw)
           << "\" height=\"" << detail::num(ypos(b.q1, ilo, ihi) - ypos(b.q3, ilo, ihi))
           << "\" fill=\"lightgray\" stroke=\"black\"/>\n";
        os << "<line x1=\"" << detail::num(x - bw / 2) << "\" x2=\"" << detail::num(x + bw / 2) << "\" y1=\"" << y(b.med)
           << "\" y2=\"" << y(b.med) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace moncal
