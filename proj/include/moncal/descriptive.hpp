#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "moncal/error.hpp"
#include "moncal/ingest.hpp"
#include "moncal/special.hpp"

namespace moncal {

enum class IntervalKind {
    Normal,    // mean +/- z * se, the convention of the published monthly tables
    StudentT,  // mean +/- t(n-1) * se
};

enum class Tendency { Positive, Negative };

inline const char* to_string(Tendency t) { return t == Tendency::Positive ? "Positive" : "Negative"; }

struct SeriesStats {
    std::size_t count = 0;
    double minimum = 0.0;
    double maximum = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double std_dev = 0.0;
    double lcl = 0.0;
    double ucl = 0.0;
    double confidence_level = 0.95;
};

struct MonthGroupStats {
    int month = 0;
    std::size_t count = 0;
    double mean = 0.0;
    double std_dev = 0.0;
    double se_mean = 0.0;
    double lcl = 0.0;
    double ucl = 0.0;
    Tendency tendency = Tendency::Negative;
    bool significant = false;
};

struct IntervalOptions {
    double confidence_level = 0.95;
    IntervalKind kind = IntervalKind::Normal;
};

namespace detail {

inline void check_level(double level) {
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("confidence level must lie in (0, 1)");
}

inline double sample_mean(std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// n-1 denominator, two-pass.
inline double sample_sd(std::span<const double> x, double mean) {
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

inline double median(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();
    return n % 2 == 1 ? x[n / 2] : 0.5 * (x[n / 2 - 1] + x[n / 2]);
}

}  // namespace detail

/// Two-sided critical value for the given level.
inline double critical_value(const IntervalOptions& opt, std::size_t n) {
    detail::check_level(opt.confidence_level);
    const double p = 0.5 + 0.5 * opt.confidence_level;
    if (opt.kind == IntervalKind::Normal) return special::normal_quantile(p);
    return special::student_t_quantile(p, static_cast<double>(n - 1));
}

inline SeriesStats series_summary(std::span<const double> returns, const IntervalOptions& opt = {}) {
    detail::check_level(opt.confidence_level);
    if (returns.size() < 2) throw InsufficientDataError("series summary needs at least 2 returns");
    SeriesStats s;
    s.count = returns.size();
    s.confidence_level = opt.confidence_level;
    const auto [lo, hi] = std::minmax_element(returns.begin(), returns.end());
    s.minimum = *lo;
    s.maximum = *hi;
    s.mean = detail::sample_mean(returns);
    s.median = detail::median({returns.begin(), returns.end()});
    s.std_dev = detail::sample_sd(returns, s.mean);
    const double margin = critical_value(opt, s.count) * s.std_dev / std::sqrt(static_cast<double>(s.count));
    s.lcl = s.mean - margin;
    s.ucl = s.mean + margin;
    return s;
}

/// CI from sufficient statistics; used to reproduce published rows that only print mean and SE.
inline MonthGroupStats group_from_moments(int month, std::size_t count, double mean, double se_mean,
                                          const IntervalOptions& opt = {}) {
    MonthGroupStats g;
    g.month = month;
    g.count = count;
    g.mean = mean;
    g.se_mean = se_mean;
    g.std_dev = se_mean * std::sqrt(static_cast<double>(count));
    const double margin = critical_value(opt, count) * se_mean;
    g.lcl = mean - margin;
    g.ucl = mean + margin;
    g.tendency = mean > 0.0 ? Tendency::Positive : Tendency::Negative;
    g.significant = g.lcl > 0.0 || g.ucl < 0.0;
    return g;
}

/// Per-calendar-month statistics. `months[i]` is the calendar month of `returns[i]`.
inline std::array<MonthGroupStats, 12> monthly_summary(std::span<const double> returns, std::span<const int> months,
                                                       const IntervalOptions& opt = {}) {
    detail::check_level(opt.confidence_level);
    if (returns.size() != months.size()) throw ConsistencyError("returns and months differ in length");
    std::array<std::vector<double>, 12> groups;
    for (std::size_t i = 0; i < returns.size(); ++i) {
        check_month(months[i]);
        groups[static_cast<std::size_t>(months[i] - 1)].push_back(returns[i]);
    }
    std::array<MonthGroupStats, 12> out;
    for (int m = 1; m <= 12; ++m) {
        const auto& g = groups[static_cast<std::size_t>(m - 1)];
        if (g.size() < 2)
            throw InsufficientDataError(month_name(m) + " has " + std::to_string(g.size()) +
                                        " returns; at least 2 are needed");
        const double mean = detail::sample_mean(g);
        const double sd = detail::sample_sd(g, mean);
        auto row = group_from_moments(m, g.size(), mean, sd / std::sqrt(static_cast<double>(g.size())), opt);
        row.std_dev = sd;
        out[static_cast<std::size_t>(m - 1)] = row;
    }
    return out;
}

inline std::array<MonthGroupStats, 12> monthly_summary(const MonthlyPanel& panel, const IntervalOptions& opt = {}) {
    const auto r = panel.returns();
    const auto m = panel.return_months();
    return monthly_summary(r, m, opt);
}

}  // namespace moncal
