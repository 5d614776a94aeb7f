#pragma once

// Classical decomposition of monthly index levels into a linear trend, twelve
// seasonal indices and an irregular component. The cycle component is not modelled.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "moncal/error.hpp"
#include "moncal/ingest.hpp"

namespace moncal {

enum class DecompositionMode { Additive, Multiplicative };

inline const char* to_string(DecompositionMode m) {
    return m == DecompositionMode::Additive ? "Additive" : "Multiplicative";
}

enum class SeasonalStatistic { Median, Mean };

/// value(t) = intercept + slope * t, with t = 1 at the first observation.
struct TrendLine {
    double intercept = 0.0;
    double slope = 0.0;
    int first_t = 1;

    double at(int t) const { return intercept + slope * t; }
};

struct DecompositionResult {
    DecompositionMode mode = DecompositionMode::Multiplicative;
    TrendLine trend;
    std::array<double, 12> seasonal_index{};  // by calendar month; factors or additive effects
    std::vector<int> months;                  // calendar month of each observation
    std::vector<double> observed;
    std::vector<double> trend_values;
    std::vector<double> detrended;
    std::vector<double> fitted;
    std::vector<double> irregular;
    double mse = 0.0;
    double mad = 0.0;
    double mape = 0.0;

    double seasonal_at(int month) const { return seasonal_index[static_cast<std::size_t>(month - 1)]; }
};

struct DecomposeOptions {
    DecompositionMode mode = DecompositionMode::Multiplicative;
    SeasonalStatistic statistic = SeasonalStatistic::Median;
};

inline constexpr std::size_t kMinDecompositionMonths = 24;

namespace detail {

inline double center_value(std::vector<double> v, SeasonalStatistic stat) {
    if (stat == SeasonalStatistic::Mean) return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline TrendLine fit_trend(std::span<const double> y) {
    const double n = static_cast<double>(y.size());
    const double tbar = (n + 1.0) / 2.0;
    const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double dt = static_cast<double>(i + 1) - tbar;
        stt += dt * dt;
        sty += dt * (y[i] - ybar);
    }
    TrendLine line;
    line.slope = sty / stt;
    line.intercept = ybar - line.slope * tbar;
    return line;
}

}  // namespace detail

/// `months[i]` is the calendar month of `closes[i]`; the series must be consecutive months.
inline DecompositionResult decompose(std::span<const double> closes, std::span<const int> months,
                                     const DecomposeOptions& opt = {}) {
    if (closes.size() != months.size()) throw ConsistencyError("closes and months differ in length");
    if (closes.size() < kMinDecompositionMonths)
        throw InsufficientDataError("decomposition needs at least 24 consecutive months, got " +
                                    std::to_string(closes.size()));
    const bool mult = opt.mode == DecompositionMode::Multiplicative;
    const std::size_t n = closes.size();

    DecompositionResult res;
    res.mode = opt.mode;
    res.observed.assign(closes.begin(), closes.end());
    res.months.assign(months.begin(), months.end());
    for (int m : res.months) check_month(m);
    if (mult)
        for (double c : closes)
            if (!(c > 0.0)) throw DomainError("multiplicative decomposition requires positive closes");

    res.trend = detail::fit_trend(closes);
    res.trend_values.resize(n);
    res.detrended.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double tr = res.trend.at(static_cast<int>(i) + 1);
        if (mult && !(tr > 0.0))
            throw DomainError("trend value at t=" + std::to_string(i + 1) +
                              " is not positive; multiplicative decomposition undefined");
        res.trend_values[i] = tr;
        res.detrended[i] = mult ? closes[i] / tr : closes[i] - tr;
    }

    std::array<std::vector<double>, 12> by_month;
    for (std::size_t i = 0; i < n; ++i) by_month[static_cast<std::size_t>(months[i] - 1)].push_back(res.detrended[i]);
    std::array<double, 12> raw{};
    for (std::size_t m = 0; m < 12; ++m) raw[m] = detail::center_value(by_month[m], opt.statistic);
    const double avg = std::accumulate(raw.begin(), raw.end(), 0.0) / 12.0;
    for (std::size_t m = 0; m < 12; ++m) {
        res.seasonal_index[m] = mult ? raw[m] / avg : raw[m] - avg;
        if (mult && !(res.seasonal_index[m] > 0.0))
            throw DomainError("nonpositive seasonal index for " + month_name(static_cast<int>(m) + 1));
    }

    res.fitted.resize(n);
    res.irregular.resize(n);
    double sse = 0.0, sae = 0.0, sape = 0.0;
    std::size_t n_ape = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = res.seasonal_at(months[i]);
        res.fitted[i] = mult ? res.trend_values[i] * s : res.trend_values[i] + s;
        res.irregular[i] = mult ? closes[i] / res.fitted[i] : closes[i] - res.fitted[i];
        const double e = closes[i] - res.fitted[i];
        sse += e * e;
        sae += std::fabs(e);
        if (closes[i] != 0.0) {
            sape += std::fabs(e / closes[i]);
            ++n_ape;
        }
    }
    res.mse = sse / static_cast<double>(n);
    res.mad = sae / static_cast<double>(n);
    res.mape = n_ape ? 100.0 * sape / static_cast<double>(n_ape) : 0.0;
    return res;
}

inline DecompositionResult decompose(const MonthlyPanel& panel, const DecomposeOptions& opt = {}) {
    std::vector<int> months;
    months.reserve(panel.rows.size());
    for (const auto& r : panel.rows) months.push_back(r.month);
    const auto closes = panel.closes();
    return decompose(closes, months, opt);
}

struct ModeSelection {
    DecompositionMode selected = DecompositionMode::Multiplicative;
    DecompositionResult additive;
    DecompositionResult multiplicative;

    const DecompositionResult& chosen() const {
        return selected == DecompositionMode::Additive ? additive : multiplicative;
    }
};

/// Runs both modes and keeps the one with the lower MSE; ties go to Multiplicative.
inline ModeSelection select_mode(const MonthlyPanel& panel, SeasonalStatistic stat = SeasonalStatistic::Median) {
    ModeSelection sel;
    sel.additive = decompose(panel, {DecompositionMode::Additive, stat});
    sel.multiplicative = decompose(panel, {DecompositionMode::Multiplicative, stat});
    double level = 0.0;
    for (double c : sel.additive.observed) level = std::max(level, c * c);
    const double tie_tol = 1e-12 * level;
    sel.selected = sel.additive.mse < sel.multiplicative.mse - tie_tol ? DecompositionMode::Additive
                                                                       : DecompositionMode::Multiplicative;
    return sel;
}

/// Sign rule for reporting: index above 1 (multiplicative) or effect above 0 (additive) is positive.
inline bool seasonal_positive(const DecompositionResult& r, int month) {
    const double v = r.seasonal_at(month);
    return r.mode == DecompositionMode::Multiplicative ? v > 1.0 : v > 0.0;
}

}  // namespace moncal
