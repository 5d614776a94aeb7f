#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "moncal/error.hpp"

namespace moncal {

struct CorrelogramRow {
    int lag = 0;
    double value = 0.0;
    double band = 0.0;  // +/- 1.96 / sqrt(n)
};

/// x_t = delta + phi1 * x_{t-1} + w_t
struct Ar1Fit {
    double delta = 0.0;
    double phi1 = 0.0;
    double residual_sd = 0.0;
};

namespace detail {

inline void check_lags(std::size_t n, int max_lag) {
    if (max_lag < 1) throw ConfigError("max_lag must be at least 1");
    if (static_cast<std::size_t>(max_lag) >= n)
        throw ConfigError("max_lag (" + std::to_string(max_lag) + ") must be below the series length (" +
                          std::to_string(n) + ")");
}

// r_0..r_max_lag with the full-series denominator.
inline std::vector<double> autocorrelations(std::span<const double> x, int max_lag) {
    const std::size_t n = x.size();
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double denom = 0.0;
    for (double v : x) denom += (v - mean) * (v - mean);
    // relative to the scale of the data, so that large constant levels still count as constant
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::fabs(v));
    if (denom <= 1e-28 * scale * scale * static_cast<double>(n) || denom == 0.0)
        throw DegenerateSeriesError("series is constant; autocorrelation undefined");
    std::vector<double> r(static_cast<std::size_t>(max_lag) + 1);
    r[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + static_cast<std::size_t>(k) < n; ++t)
            num += (x[t] - mean) * (x[t + static_cast<std::size_t>(k)] - mean);
        r[static_cast<std::size_t>(k)] = num / denom;
    }
    return r;
}

inline double white_noise_band(std::size_t n) { return 1.96 / std::sqrt(static_cast<double>(n)); }

}  // namespace detail

inline std::vector<CorrelogramRow> acf(std::span<const double> series, int max_lag) {
    detail::check_lags(series.size(), max_lag);
    const auto r = detail::autocorrelations(series, max_lag);
    const double band = detail::white_noise_band(series.size());
    std::vector<CorrelogramRow> out;
    out.reserve(static_cast<std::size_t>(max_lag));
    for (int k = 1; k <= max_lag; ++k) out.push_back({k, r[static_cast<std::size_t>(k)], band});
    return out;
}

/// Partial autocorrelations by the Durbin-Levinson recursion.
inline std::vector<CorrelogramRow> pacf(std::span<const double> series, int max_lag) {
    detail::check_lags(series.size(), max_lag);
    const auto r = detail::autocorrelations(series, max_lag);
    const double band = detail::white_noise_band(series.size());
    const auto K = static_cast<std::size_t>(max_lag);

    std::vector<double> phi(K + 1, 0.0);
    std::vector<double> prev(K + 1, 0.0);
    std::vector<CorrelogramRow> out;
    out.reserve(K);
    double v = 1.0;  // innovation variance ratio
    for (std::size_t k = 1; k <= K; ++k) {
        double num = r[k];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j] * r[k - j];
        const double phikk = num / v;
        if (!std::isfinite(phikk) || std::fabs(phikk) >= 1.0)
            throw DegenerateSeriesError("Durbin-Levinson recursion broke down at lag " + std::to_string(k));
        phi[k] = phikk;
        for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - phikk * prev[k - j];
        v *= 1.0 - phikk * phikk;
        prev = phi;
        out.push_back({static_cast<int>(k), phikk, band});
    }
    return out;
}

/// Least squares of x_t on x_{t-1}; residual sd uses n - 3 degrees of freedom.
inline Ar1Fit fit_ar1(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 3) throw InsufficientDataError("AR(1) fit needs at least 3 observations");
    const std::size_t m = n - 1;  // number of (x_{t-1}, x_t) pairs
    double mx = 0.0, my = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        mx += series[t - 1];
        my += series[t];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    double scale = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        sxx += (series[t - 1] - mx) * (series[t - 1] - mx);
        sxy += (series[t - 1] - mx) * (series[t] - my);
        scale = std::max(scale, std::fabs(series[t - 1]));
    }
    if (sxx <= 1e-28 * scale * scale * static_cast<double>(m) || sxx == 0.0)
        throw DegenerateSeriesError("lagged series is constant; AR(1) coefficients undefined");
    Ar1Fit fit;
    fit.phi1 = sxy / sxx;
    fit.delta = my - fit.phi1 * mx;
    double ssr = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        const double e = series[t] - fit.delta - fit.phi1 * series[t - 1];
        ssr += e * e;
    }
    // two pairs determine the line exactly
    fit.residual_sd = n > 3 ? std::sqrt(ssr / static_cast<double>(n - 3)) : 0.0;
    return fit;
}

}  // namespace moncal
