#pragma once

// Synthetic panels shared by the unit and acceptance suites.

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "moncal/ingest.hpp"

namespace moncal::synth {

/// Panel whose first row (December of start_year - 1) closes at 100 and whose
/// later rows realise `returns` exactly; returns[0] is January of start_year.
inline MonthlyPanel panel_from_returns(const std::vector<double>& returns, int start_year = 2000,
                                       const std::string& symbol = "SYN") {
    MonthlyPanel p;
    p.symbol = symbol;
    p.rows.push_back({start_year - 1, 12, 100.0, std::nullopt, std::nullopt});
    int y = start_year, m = 1;
    double close = 100.0;
    for (double r : returns) {
        close *= 1.0 + r / 100.0;
        p.rows.push_back({y, m, close, std::nullopt, std::nullopt});
        if (++m == 13) {
            m = 1;
            ++y;
        }
    }
    return compute_returns(std::move(p));
}

/// Closes given directly; first row is January of start_year.
inline MonthlyPanel panel_from_closes(const std::vector<double>& closes, int start_year = 2000, int start_month = 1) {
    MonthlyPanel p;
    p.symbol = "SYN";
    int y = start_year, m = start_month;
    for (double c : closes) {
        p.rows.push_back({y, m, c, std::nullopt, std::nullopt});
        if (++m == 13) {
            m = 1;
            ++y;
        }
    }
    return p;
}

/// `years` full calendar years of returns (Jan..Dec), month m drawn from N(effects[m-1], sd).
inline std::vector<double> planted_returns(int years, const std::array<double, 12>& effects, double sd,
                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sd);
    std::vector<double> out;
    for (int y = 0; y < years; ++y)
        for (int m = 0; m < 12; ++m) out.push_back(effects[static_cast<std::size_t>(m)] + noise(rng));
    return out;
}

inline std::vector<int> calendar_months(std::size_t n, int start_month = 1) {
    std::vector<int> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<int>((static_cast<std::size_t>(start_month - 1) + i) % 12) + 1;
    return out;
}

inline std::vector<double> simulate_ar1(std::size_t n, double delta, double phi, double sd, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sd);
    std::vector<double> x(n);
    double prev = delta / (1.0 - phi);
    for (int burn = 0; burn < 500; ++burn) prev = delta + phi * prev + noise(rng);
    for (auto& v : x) {
        v = delta + phi * prev + noise(rng);
        prev = v;
    }
    return x;
}

/// Multiplicative generating indices used by the decomposition oracles, rescaled to mean 1.
inline std::array<double, 12> generating_indices() {
    std::array<double, 12> s = {1.10, 1.05, 1.00, 0.95, 0.90, 0.95, 1.00, 1.05, 1.10, 1.00, 0.95, 0.95};
    double mean = 0.0;
    for (double v : s) mean += v / 12.0;
    for (auto& v : s) v /= mean;
    return s;
}

/// close(t) = (100 + 2t) * s[month(t)], t = 1..12*years starting in January.
inline std::vector<double> multiplicative_closes(int years) {
    const auto s = generating_indices();
    std::vector<double> out;
    for (int t = 1; t <= 12 * years; ++t) out.push_back((100.0 + 2.0 * t) * s[static_cast<std::size_t>((t - 1) % 12)]);
    return out;
}

/// Daily-ish CSV text from month-end closes: three trading days per month, the last carrying the close.
inline std::string daily_csv(const MonthlyPanel& p) {
    std::string out = "Date,Open,High,Low,Close,Adj Close,Volume\n";
    char buf[160];
    for (const auto& r : p.rows) {
        for (int d : {3, 15}) {
            std::snprintf(buf, sizeof buf, "%04d-%02d-%02d,1,1,1,1,%.10f,100\n", r.year, r.month, d, r.close * 0.99);
            out += buf;
        }
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d,1,1,1,1,%.10f,100\n", r.year, r.month, 27, r.close);
        out += buf;
    }
    return out;
}

}  // namespace moncal::synth
