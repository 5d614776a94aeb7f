#pragma once

// Markdown / CSV / JSON rendering of the report tables.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "moncal/report.hpp"
#include "moncal/serialize.hpp"

namespace moncal {

enum class Format { Markdown, Csv, Json };

inline Format parse_format(const std::string& s) {
    if (s == "md" || s == "markdown") return Format::Markdown;
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw ConfigError("unknown format '" + s + "' (expected md, csv or json)");
}

inline std::string fixed(double v, int digits = 2) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    std::string s(buf);
    if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);  // no "-0.00"
    return s;
}

struct TextTable {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;

    std::string markdown() const {
        std::ostringstream os;
        if (!title.empty()) os << "### " << title << "\n\n";
        os << "|";
        for (const auto& h : header) os << ' ' << h << " |";
        os << "\n|";
        for (std::size_t i = 0; i < header.size(); ++i) os << (i == 0 ? "---|" : "---:|");
        os << '\n';
        for (const auto& r : rows) {
            os << "|";
            for (const auto& c : r) os << ' ' << c << " |";
            os << '\n';
        }
        for (const auto& n : notes) os << '\n' << n << '\n';
        return os.str();
    }

    std::string csv() const {
        auto quote = [](const std::string& s) {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char c : s) {
                if (c == '"') q += '"';
                q += c;
            }
            return q + '"';
        };
        std::ostringstream os;
        if (!title.empty()) os << "# " << title << '\n';
        for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << quote(header[i]);
        os << '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << quote(r[i]);
            os << '\n';
        }
        for (const auto& n : notes) os << "# " << n << '\n';
        return os.str();
    }

    std::string render(Format f) const { return f == Format::Csv ? csv() : markdown(); }
};

inline TextTable series_table(const SeriesStats& s, const std::string& symbol) {
    const std::string pct = fixed(100.0 * s.confidence_level, 0) + "%";
    TextTable t{"Statistical summary of monthly returns",
                {"", "Count", "Minimum", "Maximum", "Mean", "Median", "Std. Dev.", pct + " LCL", pct + " UCL"},
                {},
                {}};
    t.rows.push_back({symbol.empty() ? "Series" : symbol, std::to_string(s.count), fixed(s.minimum), fixed(s.maximum),
                      fixed(s.mean), fixed(s.median), fixed(s.std_dev), fixed(s.lcl), fixed(s.ucl)});
    return t;
}

inline TextTable monthly_table(const std::array<MonthGroupStats, 12>& groups, double level) {
    const std::string pct = fixed(100.0 * level, 0) + "%";
    TextTable t{"Statistical analysis of monthly returns",
                {"Month", "Count", "Mean", "SE (Mean)", pct + " LCL", pct + " UCL", "Tendency", "Significance"},
                {},
                {"* Significant with a " + pct + " confidence level."}};
    for (const auto& g : groups)
        t.rows.push_back({month_abbrev(g.month) + (g.significant ? "*" : ""), std::to_string(g.count), fixed(g.mean),
                          fixed(g.se_mean), fixed(g.lcl), fixed(g.ucl), to_string(g.tendency),
                          g.significant ? "Yes" : "No"});
    return t;
}

inline TextTable correlogram_table(const std::vector<CorrelogramRow>& rows, const std::string& title) {
    TextTable t{title, {"lag", "value", "band"}, {}, {}};
    for (const auto& r : rows) t.rows.push_back({std::to_string(r.lag), fixed(r.value, 4), fixed(r.band, 4)});
    return t;
}

/// Horizontal bar chart; ':' marks the +/- band, '#' the bar.
inline std::string correlogram_chart(const std::vector<CorrelogramRow>& rows, const std::string& title,
                                     int half_width = 25) {
    std::ostringstream os;
    os << title << '\n';
    for (const auto& r : rows) {
        std::string line(static_cast<std::size_t>(2 * half_width + 1), ' ');
        const auto zero = static_cast<std::size_t>(half_width);
        const int band = static_cast<int>(std::lround(r.band * half_width));
        const int len = static_cast<int>(std::lround(std::fabs(r.value) * half_width));
        for (int i = 1; i <= len; ++i) line[r.value >= 0 ? zero + static_cast<std::size_t>(i) : zero - static_cast<std::size_t>(i)] = '#';
        if (band >= 1 && band <= half_width) {
            for (std::size_t pos : {zero - static_cast<std::size_t>(band), zero + static_cast<std::size_t>(band)})
                if (line[pos] == ' ') line[pos] = ':';
        }
        line[zero] = '|';
        char head[32];
        std::snprintf(head, sizeof head, "%3d %7.4f ", r.lag, r.value);
        os << head << line << (std::fabs(r.value) > r.band ? " *" : "") << '\n';
    }
    return os.str();
}

inline std::string trend_equation(const DecompositionResult& d, const std::string& symbol) {
    const std::string name = symbol.empty() ? "Index" : symbol;
    std::string s = name + " = " + fixed(d.trend.intercept, 3);
    s += d.trend.slope < 0 ? " - " : " + ";
    return s + fixed(std::fabs(d.trend.slope), 3) + "*t";
}

inline TextTable decomposition_table(const ModeSelection& sel, const std::string& symbol) {
    const auto& d = sel.chosen();
    TextTable t{std::string(to_string(d.mode)) + " decomposition: seasonal " +
                    (d.mode == DecompositionMode::Multiplicative ? "indices" : "effects"),
                {""},
                {},
                {}};
    for (int m = 1; m <= 12; ++m) t.header.push_back(month_abbrev(m));
    std::vector<std::string> row{symbol.empty() ? "Index" : symbol};
    for (int m = 1; m <= 12; ++m) row.push_back(fixed(d.seasonal_at(m)));
    t.rows.push_back(std::move(row));
    t.notes.push_back("Trend equation (t = 1 at the first month): " + trend_equation(d, symbol));
    t.notes.push_back("MSE additive = " + fixed(sel.additive.mse, 4) +
                      ", multiplicative = " + fixed(sel.multiplicative.mse, 4) + "; selected " +
                      to_string(sel.selected) + " (lower MSE).");
    return t;
}

inline TextTable coefficient_table(const LinearFit& f, const std::string& title) {
    TextTable t{title, {"Term", "Coefficient", "SE", "t value", "P value"}, {}, {}};
    for (const auto& r : f.rows)
        t.rows.push_back({r.term, fixed(r.estimate), fixed(r.se), fixed(r.statistic), fixed(r.p_value, 3)});
    t.notes.push_back("R-square = " + fixed(f.r_square, 3) + (f.sst_degenerate ? " (response has zero variance)" : "") +
                      ", n = " + std::to_string(f.n) + ", residual df = " + std::to_string(f.residual_df));
    return t;
}

inline TextTable stepwise_path_table(const StepwisePath& p) {
    TextTable t{"Stepwise path (alpha to enter " + fixed(p.alpha_enter) + ", alpha to remove " + fixed(p.alpha_remove) + ")",
                {"Step", "Action", "Term", "P value"},
                {},
                {}};
    for (std::size_t i = 0; i < p.steps.size(); ++i)
        t.rows.push_back({std::to_string(i + 1), to_string(p.steps[i].action), p.steps[i].term,
                          fixed(p.steps[i].p_value_at_action, 4)});
    return t;
}

inline TextTable logistic_table(const LogisticFit& f) {
    const std::string pct = fixed(100.0 * f.confidence_level, 0) + "%";
    TextTable t{"Binary logistic regression (reference month " + month_name(f.reference_month) + ")",
                {"Predictor", "Logistic Coefficient", "SE Coefficient", "Z value", "P value", "Odds Ratio",
                 pct + " LCL", pct + " UCL"},
                {},
                {"* Significant with a 95% confidence level."}};
    for (std::size_t i = 0; i < f.rows.size(); ++i) {
        const auto& r = f.rows[i];
        const bool star = i > 0 && r.p_value <= 0.05;
        std::vector<std::string> row{(i == 0 ? r.term : month_abbrev(f.term_months[i])) + (star ? "*" : ""),
                                     fixed(r.estimate), fixed(r.se), fixed(r.statistic), fixed(r.p_value)};
        if (f.odds[i]) {
            row.push_back(fixed(f.odds[i]->ratio));
            row.push_back(fixed(f.odds[i]->lcl));
            row.push_back(fixed(f.odds[i]->ucl));
        } else {
            row.insert(row.end(), {"", "", ""});
        }
        t.rows.push_back(std::move(row));
    }
    t.notes.push_back("Converged in " + std::to_string(f.iterations) + " iterations; log-likelihood " +
                      fixed(f.log_likelihood, 4) + ".");
    return t;
}

inline std::string verdict_text(const MethodVerdict& v) {
    std::string s = to_string(v.sign);
    if (v.method == Method::Decomposition) return s + " (n/a)";
    return v.significant ? s + "*" : s;
}

inline TextTable matrix_table(const SummaryMatrix& m) {
    TextTable t{"Summary of results" + (m.symbol.empty() ? std::string() : " (" + m.symbol + ")"),
                {"Monthly Return", "Logistic Regression", "Dummy Regression", "Decomposition Analysis",
                 "Statistical Results"},
                {},
                {"* Significant with a 95% confidence level. Logistic signs use the average coefficient as the "
                 "benchmark. Decomposition significance is not defined (n/a)."}};
    for (int month = 1; month <= 12; ++month) {
        std::vector<std::string> row{month_abbrev(month)};
        for (Method method : kMethods) row.push_back(verdict_text(m.at(month, method)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace detail {

template <typename T>
void emit_notice(std::ostringstream& os, const Section<T>& s, Format f) {
    if (f == Format::Csv)
        os << "# unavailable: " << s.error << "\n\n";
    else
        os << "> Section unavailable: " << s.error << "\n\n";
}

}  // namespace detail

/// Full report; JSON goes through to_json(ReportDocument).
inline std::string render_report(const ReportDocument& d, Format f) {
    if (f == Format::Json) return to_json(d).dump(2) + "\n";
    std::ostringstream os;
    const bool md = f == Format::Markdown;
    if (md) {
        os << "# Monthly return analysis: " << (d.symbol.empty() ? "series" : d.symbol) << "\n\n";
        if (!d.panel.rows.empty()) {
            const auto& a = d.panel.rows.front();
            const auto& b = d.panel.rows.back();
            char span[96];
            std::snprintf(span, sizeof span, "%04d-%02d to %04d-%02d", a.year, a.month, b.year, b.month);
            os << "Months: " << d.panel.rows.size() << " (" << span << ")";
            if (d.price_rows) os << "; daily rows: " << d.price_rows << ", skipped (empty price): " << d.skipped_rows;
            os << "\n\n";
        }
    }
    auto section = [&](const std::string& heading) {
        if (md) os << "## " << heading << "\n\n";
    };

    section("Descriptive statistics");
    if (d.series) os << series_table(*d.series, d.symbol).render(f) << '\n';
    else detail::emit_notice(os, d.series, f);
    if (d.monthly) os << monthly_table(*d.monthly, d.options.interval.confidence_level).render(f) << '\n';
    else detail::emit_notice(os, d.monthly, f);

    section("Autocorrelation");
    auto correlo = [&](const Section<Correlograms>& c, const std::string& what) {
        if (!c) {
            detail::emit_notice(os, c, f);
            return;
        }
        if (md) {
            os << "```\n" << correlogram_chart(c->acf, "ACF of " + what) << '\n'
               << correlogram_chart(c->pacf, "PACF of " + what) << "```\n\n";
        } else {
            os << correlogram_table(c->acf, "ACF of " + what).csv() << '\n'
               << correlogram_table(c->pacf, "PACF of " + what).csv() << '\n';
        }
    };
    correlo(d.levels_correlogram, "month-end levels");
    correlo(d.returns_correlogram, "percentage returns");
    if (d.levels_ar1) {
        const auto& a = *d.levels_ar1;
        const std::string line = "AR(1) on levels: x_t = " + fixed(a.delta, 4) + " + " + fixed(a.phi1, 4) +
                                 " x_{t-1} + w_t, residual sd " + fixed(a.residual_sd, 4);
        os << (md ? line + "\n\n" : "# " + line + "\n\n");
    }

    section("Decomposition");
    if (d.decomposition) os << decomposition_table(*d.decomposition, d.symbol).render(f) << '\n';
    else detail::emit_notice(os, d.decomposition, f);

    section("Dummy variable regression");
    if (d.regression) {
        const auto& r = *d.regression;
        os << coefficient_table(r.full, "Full dummy model").render(f) << '\n';
        const std::string eq = format_equation(r.stepwise.fit, (d.symbol.empty() ? "" : d.symbol + " ") + "Return") +
                               " (R-square = " + fixed(r.stepwise.fit.r_square) + ")";
        os << (md ? "Stepwise model: " + eq + "\n\n" : "# Stepwise model: " + eq + "\n");
        os << coefficient_table(r.stepwise.fit, "Stepwise model").render(f) << '\n';
        os << stepwise_path_table(r.stepwise.path).render(f) << '\n';
    } else {
        detail::emit_notice(os, d.regression, f);
    }

    section("Binary logistic regression");
    if (d.logistic) os << logistic_table(*d.logistic).render(f) << '\n';
    else detail::emit_notice(os, d.logistic, f);

    section("Summary");
    if (d.matrix) os << matrix_table(*d.matrix).render(f) << '\n';
    else detail::emit_notice(os, d.matrix, f);

    if (!d.warnings.empty()) {
        section("Warnings");
        for (const auto& w : d.warnings) os << (md ? "- " : "# warning: ") << w << '\n';
    }
    return os.str();
}

}  // namespace moncal
