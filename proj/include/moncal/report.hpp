#pragma once

// Cross-method sign/significance matrix and the end-to-end analysis pipeline.

#include <array>
#include <filesystem>
#include <fstream>
#include <future>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "moncal/autocorr.hpp"
#include "moncal/decompose.hpp"
#include "moncal/descriptive.hpp"
#include "moncal/error.hpp"
#include "moncal/ingest.hpp"
#include "moncal/linmodel.hpp"
#include "moncal/logit.hpp"

namespace moncal {

enum class Method { Logistic, DummyRegression, Decomposition, Statistical };
enum class Sign { Pos, Neg, None };

inline constexpr std::array<Method, 4> kMethods = {Method::Logistic, Method::DummyRegression, Method::Decomposition,
                                                   Method::Statistical};

inline const char* to_string(Method m) {
    switch (m) {
        case Method::Logistic: return "Logistic";
        case Method::DummyRegression: return "DummyRegression";
        case Method::Decomposition: return "Decomposition";
        case Method::Statistical: return "Statistical";
    }
    return "?";
}

inline const char* to_string(Sign s) {
    switch (s) {
        case Sign::Pos: return "Pos";
        case Sign::Neg: return "Neg";
        case Sign::None: return "None";
    }
    return "?";
}

struct MethodVerdict {
    Method method = Method::Statistical;
    Sign sign = Sign::None;
    bool significant = false;
};

/// 12 months x 4 methods, in the order of kMethods.
struct SummaryMatrix {
    std::string symbol;
    std::array<std::array<MethodVerdict, 4>, 12> cells{};

    const MethodVerdict& at(int month, Method m) const {
        return cells[static_cast<std::size_t>(month - 1)][static_cast<std::size_t>(m)];
    }
};

/// Logistic signs are judged against the unweighted mean of the non-constant coefficients;
/// the reference month is Pos and takes the constant's Wald test for significance.
inline SummaryMatrix build_matrix(const std::array<MonthGroupStats, 12>& groups, const DecompositionResult& decomposition,
                                  const LinearFit& stepwise_fit, const LogisticFit& logistic,
                                  const std::string& symbol = {}, double significance_level = 0.05) {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.count;
    if (stepwise_fit.n != n || logistic.n != n)
        throw ConsistencyError("analyses were computed over different panels (" + std::to_string(n) + " returns vs " +
                               std::to_string(stepwise_fit.n) + " regression rows vs " + std::to_string(logistic.n) +
                               " logistic rows)");
    if (decomposition.observed.size() != n + 1)
        throw ConsistencyError("decomposition covers " + std::to_string(decomposition.observed.size()) +
                               " closes; expected " + std::to_string(n + 1));

    double coef_mean = 0.0;
    for (std::size_t i = 1; i < logistic.rows.size(); ++i) coef_mean += logistic.rows[i].estimate;
    coef_mean /= static_cast<double>(logistic.rows.size() - 1);

    SummaryMatrix mat;
    mat.symbol = symbol;
    for (int month = 1; month <= 12; ++month) {
        auto& row = mat.cells[static_cast<std::size_t>(month - 1)];

        MethodVerdict lg{Method::Logistic, Sign::Pos, false};
        if (month == logistic.reference_month) {
            lg.significant = logistic.rows.front().p_value <= significance_level;
        } else {
            for (std::size_t i = 1; i < logistic.rows.size(); ++i)
                if (logistic.term_months[i] == month) {
                    lg.sign = logistic.rows[i].estimate > coef_mean ? Sign::Pos : Sign::Neg;
                    lg.significant = logistic.rows[i].p_value <= significance_level;
                }
        }

        MethodVerdict dm{Method::DummyRegression, Sign::None, false};
        for (std::size_t i = 1; i < stepwise_fit.rows.size(); ++i)
            if (stepwise_fit.term_months[i] == month) {
                dm.sign = stepwise_fit.rows[i].estimate > 0.0 ? Sign::Pos : Sign::Neg;
                dm.significant = true;
            }

        MethodVerdict dc{Method::Decomposition, seasonal_positive(decomposition, month) ? Sign::Pos : Sign::Neg, false};

        const auto& g = groups[static_cast<std::size_t>(month - 1)];
        MethodVerdict st{Method::Statistical, g.tendency == Tendency::Positive ? Sign::Pos : Sign::Neg, g.significant};

        row = {lg, dm, dc, st};
    }
    return mat;
}

// ---------------------------------------------------------------------------
// pipeline

struct AnalysisOptions {
    IntervalOptions interval{};
    ReturnOptions returns{};
    StepwiseOptions stepwise{};
    LogisticOptions logistic{};
    SeasonalStatistic seasonal_statistic = SeasonalStatistic::Median;
    int reference_month = 12;
    int max_lag = 24;
};

struct PipelineConfig {
    std::filesystem::path input;
    ParseOptions parse{};
    AnalysisOptions analysis{};
};

/// A report section that either holds a value or the reason it is missing.
template <typename T>
struct Section {
    std::optional<T> value;
    std::string error;
    int error_code = 0;

    explicit operator bool() const { return value.has_value(); }
    const T& operator*() const { return *value; }
    const T* operator->() const { return &*value; }
};

struct Correlograms {
    std::vector<CorrelogramRow> acf;
    std::vector<CorrelogramRow> pacf;
};

struct RegressionSection {
    LinearFit full;
    StepwiseResult stepwise;
};

struct ReportDocument {
    static constexpr const char* kSchemaVersion = "1.0";

    std::string symbol;
    std::size_t price_rows = 0;
    std::size_t skipped_rows = 0;
    MonthlyPanel panel;
    AnalysisOptions options;
    Section<SeriesStats> series;
    Section<std::array<MonthGroupStats, 12>> monthly;
    Section<Correlograms> levels_correlogram;
    Section<Correlograms> returns_correlogram;
    Section<Ar1Fit> levels_ar1;
    Section<ModeSelection> decomposition;
    Section<RegressionSection> regression;
    Section<LogisticFit> logistic;
    Section<SummaryMatrix> matrix;
    std::vector<std::string> warnings;
};

namespace detail {

template <typename T, typename F>
Section<T> run_section(const char* name, F&& f) {
    Section<T> s;
    try {
        s.value = f();
    } catch (const Error& e) {
        s.error = std::string(name) + ": " + e.what();
        s.error_code = e.exit_code();
    } catch (const std::exception& e) {
        s.error = std::string(name) + ": " + e.what();
        s.error_code = static_cast<int>(ErrorKind::Numerical);
    }
    return s;
}

inline Section<Correlograms> correlograms(std::span<const double> x, int max_lag, const char* name) {
    return run_section<Correlograms>(name, [&] {
        const int lag = std::min<int>(max_lag, static_cast<int>(x.size()) - 1);
        return Correlograms{acf(x, lag), pacf(x, lag)};
    });
}

}  // namespace detail

/// Runs every analysis over a panel of month-end closes. Sections fail independently.
inline ReportDocument analyze_panel(MonthlyPanel panel, const AnalysisOptions& opt) {
    check_month(opt.reference_month);
    detail::check_level(opt.interval.confidence_level);
    detail::check_alphas(opt.stepwise);

    ReportDocument doc;
    doc.options = opt;
    doc.symbol = panel.symbol;
    doc.panel = compute_returns(std::move(panel), opt.returns);
    const MonthlyPanel& p = doc.panel;
    const auto returns = p.returns();
    const auto months = p.return_months();
    const auto positives = p.positives();
    const auto closes = p.closes();

    doc.series = detail::run_section<SeriesStats>("summary", [&] { return series_summary(returns, opt.interval); });

    // The four method families are independent of one another.
    auto monthly_f = std::async(std::launch::async, [&] {
        return detail::run_section<std::array<MonthGroupStats, 12>>(
            "monthly", [&] { return monthly_summary(returns, months, opt.interval); });
    });
    auto decomp_f = std::async(std::launch::async, [&] {
        return detail::run_section<ModeSelection>("decompose",
                                                  [&] { return select_mode(p, opt.seasonal_statistic); });
    });
    auto regress_f = std::async(std::launch::async, [&] {
        return detail::run_section<RegressionSection>("regress", [&] {
            const auto design = build_dummies(months, opt.reference_month);
            return RegressionSection{ols(returns, design), stepwise(returns, design, opt.stepwise)};
        });
    });
    auto logit_f = std::async(std::launch::async, [&] {
        return detail::run_section<LogisticFit>("logit", [&] {
            return fit_logistic(positives, build_dummies(months, opt.reference_month), opt.logistic);
        });
    });

    doc.levels_correlogram = detail::correlograms(closes, opt.max_lag, "acf(levels)");
    doc.returns_correlogram = detail::correlograms(returns, opt.max_lag, "acf(returns)");
    doc.levels_ar1 = detail::run_section<Ar1Fit>("ar1(levels)", [&] { return fit_ar1(closes); });

    doc.monthly = monthly_f.get();
    doc.decomposition = decomp_f.get();
    doc.regression = regress_f.get();
    doc.logistic = logit_f.get();

    if (doc.monthly && doc.decomposition && doc.regression && doc.logistic) {
        doc.matrix = detail::run_section<SummaryMatrix>("matrix", [&] {
            return build_matrix(*doc.monthly, doc.decomposition->chosen(), doc.regression->stepwise.fit, *doc.logistic,
                                doc.symbol);
        });
    } else {
        doc.matrix.error = "matrix: requires the monthly, decomposition, regression and logistic sections";
        doc.matrix.error_code = static_cast<int>(ErrorKind::Data);
    }

    for (const std::string* e : {&doc.series.error, &doc.monthly.error, &doc.levels_correlogram.error,
                                 &doc.returns_correlogram.error, &doc.levels_ar1.error, &doc.decomposition.error,
                                 &doc.regression.error, &doc.logistic.error, &doc.matrix.error})
        if (!e->empty()) doc.warnings.push_back(*e);
    return doc;
}

/// Reads the configured price file and analyses it.
inline ReportDocument run_pipeline(const PipelineConfig& cfg) {
    std::ifstream in(cfg.input);
    if (!in) throw ConfigError("cannot open input file '" + cfg.input.string() + "'");
    ParseOptions parse = cfg.parse;
    if (parse.symbol.empty()) parse.symbol = cfg.input.stem().string();
    const PriceSeries series = parse_prices(in, parse);
    ReportDocument doc = analyze_panel(to_month_end(series), cfg.analysis);
    doc.price_rows = series.observations.size();
    doc.skipped_rows = series.skipped_rows;
    return doc;
}

}  // namespace moncal
