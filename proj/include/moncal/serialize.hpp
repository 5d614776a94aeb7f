#pragma once

// JSON views of every result type. The report document carries `schema_version`.

#include <json.hpp>

#include "moncal/report.hpp"

namespace moncal {

using nlohmann::json;

inline json to_json(const SeriesStats& s) {
    return {{"count", s.count},   {"minimum", s.minimum}, {"maximum", s.maximum}, {"mean", s.mean},
            {"median", s.median}, {"std_dev", s.std_dev}, {"lcl", s.lcl},         {"ucl", s.ucl},
            {"confidence_level", s.confidence_level}};
}

inline json to_json(const std::array<MonthGroupStats, 12>& groups) {
    json arr = json::array();
    for (const auto& g : groups)
        arr.push_back({{"month", g.month},
                       {"name", month_abbrev(g.month)},
                       {"count", g.count},
                       {"mean", g.mean},
                       {"std_dev", g.std_dev},
                       {"se_mean", g.se_mean},
                       {"lcl", g.lcl},
                       {"ucl", g.ucl},
                       {"tendency", to_string(g.tendency)},
                       {"significant", g.significant}});
    return arr;
}

inline json to_json(const std::vector<CorrelogramRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back({{"lag", r.lag}, {"value", r.value}, {"band", r.band}});
    return arr;
}

inline json to_json(const Correlograms& c) { return {{"acf", to_json(c.acf)}, {"pacf", to_json(c.pacf)}}; }

inline json to_json(const Ar1Fit& f) {
    return {{"delta", f.delta}, {"phi1", f.phi1}, {"residual_sd", f.residual_sd}};
}

inline json to_json(const DecompositionResult& d, bool include_series = true) {
    json idx = json::object();
    for (int m = 1; m <= 12; ++m) idx[month_abbrev(m)] = d.seasonal_at(m);
    json j = {{"mode", to_string(d.mode)},
              {"trend", {{"intercept", d.trend.intercept}, {"slope", d.trend.slope}, {"first_t", d.trend.first_t}}},
              {"seasonal_index", idx},
              {"mse", d.mse},
              {"mad", d.mad},
              {"mape", d.mape}};
    if (include_series) {
        j["series"] = {{"month", d.months},         {"observed", d.observed}, {"trend", d.trend_values},
                       {"detrended", d.detrended},  {"fitted", d.fitted},     {"irregular", d.irregular}};
    }
    return j;
}

inline json to_json(const ModeSelection& s, bool include_series = true) {
    return {{"selected", to_string(s.selected)},
            {"additive", to_json(s.additive, include_series)},
            {"multiplicative", to_json(s.multiplicative, include_series)}};
}

inline json to_json(const CoefficientRow& r) {
    return {{"term", r.term}, {"estimate", r.estimate}, {"se", r.se}, {"statistic", r.statistic}, {"p_value", r.p_value}};
}

inline json to_json(const LinearFit& f) {
    json rows = json::array();
    for (const auto& r : f.rows) rows.push_back(to_json(r));
    return {{"rows", rows},
            {"r_square", f.r_square},
            {"sst_degenerate", f.sst_degenerate},
            {"n", f.n},
            {"residual_df", f.residual_df},
            {"residual_sd", f.residual_sd},
            {"equation", format_equation(f)}};
}

inline json to_json(const StepwisePath& p) {
    json steps = json::array();
    for (const auto& s : p.steps)
        steps.push_back({{"action", to_string(s.action)}, {"term", s.term}, {"p_value", s.p_value_at_action}});
    return {{"alpha_enter", p.alpha_enter}, {"alpha_remove", p.alpha_remove}, {"steps", steps},
            {"final_terms", p.final_terms}};
}

inline json to_json(const StepwiseResult& s) { return {{"fit", to_json(s.fit)}, {"path", to_json(s.path)}}; }

inline json to_json(const LogisticFit& f) {
    json rows = json::array();
    for (std::size_t i = 0; i < f.rows.size(); ++i) {
        json r = to_json(f.rows[i]);
        if (f.odds[i]) {
            r["odds_ratio"] = f.odds[i]->ratio;
            r["or_lcl"] = f.odds[i]->lcl;
            r["or_ucl"] = f.odds[i]->ucl;
        }
        rows.push_back(std::move(r));
    }
    return {{"rows", rows},
            {"reference_month", f.reference_month},
            {"confidence_level", f.confidence_level},
            {"converged", f.converged},
            {"iterations", f.iterations},
            {"log_likelihood", f.log_likelihood},
            {"n", f.n}};
}

inline json to_json(const SummaryMatrix& m) {
    json rows = json::array();
    for (int month = 1; month <= 12; ++month) {
        json r = {{"month", month}, {"name", month_abbrev(month)}};
        for (Method method : kMethods) {
            const auto& v = m.at(month, method);
            r[to_string(method)] = {{"sign", to_string(v.sign)}, {"significant", v.significant}};
        }
        rows.push_back(std::move(r));
    }
    return {{"symbol", m.symbol}, {"rows", rows}};
}

template <typename T>
json section_json(const Section<T>& s) {
    if (s) return to_json(*s);
    return {{"error", s.error}};
}

inline json section_json(const Section<RegressionSection>& s) {
    if (!s) return {{"error", s.error}};
    return {{"full", to_json(s->full)}, {"stepwise", to_json(s->stepwise)}};
}

inline json to_json(const ReportDocument& d) {
    const auto& o = d.options;
    return {
        {"schema_version", ReportDocument::kSchemaVersion},
        {"symbol", d.symbol},
        {"config",
         {{"confidence_level", o.interval.confidence_level},
          {"interval", o.interval.kind == IntervalKind::Normal ? "normal" : "student_t"},
          {"alpha_enter", o.stepwise.alpha_enter},
          {"alpha_remove", o.stepwise.alpha_remove},
          {"reference_month", o.reference_month},
          {"zero_is_positive", o.returns.zero_is_positive},
          {"seasonal_statistic", o.seasonal_statistic == SeasonalStatistic::Median ? "median" : "mean"},
          {"max_lag", o.max_lag}}},
        {"input", {{"price_rows", d.price_rows}, {"skipped_rows", d.skipped_rows}, {"months", d.panel.rows.size()}}},
        {"panel", panel_to_json(d.panel)},
        {"summary", section_json(d.series)},
        {"monthly", section_json(d.monthly)},
        {"correlogram", {{"levels", section_json(d.levels_correlogram)}, {"returns", section_json(d.returns_correlogram)}}},
        {"ar1_levels", section_json(d.levels_ar1)},
        {"decomposition", section_json(d.decomposition)},
        {"regression", section_json(d.regression)},
        {"logistic", section_json(d.logistic)},
        {"matrix", section_json(d.matrix)},
        {"warnings", d.warnings},
    };
}

/// Structural check of a report produced by to_json(ReportDocument); returns the problems found.
inline std::vector<std::string> validate_report_json(const json& j) {
    std::vector<std::string> problems;
    auto need = [&](const json& obj, const char* key, json::value_t type, const std::string& where) {
        if (!obj.is_object() || !obj.contains(key)) {
            problems.push_back(where + "." + key + " missing");
            return false;
        }
        if (obj[key].type() != type && !(type == json::value_t::number_float && obj[key].is_number())) {
            problems.push_back(where + "." + key + " has wrong type");
            return false;
        }
        return true;
    };
    using vt = json::value_t;
    if (need(j, "schema_version", vt::string, "$") && j["schema_version"] != ReportDocument::kSchemaVersion)
        problems.push_back("$.schema_version unexpected");
    need(j, "symbol", vt::string, "$");
    need(j, "config", vt::object, "$");
    need(j, "input", vt::object, "$");
    if (need(j, "panel", vt::object, "$")) need(j["panel"], "rows", vt::array, "$.panel");
    for (const char* key : {"summary", "monthly", "correlogram", "ar1_levels", "decomposition", "regression", "logistic",
                            "matrix"})
        if (!j.contains(key)) problems.push_back(std::string("$.") + key + " missing");
    need(j, "warnings", vt::array, "$");
    if (j.contains("monthly") && j["monthly"].is_array()) {
        if (j["monthly"].size() != 12) problems.push_back("$.monthly must have 12 rows");
        for (const auto& r : j["monthly"])
            for (const char* k : {"month", "count", "mean", "se_mean", "lcl", "ucl", "tendency", "significant"})
                if (!r.contains(k)) problems.push_back(std::string("$.monthly[].") + k + " missing");
    }
    if (j.contains("matrix") && j["matrix"].contains("rows")) {
        const auto& rows = j["matrix"]["rows"];
        if (rows.size() != 12) problems.push_back("$.matrix.rows must have 12 rows");
        for (const auto& r : rows)
            for (Method m : kMethods)
                if (!r.contains(to_string(m)) || !r[to_string(m)].contains("sign"))
                    problems.push_back(std::string("$.matrix.rows[].") + to_string(m) + " missing");
    }
    if (j.contains("logistic") && j["logistic"].contains("rows"))
        for (const auto& r : j["logistic"]["rows"])
            for (const char* k : {"term", "estimate", "se", "statistic", "p_value"})
                if (!r.contains(k)) problems.push_back(std::string("$.logistic.rows[].") + k + " missing");
    return problems;
}

}  // namespace moncal
