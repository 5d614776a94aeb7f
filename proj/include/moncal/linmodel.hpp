#pragma once

// Ordinary least squares on month indicators, and alpha-to-enter / alpha-to-remove
// stepwise selection over those indicators.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "moncal/error.hpp"
#include "moncal/ingest.hpp"
#include "moncal/special.hpp"

namespace moncal {

struct CoefficientRow {
    std::string term;
    double estimate = 0.0;
    double se = 0.0;
    double statistic = 0.0;  // t (linear) or Wald z (logistic)
    double p_value = 1.0;
};

struct LinearFit {
    std::vector<CoefficientRow> rows;  // "Constant" first
    std::vector<int> term_months;      // calendar month per row; 0 for the constant
    double r_square = 0.0;
    bool sst_degenerate = false;  // response had zero variance; r_square reported as 0
    std::size_t n = 0;
    std::size_t residual_df = 0;
    double residual_sd = 0.0;

    const CoefficientRow* find(const std::string& term) const {
        for (const auto& r : rows)
            if (r.term == term) return &r;
        return nullptr;
    }

    /// Fitted value for an observation in `month`.
    double predict(int month) const {
        double v = rows.front().estimate;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (term_months[i] == month) v += rows[i].estimate;
        return v;
    }
};

namespace detail {

inline Eigen::MatrixXd indicator_matrix(std::span<const int> row_months, std::span<const int> term_months) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(row_months.size()), static_cast<Eigen::Index>(term_months.size() + 1));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        x(i, 0) = 1.0;
        for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(term_months.size()); ++j)
            x(i, j + 1) = row_months[static_cast<std::size_t>(i)] == term_months[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
    }
    return x;
}

inline double safe_ratio(double estimate, double se) {
    if (se > 0.0) return estimate / se;
    if (estimate == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), estimate);
}

}  // namespace detail

/// OLS of y on [1, X]. Column names label X's columns; `term_months` is carried through for prediction.
inline LinearFit ols(std::span<const double> y, const Eigen::MatrixXd& design, const std::vector<std::string>& names,
                     const std::vector<int>& term_months) {
    const auto n = static_cast<std::size_t>(design.rows());
    const auto p = static_cast<std::size_t>(design.cols());
    if (y.size() != n) throw ConsistencyError("response and design differ in length");
    if (n <= p)
        throw InsufficientDataError("OLS needs more observations (" + std::to_string(n) + ") than parameters (" +
                                    std::to_string(p) + ")");

    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(design);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(static_cast<Eigen::Index>(p)).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(p); ++j) {
        const double col_norm = design.col(j).norm();
        if (col_norm == 0.0 || std::fabs(r(j, j)) <= 1e-10 * col_norm)
            throw CollinearityError("design column '" + names[static_cast<std::size_t>(j)] +
                                        "' is linearly dependent on earlier columns",
                                    names[static_cast<std::size_t>(j)]);
    }

    const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(n));
    const Eigen::VectorXd beta = qr.solve(yv);
    const Eigen::VectorXd resid = yv - design * beta;
    const double ssr = resid.squaredNorm();
    const double ybar = yv.mean();
    const double sst = (yv.array() - ybar).square().sum();

    LinearFit fit;
    fit.n = n;
    fit.residual_df = n - p;
    const double sigma2 = ssr / static_cast<double>(fit.residual_df);
    fit.residual_sd = std::sqrt(sigma2);
    // (R'R)^-1 = R^-1 R^-T; diagonal = squared row norms of R^-1
    const Eigen::MatrixXd rinv = r.triangularView<Eigen::Upper>().solve(
        Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)));
    const double df = static_cast<double>(fit.residual_df);
    for (std::size_t j = 0; j < p; ++j) {
        CoefficientRow row;
        row.term = names[j];
        row.estimate = beta(static_cast<Eigen::Index>(j));
        row.se = std::sqrt(sigma2 * rinv.row(static_cast<Eigen::Index>(j)).squaredNorm());
        row.statistic = detail::safe_ratio(row.estimate, row.se);
        row.p_value = std::isinf(row.statistic) ? 0.0 : special::student_t_two_sided_p(row.statistic, df);
        fit.rows.push_back(std::move(row));
    }
    fit.term_months = term_months;
    if (sst > 0.0 && sst > 1e-30 * static_cast<double>(n) * (ybar * ybar + 1.0)) {
        fit.r_square = std::clamp(1.0 - ssr / sst, 0.0, 1.0);
    } else {
        fit.r_square = 0.0;
        fit.sst_degenerate = true;
    }
    return fit;
}

/// OLS of y on an intercept plus the indicators for `term_months`.
inline LinearFit ols(std::span<const double> y, std::span<const int> row_months, const std::vector<int>& term_months) {
    std::vector<std::string> names{"Constant"};
    std::vector<int> months{0};
    for (int m : term_months) {
        check_month(m);
        names.push_back(month_name(m));
        months.push_back(m);
    }
    return ols(y, detail::indicator_matrix(row_months, term_months), names, months);
}

/// Full dummy model: every column of `design`.
inline LinearFit ols(std::span<const double> y, const DummyDesign& design) {
    return ols(y, design.row_months, design.column_months);
}

// ---------------------------------------------------------------------------
// stepwise

enum class StepAction { Enter, Remove };

inline const char* to_string(StepAction a) { return a == StepAction::Enter ? "Enter" : "Remove"; }

struct StepRecord {
    StepAction action;
    std::string term;
    int month;
    double p_value_at_action;
};

struct StepwisePath {
    double alpha_enter = 0.15;
    double alpha_remove = 0.15;
    std::vector<StepRecord> steps;
    std::vector<std::string> final_terms;  // calendar order
    std::vector<int> final_months;
};

struct StepwiseOptions {
    double alpha_enter = 0.15;
    double alpha_remove = 0.15;
    std::size_t max_steps = 100;
};

struct StepwiseResult {
    LinearFit fit;
    StepwisePath path;
};

namespace detail {

inline void check_alphas(const StepwiseOptions& opt) {
    if (!(opt.alpha_enter > 0.0 && opt.alpha_enter < 1.0) || !(opt.alpha_remove > 0.0 && opt.alpha_remove <= 1.0))
        throw ConfigError("stepwise alphas must lie in (0, 1)");
    if (opt.alpha_enter > opt.alpha_remove)
        throw ConfigError("alpha to enter must not exceed alpha to remove (selection could cycle)");
}

inline double term_p_value(const LinearFit& fit, int month) {
    for (std::size_t i = 1; i < fit.rows.size(); ++i)
        if (fit.term_months[i] == month) return fit.rows[i].p_value;
    return 1.0;
}

// Refits and drops the worst included term while its p-value >= alpha_remove.
inline LinearFit remove_pass(std::span<const double> y, std::span<const int> row_months, std::vector<int>& included,
                             double alpha_remove, StepwisePath& path, std::size_t max_steps) {
    LinearFit fit = ols(y, row_months, included);
    while (!included.empty() && path.steps.size() < max_steps) {
        std::size_t worst = 0;
        double worst_p = -1.0;
        for (std::size_t i = 1; i < fit.rows.size(); ++i)
            if (fit.rows[i].p_value > worst_p) {
                worst_p = fit.rows[i].p_value;
                worst = i;
            }
        if (worst_p < alpha_remove) break;
        const int month = fit.term_months[worst];
        path.steps.push_back({StepAction::Remove, month_name(month), month, worst_p});
        included.erase(std::find(included.begin(), included.end(), month));
        fit = ols(y, row_months, included);
    }
    return fit;
}

inline void finish_path(StepwisePath& path, std::vector<int> included) {
    std::sort(included.begin(), included.end());
    path.final_months = included;
    path.final_terms.clear();
    for (int m : included) path.final_terms.push_back(month_name(m));
}

}  // namespace detail

/// Stepwise selection over the columns of `design`. Each round enters the excluded term with the
/// smallest p-value (if below alpha_enter), then removes included terms at or above alpha_remove.
inline StepwiseResult stepwise(std::span<const double> y, const DummyDesign& design, const StepwiseOptions& opt = {}) {
    detail::check_alphas(opt);
    if (y.size() != design.rows()) throw ConsistencyError("response and design differ in length");
    StepwiseResult out;
    out.path.alpha_enter = opt.alpha_enter;
    out.path.alpha_remove = opt.alpha_remove;
    std::vector<int> included;
    out.fit = ols(y, design.row_months, included);

    while (out.path.steps.size() < opt.max_steps) {
        int best_month = 0;
        double best_p = 2.0;
        for (int m : design.column_months) {  // calendar order; strict < keeps the earliest on ties
            if (std::find(included.begin(), included.end(), m) != included.end()) continue;
            auto trial = included;
            trial.push_back(m);
            const LinearFit f = ols(y, design.row_months, trial);
            const double p = detail::term_p_value(f, m);
            if (p < best_p) {
                best_p = p;
                best_month = m;
            }
        }
        if (best_month == 0 || !(best_p < opt.alpha_enter)) break;
        included.push_back(best_month);
        out.path.steps.push_back({StepAction::Enter, month_name(best_month), best_month, best_p});
        out.fit = detail::remove_pass(y, design.row_months, included, opt.alpha_remove, out.path, opt.max_steps);
    }
    out.fit = ols(y, design.row_months, included);
    detail::finish_path(out.path, included);
    return out;
}

/// Backward elimination from the full model, removals only.
inline StepwiseResult backward_eliminate(std::span<const double> y, const DummyDesign& design,
                                         const StepwiseOptions& opt = {}) {
    detail::check_alphas(opt);
    if (y.size() != design.rows()) throw ConsistencyError("response and design differ in length");
    StepwiseResult out;
    out.path.alpha_enter = opt.alpha_enter;
    out.path.alpha_remove = opt.alpha_remove;
    std::vector<int> included = design.column_months;
    out.fit = detail::remove_pass(y, design.row_months, included, opt.alpha_remove, out.path, opt.max_steps);
    detail::finish_path(out.path, included);
    return out;
}

/// "Return = b0 + b1 × April - b2 × May" with estimates at the given precision.
inline std::string format_equation(const LinearFit& fit, const std::string& lhs = "Return", int precision = 2) {
    auto fmt = [precision](double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", precision, v);
        return std::string(buf);
    };
    std::string s = lhs + " = " + fmt(fit.rows.front().estimate);
    for (std::size_t i = 1; i < fit.rows.size(); ++i) {
        const double b = fit.rows[i].estimate;
        s += b < 0.0 ? " - " : " + ";
        s += fmt(std::fabs(b)) + " × " + fit.rows[i].term;
    }
    return s;
}

}  // namespace moncal
