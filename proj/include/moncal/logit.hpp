#pragma once

// Binary logistic regression of the positive-return flag on month indicators.
// Newton-Raphson with step halving; Wald inference; odds ratios with Wald intervals.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "moncal/error.hpp"
#include "moncal/ingest.hpp"
#include "moncal/linmodel.hpp"
#include "moncal/special.hpp"

namespace moncal {

struct OddsRatio {
    double ratio = 1.0;
    double lcl = 0.0;
    double ucl = 0.0;
};

struct LogisticFit {
    std::vector<CoefficientRow> rows;              // "Constant" first; statistic is Wald z
    std::vector<std::optional<OddsRatio>> odds;    // aligned with rows; empty for the constant
    std::vector<int> term_months;                  // 0 for the constant
    int reference_month = 12;
    double confidence_level = 0.95;
    bool converged = false;
    int iterations = 0;
    double log_likelihood = 0.0;
    std::vector<double> log_likelihood_trace;  // one entry per accepted iterate, starting at beta = 0
    std::size_t n = 0;

    /// Linear predictor for an observation in `month`.
    double eta(int month) const {
        double v = rows.front().estimate;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (term_months[i] == month) v += rows[i].estimate;
        return v;
    }
};

struct LogisticOptions {
    int max_iter = 50;
    double coef_tol = 1e-8;
    double loglik_tol = 1e-10;
    int max_halvings = 20;
    double confidence_level = 0.95;
};

namespace detail {

// log(1 + exp(x)) without overflow
inline double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

inline double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

inline double log_likelihood(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& beta) {
    const Eigen::VectorXd eta = x * beta;
    double ll = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) ll += y(i) * eta(i) - softplus(eta(i));
    return ll;
}

inline void check_separation(std::span<const int> y, const DummyDesign& design) {
    std::array<int, 12> pos{}, total{};
    for (std::size_t i = 0; i < y.size(); ++i) {
        const auto m = static_cast<std::size_t>(design.row_months[i] - 1);
        ++total[m];
        pos[m] += y[i];
    }
    for (int m = 1; m <= 12; ++m) {
        const auto k = static_cast<std::size_t>(m - 1);
        if (total[k] == 0) continue;  // absent group surfaces as a collinear column below
        if (pos[k] == 0 || pos[k] == total[k]) {
            const bool all_pos = pos[k] == total[k];
            const double diverging = all_pos ? std::numeric_limits<double>::infinity()
                                             : -std::numeric_limits<double>::infinity();
            // For the reference month the constant diverges (and every other coefficient with it).
            const std::string coef = m == design.reference_month ? "Constant" : month_name(m);
            throw SeparationError(month_name(m) + " is entirely " + (all_pos ? "positive" : "non-positive") +
                                      " (" + std::to_string(total[k]) + " of " + std::to_string(total[k]) +
                                      "); maximum-likelihood coefficient '" + coef + "' diverges to " +
                                      (all_pos ? "+inf" : "-inf"),
                                  month_name(m), diverging);
        }
    }
}

}  // namespace detail

inline LogisticFit fit_logistic(std::span<const int> positives, const DummyDesign& design,
                                const LogisticOptions& opt = {}) {
    const std::size_t n = positives.size();
    if (n != design.rows()) throw ConsistencyError("response and design differ in length");
    const std::size_t p = design.cols() + 1;
    if (n <= p)
        throw InsufficientDataError("logistic fit needs more observations (" + std::to_string(n) +
                                    ") than parameters (" + std::to_string(p) + ")");
    for (int v : positives)
        if (v != 0 && v != 1) throw DataError("logistic response must be 0/1");
    detail::check_separation(positives, design);

    std::vector<std::string> names{"Constant"};
    std::vector<int> months{0};
    for (int m : design.column_months) {
        names.push_back(month_name(m));
        months.push_back(m);
    }
    const Eigen::MatrixXd x = detail::indicator_matrix(design.row_months, design.column_months);
    {
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            const double norm = x.col(j).norm();
            if (norm == 0.0 || std::fabs(qr.matrixQR()(j, j)) <= 1e-10 * norm)
                throw CollinearityError("design column '" + names[static_cast<std::size_t>(j)] +
                                            "' is linearly dependent on earlier columns",
                                        names[static_cast<std::size_t>(j)]);
        }
    }
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) y(static_cast<Eigen::Index>(i)) = positives[i];

    const auto P = static_cast<Eigen::Index>(p);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(P);
    double ll = detail::log_likelihood(x, y, beta);

    LogisticFit fit;
    fit.n = n;
    fit.reference_month = design.reference_month;
    fit.confidence_level = opt.confidence_level;
    fit.log_likelihood_trace.push_back(ll);

    auto information = [&](const Eigen::VectorXd& b) {
        const Eigen::VectorXd eta = x * b;
        Eigen::VectorXd w(eta.size());
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            const double pi = detail::logistic(eta(i));
            w(i) = pi * (1.0 - pi);
        }
        return Eigen::MatrixXd(x.transpose() * w.asDiagonal() * x);
    };

    for (int iter = 1; iter <= opt.max_iter; ++iter) {
        const Eigen::VectorXd eta = x * beta;
        Eigen::VectorXd resid(eta.size());
        for (Eigen::Index i = 0; i < eta.size(); ++i) resid(i) = y(i) - detail::logistic(eta(i));
        const Eigen::VectorXd grad = x.transpose() * resid;
        const Eigen::LDLT<Eigen::MatrixXd> solver(information(beta));
        if (solver.info() != Eigen::Success)
            throw NonConvergenceError("information matrix is singular",
                                      std::vector<double>(beta.data(), beta.data() + beta.size()));
        const Eigen::VectorXd delta = solver.solve(grad);

        double scale = 1.0;
        Eigen::VectorXd candidate = beta + delta;
        double ll_new = detail::log_likelihood(x, y, candidate);
        for (int h = 0; h < opt.max_halvings && !(ll_new >= ll); ++h) {
            scale *= 0.5;
            candidate = beta + scale * delta;
            ll_new = detail::log_likelihood(x, y, candidate);
        }
        fit.iterations = iter;
        if (!(ll_new >= ll)) {
            // no ascent along the Newton direction: already at the optimum up to rounding
            fit.converged = (scale * delta).cwiseAbs().maxCoeff() < opt.coef_tol || std::fabs(ll_new - ll) < opt.loglik_tol;
            if (fit.converged) break;
            throw NonConvergenceError("step halving failed to increase the log-likelihood",
                                      std::vector<double>(beta.data(), beta.data() + beta.size()));
        }
        const double max_change = (scale * delta).cwiseAbs().maxCoeff();
        const double ll_change = ll_new - ll;
        beta = candidate;
        ll = ll_new;
        fit.log_likelihood_trace.push_back(ll);
        if (max_change < opt.coef_tol || ll_change < opt.loglik_tol) {
            fit.converged = true;
            break;
        }
    }
    if (!fit.converged)
        throw NonConvergenceError("logistic fit did not converge in " + std::to_string(opt.max_iter) + " iterations",
                                  std::vector<double>(beta.data(), beta.data() + beta.size()));

    fit.log_likelihood = ll;
    const Eigen::MatrixXd cov = information(beta).ldlt().solve(Eigen::MatrixXd::Identity(P, P));
    const double q = special::normal_quantile(0.5 + 0.5 * opt.confidence_level);
    fit.term_months = months;
    for (std::size_t j = 0; j < p; ++j) {
        const auto J = static_cast<Eigen::Index>(j);
        CoefficientRow row;
        row.term = names[j];
        row.estimate = beta(J);
        row.se = std::sqrt(cov(J, J));
        row.statistic = row.estimate / row.se;
        row.p_value = special::normal_two_sided_p(row.statistic);
        fit.rows.push_back(row);
        if (j == 0) {
            fit.odds.emplace_back(std::nullopt);
        } else {
            fit.odds.emplace_back(
                OddsRatio{std::exp(row.estimate), std::exp(row.estimate - q * row.se), std::exp(row.estimate + q * row.se)});
        }
    }
    return fit;
}

inline double predicted_probability(const LogisticFit& fit, int month) {
    if (!fit.converged) throw InvalidFitError("logistic fit did not converge; probabilities undefined");
    check_month(month);
    return detail::logistic(fit.eta(month));
}

}  // namespace moncal
