#include <gtest/gtest.h>

#include <random>

#include "moncal/logit.hpp"
#include "support.hpp"

using namespace moncal;

namespace {

struct Binary {
    std::vector<int> y;
    std::vector<int> months;
};

// Each month gets 18 observations with positives[m-1] ones.
Binary with_counts(const std::array<int, 12>& positives, int per_month = 18) {
    Binary b;
    for (int year = 0; year < per_month; ++year)
        for (int m = 1; m <= 12; ++m) {
            b.y.push_back(year < positives[static_cast<std::size_t>(m - 1)] ? 1 : 0);
            b.months.push_back(m);
        }
    return b;
}

double logit(double p) { return std::log(p / (1 - p)); }

}  // namespace

TEST(Logistic, DecemberMayClosedForm) {
    std::array<int, 12> pos;
    pos.fill(9);
    pos[11] = 12;
    pos[4] = 6;
    const auto b = with_counts(pos);
    const auto fit = fit_logistic(b.y, build_dummies(b.months, 12));
    ASSERT_TRUE(fit.converged);
    EXPECT_NEAR(fit.rows[0].estimate, std::log(2.0), 1e-6);
    EXPECT_NEAR(fit.rows[0].se, std::sqrt(1.0 / 12 + 1.0 / 6), 1e-6);
    const auto& may = fit.rows[5];
    ASSERT_EQ(may.term, "May");
    EXPECT_NEAR(may.estimate, std::log(0.25), 1e-6);
    EXPECT_NEAR(may.se, std::sqrt(1.0 / 12 + 1.0 / 6 + 1.0 / 6 + 1.0 / 12), 1e-6);
    const auto& orr = *fit.odds[5];
    EXPECT_NEAR(orr.ratio, 0.25, 1e-6);
    EXPECT_NEAR(orr.lcl, 0.0625, 0.0005);
    EXPECT_NEAR(orr.ucl, 1.0, 0.001);
    EXPECT_NEAR(may.p_value, 0.05, 0.001);
    for (std::size_t i = 1; i < fit.rows.size(); ++i) {
        EXPECT_NEAR(fit.rows[i].statistic, fit.rows[i].estimate / fit.rows[i].se, 1e-9);
        EXPECT_NEAR(fit.odds[i]->ratio, std::exp(fit.rows[i].estimate), 1e-9);
        EXPECT_LT(fit.odds[i]->lcl, fit.odds[i]->ratio);
        EXPECT_GT(fit.odds[i]->ucl, fit.odds[i]->ratio);
    }
    EXPECT_NEAR(predicted_probability(fit, 12), 2.0 / 3.0, 1e-8);
}

TEST(Logistic, ConstantFromFourteenOfEighteen) {
    std::array<int, 12> pos;
    pos.fill(9);
    pos[11] = 14;
    const auto b = with_counts(pos);
    const auto fit = fit_logistic(b.y, build_dummies(b.months));
    EXPECT_NEAR(fit.rows[0].estimate, 1.2528, 1e-4);
    EXPECT_NEAR(fit.rows[0].se, 0.567, 1e-3);
}

TEST(Logistic, SymmetricSplitsGiveZero) {
    std::array<int, 12> pos;
    pos.fill(9);
    const auto b = with_counts(pos);
    const auto fit = fit_logistic(b.y, build_dummies(b.months));
    for (std::size_t i = 0; i < fit.rows.size(); ++i) {
        EXPECT_NEAR(fit.rows[i].estimate, 0.0, 1e-8);
        if (i > 0) EXPECT_NEAR(fit.odds[i]->ratio, 1.0, 1e-8);
    }
    for (int m = 1; m <= 12; ++m) EXPECT_NEAR(predicted_probability(fit, m), 0.5, 1e-12);
}

TEST(Logistic, SeparationNamesTheMonth) {
    std::array<int, 12> pos;
    pos.fill(9);
    pos[2] = 18;
    const auto b = with_counts(pos);
    try {
        fit_logistic(b.y, build_dummies(b.months));
        FAIL();
    } catch (const SeparationError& e) {
        EXPECT_EQ(e.group, "March");
        EXPECT_TRUE(std::isinf(e.diverging_coefficient) && e.diverging_coefficient > 0);
        EXPECT_EQ(e.exit_code(), 3);
    }
    pos[2] = 9;
    pos[11] = 0;
    const auto c = with_counts(pos);
    try {
        fit_logistic(c.y, build_dummies(c.months));
        FAIL();
    } catch (const SeparationError& e) {
        EXPECT_EQ(e.group, "December");
        EXPECT_NE(std::string(e.what()).find("Constant"), std::string::npos);
    }
}

TEST(Logistic, SaturatedMatchesGroupFrequencies) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> u(2, 16);
        std::array<int, 12> pos;
        for (auto& p : pos) p = u(rng);
        const auto b = with_counts(pos);
        const int ref = 1 + static_cast<int>(seed % 12);
        const auto fit = fit_logistic(b.y, build_dummies(b.months, ref));
        const double lref = logit(pos[static_cast<std::size_t>(ref - 1)] / 18.0);
        EXPECT_NEAR(fit.rows[0].estimate, lref, 1e-6);
        for (std::size_t i = 1; i < fit.rows.size(); ++i) {
            const int m = fit.term_months[i];
            EXPECT_NEAR(fit.rows[i].estimate, logit(pos[static_cast<std::size_t>(m - 1)] / 18.0) - lref, 1e-6);
        }
        for (int m = 1; m <= 12; ++m)
            EXPECT_NEAR(predicted_probability(fit, m), pos[static_cast<std::size_t>(m - 1)] / 18.0, 1e-8);
        for (std::size_t k = 1; k < fit.log_likelihood_trace.size(); ++k)
            EXPECT_GE(fit.log_likelihood_trace[k], fit.log_likelihood_trace[k - 1]);
        EXPECT_EQ(fit.log_likelihood, fit.log_likelihood_trace.back());
    }
}

TEST(Logistic, ReferenceMonthChangeKeepsProbabilities) {
    std::mt19937_64 rng(77);
    std::bernoulli_distribution coin(0.55);
    Binary b;
    for (int i = 0; i < 12 * 15 + 5; ++i) {
        b.y.push_back(coin(rng) ? 1 : 0);
        b.months.push_back(i % 12 + 1);
    }
    const auto a = fit_logistic(b.y, build_dummies(b.months, 12));
    const auto c = fit_logistic(b.y, build_dummies(b.months, 3));
    for (int m = 1; m <= 12; ++m) EXPECT_NEAR(predicted_probability(a, m), predicted_probability(c, m), 1e-8);
    // coefficients shift by the logit offset between references
    EXPECT_NEAR(c.rows[0].estimate, a.eta(3), 1e-8);
}

TEST(Logistic, Errors) {
    std::array<int, 12> pos;
    pos.fill(9);
    const auto b = with_counts(pos);
    auto bad = b.y;
    bad[0] = 2;
    EXPECT_THROW(fit_logistic(bad, build_dummies(b.months)), DataError);
    EXPECT_THROW(fit_logistic(std::vector<int>(12, 1), build_dummies(synth::calendar_months(12))), InsufficientDataError);

    LogisticFit unconverged;
    unconverged.rows.push_back({"Constant", 0.0, 1.0, 0.0, 1.0});
    unconverged.term_months = {0};
    EXPECT_THROW(predicted_probability(unconverged, 1), InvalidFitError);
    unconverged.converged = true;
    EXPECT_EQ(predicted_probability(unconverged, 1), 0.5);
}

TEST(Logistic, IterationCapRaises) {
    std::array<int, 12> pos;
    pos.fill(9);
    pos[0] = 17;
    const auto b = with_counts(pos);
    LogisticOptions opt;
    opt.max_iter = 1;
    try {
        fit_logistic(b.y, build_dummies(b.months), opt);
        FAIL();
    } catch (const NonConvergenceError& e) {
        EXPECT_EQ(e.last_iterate.size(), 12u);
    }
}
