#include <gtest/gtest.h>

#include <random>

#include "moncal/descriptive.hpp"
#include "moncal/linmodel.hpp"
#include "support.hpp"

using namespace moncal;

namespace {

// Any sequence of length n rescaled to exactly the requested mean and sample sd.
std::vector<double> with_moments(std::size_t n, double mean, double sd, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    std::vector<double> x(n);
    for (auto& v : x) v = z(rng);
    double m = 0.0;
    for (double v : x) m += v / static_cast<double>(n);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    const double s = std::sqrt(ss / static_cast<double>(n - 1));
    for (auto& v : x) v = mean + sd * (v - m) / s;
    return x;
}

}  // namespace

TEST(SeriesSummary, NarrowSeriesInterval) {
    const auto x = with_moments(212, 0.72, 4.52);
    const auto s = series_summary(x);
    EXPECT_EQ(s.count, 212u);
    EXPECT_NEAR(s.mean, 0.72, 1e-12);
    EXPECT_NEAR(s.std_dev, 4.52, 1e-12);
    EXPECT_NEAR(s.lcl, 0.11, 0.01);
    EXPECT_NEAR(s.ucl, 1.33, 0.01);
}

TEST(SeriesSummary, WideSeriesInterval) {
    const auto s = series_summary(with_moments(212, 1.89, 15.30));
    EXPECT_NEAR(s.lcl, -0.17, 0.02);
    EXPECT_NEAR(s.ucl, 3.96, 0.02);
}

TEST(SeriesSummary, ConstantSequence) {
    const std::vector<double> x(10, 5.0);
    const auto s = series_summary(x);
    EXPECT_EQ(s.mean, 5.0);
    EXPECT_EQ(s.std_dev, 0.0);
    EXPECT_EQ(s.lcl, 5.0);
    EXPECT_EQ(s.ucl, 5.0);
    EXPECT_EQ(s.median, 5.0);
}

TEST(SeriesSummary, OrderStatistics) {
    const std::vector<double> x{4, -1, 7, 2};
    const auto s = series_summary(x);
    EXPECT_EQ(s.minimum, -1);
    EXPECT_EQ(s.maximum, 7);
    EXPECT_EQ(s.median, 3.0);  // midpoint of 2 and 4
    EXPECT_NEAR(s.std_dev, std::sqrt(((4 - 3.0) * (4 - 3.0) + 16 + 16 + 1) / 3.0), 1e-12);
}

TEST(SeriesSummary, Errors) {
    const std::vector<double> one{1.0};
    EXPECT_THROW(series_summary(one), InsufficientDataError);
    const std::vector<double> two{1.0, 2.0};
    EXPECT_THROW(series_summary(two, {1.0}), ConfigError);
    EXPECT_THROW(series_summary(two, {0.0}), ConfigError);
}

TEST(SeriesSummary, StudentTOptionIsWider) {
    const auto x = with_moments(18, 1.0, 3.0);
    const auto z = series_summary(x);
    const auto t = series_summary(x, {0.95, IntervalKind::StudentT});
    EXPECT_GT(t.ucl - t.lcl, z.ucl - z.lcl);
    EXPECT_NEAR((t.ucl - t.mean) / (t.std_dev / std::sqrt(18.0)), special::student_t_quantile(0.975, 17), 1e-9);
}

TEST(GroupFromMoments, KnownMonthRows) {
    const auto apr = group_from_moments(4, 18, 8.39, 3.86);
    EXPECT_NEAR(apr.lcl, 0.82, 0.01);
    EXPECT_NEAR(apr.ucl, 15.96, 0.01);
    EXPECT_TRUE(apr.significant);
    EXPECT_EQ(apr.tendency, Tendency::Positive);

    const auto dec = group_from_moments(12, 18, 1.72, 0.71);
    EXPECT_NEAR(dec.lcl, 0.33, 0.01);
    EXPECT_NEAR(dec.ucl, 3.11, 0.01);
    EXPECT_TRUE(dec.significant);
}

TEST(MonthlySummary, ReproducesGroupMomentsFromData) {
    // April returns built with mean 8.39 and SE 3.86 over 18 years
    std::vector<double> returns;
    std::vector<int> months;
    const auto april = with_moments(18, 8.39, 3.86 * std::sqrt(18.0), 3);
    for (int y = 0; y < 18; ++y)
        for (int m = 1; m <= 12; ++m) {
            returns.push_back(m == 4 ? april[static_cast<std::size_t>(y)] : 0.1 * ((y * 7 + m * 3) % 11) - 0.5);
            months.push_back(m);
        }
    const auto g = monthly_summary(returns, months);
    const auto& a = g[3];
    EXPECT_EQ(a.count, 18u);
    EXPECT_NEAR(a.se_mean, 3.86, 1e-9);
    EXPECT_NEAR(a.lcl, 0.82, 0.01);
    EXPECT_NEAR(a.ucl, 15.96, 0.01);
    EXPECT_TRUE(a.significant);
}

TEST(MonthlySummary, AllZeroReturns) {
    const auto p = synth::panel_from_returns(std::vector<double>(36, 0.0));
    for (const auto& g : monthly_summary(p)) {
        EXPECT_EQ(g.mean, 0.0);
        EXPECT_EQ(g.tendency, Tendency::Negative);
        EXPECT_FALSE(g.significant);
    }
}

TEST(MonthlySummary, ThinGroupNamesTheMonth) {
    const auto p = synth::panel_from_returns(std::vector<double>(20, 1.0));  // Sep..Dec appear once
    try {
        monthly_summary(p);
        FAIL();
    } catch (const InsufficientDataError& e) {
        EXPECT_NE(std::string(e.what()).find("September"), std::string::npos) << e.what();
    }
}

TEST(MonthlySummary, PoolingMarginAndMonotonicityProperties) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        std::array<double, 12> eff{};
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-3, 3);
        for (auto& e : eff) e = u(rng);
        const int years = 3 + static_cast<int>(seed % 9);
        auto r = synth::planted_returns(years, eff, 4.0, seed);
        r.resize(r.size() - seed % 7);  // uneven group sizes
        const auto p = synth::panel_from_returns(r);
        const auto groups = monthly_summary(p);
        const auto whole = series_summary(p.returns());

        double pooled = 0.0;
        std::size_t n = 0;
        for (const auto& g : groups) {
            pooled += g.mean * static_cast<double>(g.count);
            n += g.count;
            EXPECT_NEAR((g.ucl - g.mean) / g.se_mean, special::normal_quantile(0.975), 1e-6);
            EXPECT_EQ(g.significant, !(g.lcl <= 0.0 && 0.0 <= g.ucl));
            EXPECT_EQ(g.tendency == Tendency::Positive, g.mean > 0.0);
        }
        EXPECT_NEAR(pooled / static_cast<double>(n), whole.mean, 1e-9 * std::max(1.0, std::fabs(whole.mean)));

        const auto wider = monthly_summary(p, {0.99});
        for (std::size_t m = 0; m < 12; ++m) {
            EXPECT_LT(wider[m].lcl, groups[m].lcl);
            EXPECT_GT(wider[m].ucl, groups[m].ucl);
        }
    }
}

TEST(MonthlySummary, MatchesSaturatedRegression) {
    const auto p = synth::panel_from_returns(synth::planted_returns(9, {1, 2, 3, 4, 5, 6, -1, -2, -3, -4, -5, 0}, 2.0, 11));
    const auto groups = monthly_summary(p);
    const auto fit = ols(p.returns(), build_dummies(p));
    for (int m = 1; m <= 12; ++m) EXPECT_NEAR(fit.predict(m), groups[static_cast<std::size_t>(m - 1)].mean, 1e-9);
}
