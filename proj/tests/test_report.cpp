#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>

#include "moncal/moncal.hpp"
#include "support.hpp"

using namespace moncal;

namespace {

std::array<double, 12> april_effect(double v) {
    std::array<double, 12> e{};
    e[3] = v;
    return e;
}

// Mean 0 outside April. The default effect is strong enough to be significant under every
// method yet leaves a few negative Aprils, so the logistic fit is not separated.
MonthlyPanel planted_april_panel(std::uint64_t seed = 4, double effect = 5.0, int years = 25) {
    return synth::panel_from_returns(synth::planted_returns(years, april_effect(effect), 4.0, seed));
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST(Matrix, PlantedAprilAgreesAcrossMethods) {
    const auto doc = analyze_panel(planted_april_panel(), {});
    ASSERT_TRUE(doc.matrix) << doc.matrix.error;
    const auto& m = *doc.matrix;
    for (Method method : {Method::Statistical, Method::DummyRegression, Method::Logistic}) {
        EXPECT_EQ(m.at(4, method).sign, Sign::Pos) << to_string(method);
        EXPECT_TRUE(m.at(4, method).significant) << to_string(method);
    }
    EXPECT_FALSE(m.at(4, Method::Decomposition).significant);
}

TEST(Matrix, StatisticalColumnMirrorsDescriptive) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto doc = analyze_panel(planted_april_panel(seed, 2.0, 18), {});
        ASSERT_TRUE(doc.matrix) << doc.matrix.error;
        for (int month = 1; month <= 12; ++month) {
            const auto& g = (*doc.monthly)[static_cast<std::size_t>(month - 1)];
            const auto& v = doc.matrix->at(month, Method::Statistical);
            EXPECT_EQ(v.sign == Sign::Pos, g.tendency == Tendency::Positive);
            EXPECT_EQ(v.significant, g.significant);
        }
        for (int month = 1; month <= 12; ++month)
            for (Method method : kMethods) {
                const auto& v = doc.matrix->at(month, method);
                EXPECT_EQ(v.method, method);
                if (v.significant) EXPECT_NE(v.sign, Sign::None);
            }
    }
}

TEST(Matrix, ZeroReturnsUseTieRules) {
    // constant closes: no logistic fit is possible (every month non-positive), so build the cells directly
    const auto p = synth::panel_from_returns(std::vector<double>(36, 0.0));
    const auto groups = monthly_summary(p);
    const auto dec = decompose(p);
    const auto design = build_dummies(p);
    const auto step = stepwise(p.returns(), design);

    LogisticFit lf;
    lf.n = p.returns().size();
    lf.converged = true;
    lf.rows.push_back({"Constant", 0.0, 1.0, 0.0, 1.0});
    lf.term_months.push_back(0);
    for (int m : design.column_months) {
        lf.rows.push_back({month_name(m), 0.0, 1.0, 0.0, 1.0});
        lf.term_months.push_back(m);
    }
    const auto mat = build_matrix(groups, dec, step.fit, lf);
    for (int month = 1; month <= 12; ++month) {
        EXPECT_EQ(mat.at(month, Method::Statistical).sign, Sign::Neg);
        EXPECT_FALSE(mat.at(month, Method::Statistical).significant);
        EXPECT_EQ(mat.at(month, Method::Decomposition).sign, Sign::Neg);
        EXPECT_EQ(mat.at(month, Method::DummyRegression).sign, Sign::None);
        EXPECT_EQ(mat.at(month, Method::Logistic).sign, month == 12 ? Sign::Pos : Sign::Neg);
    }
    EXPECT_THROW(fit_logistic(p.positives(), design), SeparationError);
}

TEST(Matrix, MismatchedPanelsRaise) {
    const auto a = planted_april_panel(1, 2.0, 18);
    auto shorter = a;
    shorter.rows.resize(shorter.rows.size() - 12);
    const auto groups = monthly_summary(a);
    const auto design = build_dummies(a);
    const auto step = stepwise(a.returns(), design);
    const auto lf = fit_logistic(a.positives(), design);
    EXPECT_THROW(build_matrix(groups, decompose(shorter), step.fit, lf), ConsistencyError);
    const auto short_design = build_dummies(shorter);
    EXPECT_THROW(build_matrix(groups, decompose(a), stepwise(shorter.returns(), short_design).fit, lf),
                 ConsistencyError);
}

TEST(Pipeline, ShortSeriesDegradesDecomposition) {
    auto closes = std::vector<double>();
    for (int i = 0; i < 18; ++i) closes.push_back(100.0 + ((i * 7) % 5) - 2.0 + 0.5 * i);
    const auto path = write_temp("moncal_short.csv", synth::daily_csv(synth::panel_from_closes(closes)));
    PipelineConfig cfg;
    cfg.input = path;
    const auto doc = run_pipeline(cfg);
    EXPECT_EQ(doc.symbol, "moncal_short");
    EXPECT_FALSE(doc.decomposition);
    EXPECT_NE(doc.decomposition.error.find("24"), std::string::npos) << doc.decomposition.error;
    EXPECT_TRUE(doc.series);
    EXPECT_TRUE(doc.levels_correlogram);
    EXPECT_FALSE(doc.warnings.empty());
    const auto j = to_json(doc);
    EXPECT_TRUE(validate_report_json(j).empty());
    EXPECT_TRUE(j["decomposition"].contains("error"));
    EXPECT_NO_THROW(render_report(doc, Format::Markdown));
    std::filesystem::remove(path);
}

TEST(Pipeline, MissingFileIsConfigError) {
    PipelineConfig cfg;
    cfg.input = "/nonexistent/prices.csv";
    try {
        run_pipeline(cfg);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.exit_code(), 1);
    }
}

TEST(Pipeline, DeterministicSchemaValidJson) {
    const auto panel = planted_april_panel(9);
    const auto path = write_temp("moncal_full.csv", synth::daily_csv(panel));
    PipelineConfig cfg;
    cfg.input = path;
    cfg.parse.symbol = "SYN";
    const auto a = to_json(run_pipeline(cfg)).dump(2);
    const auto b = to_json(run_pipeline(cfg)).dump(2);
    EXPECT_EQ(a, b);
    const auto j = nlohmann::json::parse(a);
    const auto problems = validate_report_json(j);
    EXPECT_TRUE(problems.empty()) << problems.front();
    EXPECT_EQ(j["schema_version"], "1.0");
    EXPECT_EQ(j["input"]["months"], panel.rows.size());
    EXPECT_EQ(j["input"]["price_rows"], 3 * panel.rows.size());
    EXPECT_TRUE(j["warnings"].empty());
    std::filesystem::remove(path);
}

TEST(Pipeline, PanelJsonRoundTrip) {
    const auto panel = planted_april_panel(2);
    const auto back = panel_from_json(panel_to_json(panel));
    ASSERT_EQ(back.rows.size(), panel.rows.size());
    EXPECT_EQ(to_json(analyze_panel(back, {})).dump(), to_json(analyze_panel(panel, {})).dump());
}

TEST(Pipeline, RejectsBadOptions) {
    AnalysisOptions opt;
    opt.reference_month = 13;
    EXPECT_THROW(analyze_panel(planted_april_panel(), opt), ConfigError);
    opt = {};
    opt.stepwise.alpha_enter = 0.3;
    EXPECT_THROW(analyze_panel(planted_april_panel(), opt), ConfigError);
}

TEST(Render, FormatsContainTheTables) {
    const auto doc = analyze_panel(planted_april_panel(), {});
    const auto md = render_report(doc, Format::Markdown);
    for (const char* needle : {"Return = ", "April", "Odds Ratio", "decomposition: seasonal", "Pos*", "(n/a)", "| Month"})
        EXPECT_NE(md.find(needle), std::string::npos) << needle;
    EXPECT_FALSE(std::regex_search(md, std::regex(R"(-0\.0+(?![0-9]))")));
    const auto csv = render_report(doc, Format::Csv);
    EXPECT_NE(csv.find("Month,"), std::string::npos);
    const auto js = nlohmann::json::parse(render_report(doc, Format::Json));
    EXPECT_TRUE(validate_report_json(js).empty());
    EXPECT_THROW(parse_format("xml"), ConfigError);
    EXPECT_EQ(fixed(-0.001), "0.00");
    EXPECT_EQ(fixed(2.345, 1), "2.3");
}

TEST(Render, SeasonalSvg) {
    const auto d = decompose(synth::panel_from_closes(synth::multiplicative_closes(3)));
    const auto svg = seasonal_svg(d, "SYN");
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_NE(svg.find("SYN"), std::string::npos);
}
