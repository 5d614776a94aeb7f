// moncal: monthly seasonality analysis of index prices.
//
//   moncal analyze --input FILE --date-col NAME --price-col NAME [options]
//   moncal ingest  --input FILE ...            -> MonthlyPanel JSON
//   moncal summary|acf|decompose|regress|logit|report --panel FILE
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numerical error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "moncal/moncal.hpp"

namespace {

using namespace moncal;

struct InputArgs {
    std::string input;
    std::string date_col = "Date";
    std::string price_col = "Adj Close";
    std::string date_format = "%Y-%m-%d";
    std::string delimiter = ",";
    std::string symbol;
};

struct CommonArgs {
    std::string panel = "-";
    std::string format = "md";
    std::string out;
};

void add_input_options(CLI::App* cmd, InputArgs& a) {
    cmd->add_option("--input", a.input, "Daily price file (delimited text with a header row)")->required();
    cmd->add_option("--date-col", a.date_col, "Date column name")->capture_default_str();
    cmd->add_option("--price-col", a.price_col, "Adjusted close column name")->capture_default_str();
    cmd->add_option("--date-format", a.date_format, "Date format (%Y %y %m %d %b)")->capture_default_str();
    cmd->add_option("--delimiter", a.delimiter, "Field delimiter")->capture_default_str();
    cmd->add_option("--symbol", a.symbol, "Series label (defaults to the file stem)");
}

void add_common_options(CLI::App* cmd, CommonArgs& a, bool panel_input) {
    if (panel_input) cmd->add_option("--panel", a.panel, "MonthlyPanel JSON file, '-' for stdin")->capture_default_str();
    cmd->add_option("--format", a.format, "md, csv or json")->capture_default_str();
    cmd->add_option("--out", a.out, "Write output here instead of stdout");
}

ParseOptions parse_options(const InputArgs& a) {
    if (a.delimiter.size() != 1) throw ConfigError("--delimiter must be a single character");
    ParseOptions p;
    p.symbol = a.symbol.empty() ? std::filesystem::path(a.input).stem().string() : a.symbol;
    p.date_column = a.date_col;
    p.price_column = a.price_col;
    p.date_format = a.date_format;
    p.delimiter = a.delimiter[0];
    return p;
}

PriceSeries read_prices(const InputArgs& a) {
    std::ifstream in(a.input);
    if (!in) throw ConfigError("cannot open input file '" + a.input + "'");
    return parse_prices(in, parse_options(a));
}

MonthlyPanel read_panel(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open panel file '" + path + "'");
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("panel is not valid JSON: ") + e.what());
    }
    return panel_from_json(j);
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

void write_svgs(const std::string& dir, const ModeSelection& sel, const std::string& symbol) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    const std::string stem = symbol.empty() ? "series" : symbol;
    for (const auto* r : {&sel.additive, &sel.multiplicative}) {
        const std::string mode = r->mode == DecompositionMode::Additive ? "additive" : "multiplicative";
        write_output((std::filesystem::path(dir) / (stem + "_" + mode + ".svg")).string(), seasonal_svg(*r, symbol));
    }
}

MonthlyPanel with_returns(MonthlyPanel p, bool zero_positive) {
    return compute_returns(std::move(p), ReturnOptions{zero_positive});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monthly seasonality analysis of stock-index returns"};
    app.require_subcommand(1);

    // shared analysis knobs
    double confidence = 0.95;
    double alpha = 0.15;
    double alpha_enter = -1.0;
    double alpha_remove = -1.0;
    int reference_month = 12;
    int max_lag = 24;
    bool t_interval = false;
    bool zero_positive = false;
    bool seasonal_mean = false;
    int max_iter = 50;
    double tol = 1e-8;
    std::string svg_dir;

    auto add_analysis_options = [&](CLI::App* cmd) {
        cmd->add_option("--confidence", confidence, "Confidence level for intervals")->capture_default_str();
        cmd->add_option("--alpha", alpha, "Stepwise alpha to enter and to remove")->capture_default_str();
        cmd->add_option("--alpha-enter", alpha_enter, "Stepwise alpha to enter (overrides --alpha)");
        cmd->add_option("--alpha-remove", alpha_remove, "Stepwise alpha to remove (overrides --alpha)");
        cmd->add_option("--reference-month", reference_month, "Month without a dummy (1-12)")->capture_default_str();
        cmd->add_option("--max-lag", max_lag, "Correlogram lags")->capture_default_str();
        cmd->add_flag("--t-interval", t_interval, "Student-t intervals instead of normal");
        cmd->add_flag("--zero-positive", zero_positive, "Count a zero return as positive");
        cmd->add_flag("--seasonal-mean", seasonal_mean, "Seasonal indices from means instead of medians");
        cmd->add_option("--max-iter", max_iter, "Logistic iteration cap")->capture_default_str();
        cmd->add_option("--tol", tol, "Logistic coefficient tolerance")->capture_default_str();
        cmd->add_option("--svg-dir", svg_dir, "Write seasonal-analysis SVG figures here");
    };
    auto analysis_options = [&] {
        AnalysisOptions o;
        o.interval = {confidence, t_interval ? IntervalKind::StudentT : IntervalKind::Normal};
        o.returns.zero_is_positive = zero_positive;
        o.stepwise.alpha_enter = alpha_enter > 0 ? alpha_enter : alpha;
        o.stepwise.alpha_remove = alpha_remove > 0 ? alpha_remove : alpha;
        o.logistic.max_iter = max_iter;
        o.logistic.coef_tol = tol;
        o.seasonal_statistic = seasonal_mean ? SeasonalStatistic::Mean : SeasonalStatistic::Median;
        o.reference_month = reference_month;
        o.max_lag = max_lag;
        return o;
    };

    InputArgs input;
    CommonArgs common;

    auto* analyze = app.add_subcommand("analyze", "Full pipeline over a daily price file");
    add_input_options(analyze, input);
    add_common_options(analyze, common, false);
    add_analysis_options(analyze);

    auto* ingest = app.add_subcommand("ingest", "Daily prices -> MonthlyPanel JSON");
    add_input_options(ingest, input);
    ingest->add_option("--out", common.out, "Write output here instead of stdout");
    ingest->add_flag("--zero-positive", zero_positive, "Count a zero return as positive");

    auto* report = app.add_subcommand("report", "Full pipeline over a MonthlyPanel");
    add_common_options(report, common, true);
    add_analysis_options(report);

    auto* summary = app.add_subcommand("summary", "Whole-series and per-month statistics");
    add_common_options(summary, common, true);
    summary->add_option("--confidence", confidence, "Confidence level")->capture_default_str();
    summary->add_flag("--t-interval", t_interval, "Student-t intervals instead of normal");
    summary->add_flag("--zero-positive", zero_positive, "Count a zero return as positive");

    bool levels = false;
    auto* acf_cmd = app.add_subcommand("acf", "ACF/PACF correlograms and AR(1) fit");
    add_common_options(acf_cmd, common, true);
    acf_cmd->add_flag("--levels", levels, "Use month-end closes instead of percentage returns");
    acf_cmd->add_option("--max-lag", max_lag, "Number of lags")->capture_default_str();

    std::string mode = "auto";
    auto* decomp = app.add_subcommand("decompose", "Classical trend/seasonal decomposition of closes");
    add_common_options(decomp, common, true);
    decomp->add_option("--mode", mode, "auto, additive or multiplicative")->capture_default_str();
    decomp->add_flag("--seasonal-mean", seasonal_mean, "Seasonal indices from means instead of medians");
    decomp->add_option("--svg-dir", svg_dir, "Write seasonal-analysis SVG figures here");

    bool no_stepwise = false;
    auto* regress = app.add_subcommand("regress", "Month-dummy OLS with stepwise selection");
    add_common_options(regress, common, true);
    regress->add_option("--alpha", alpha, "Alpha to enter and to remove")->capture_default_str();
    regress->add_option("--alpha-enter", alpha_enter, "Alpha to enter");
    regress->add_option("--alpha-remove", alpha_remove, "Alpha to remove");
    regress->add_option("--reference-month", reference_month, "Month without a dummy")->capture_default_str();
    regress->add_flag("--no-stepwise", no_stepwise, "Report the full model only");

    auto* logit_cmd = app.add_subcommand("logit", "Logistic regression of the positive-return flag");
    add_common_options(logit_cmd, common, true);
    logit_cmd->add_option("--reference-month", reference_month, "Month without a dummy")->capture_default_str();
    logit_cmd->add_option("--max-iter", max_iter, "Iteration cap")->capture_default_str();
    logit_cmd->add_option("--tol", tol, "Coefficient tolerance")->capture_default_str();
    logit_cmd->add_flag("--zero-positive", zero_positive, "Count a zero return as positive");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        const Format fmt = parse_format(common.format);

        if (*analyze || *report) {
            ReportDocument doc;
            if (*analyze) {
                PipelineConfig cfg;
                cfg.input = input.input;
                cfg.parse = parse_options(input);
                cfg.analysis = analysis_options();
                doc = run_pipeline(cfg);
            } else {
                doc = analyze_panel(read_panel(common.panel), analysis_options());
            }
            write_output(common.out, render_report(doc, fmt));
            if (doc.decomposition) write_svgs(svg_dir, *doc.decomposition, doc.symbol);
            for (const auto& w : doc.warnings) std::cerr << "warning: " << w << '\n';
            return 0;
        }

        if (*ingest) {
            const auto series = read_prices(input);
            const auto panel = with_returns(to_month_end(series), zero_positive);
            if (series.skipped_rows) std::cerr << "skipped " << series.skipped_rows << " rows with empty price\n";
            write_output(common.out, panel_to_json(panel).dump(2) + "\n");
            return 0;
        }

        const MonthlyPanel panel = read_panel(common.panel);
        std::ostringstream os;

        if (*summary) {
            const auto p = with_returns(panel, zero_positive);
            const IntervalOptions iv{confidence, t_interval ? IntervalKind::StudentT : IntervalKind::Normal};
            const auto returns = p.returns();
            const auto s = series_summary(returns, iv);
            const auto g = monthly_summary(p, iv);
            if (fmt == Format::Json)
                os << nlohmann::json{{"summary", to_json(s)}, {"monthly", to_json(g)}}.dump(2) << '\n';
            else
                os << series_table(s, p.symbol).render(fmt) << '\n' << monthly_table(g, confidence).render(fmt);
        } else if (*acf_cmd) {
            const auto p = with_returns(panel, false);
            const auto x = levels ? p.closes() : p.returns();
            const int lag = std::min<int>(max_lag, static_cast<int>(x.size()) - 1);
            const auto a = acf(x, lag);
            const auto pa = pacf(x, lag);
            const auto ar = fit_ar1(x);
            const std::string what = levels ? "month-end levels" : "percentage returns";
            if (fmt == Format::Json) {
                os << nlohmann::json{{"series", levels ? "levels" : "returns"},
                                     {"acf", to_json(a)},
                                     {"pacf", to_json(pa)},
                                     {"ar1", to_json(ar)}}
                          .dump(2)
                   << '\n';
            } else if (fmt == Format::Csv) {
                os << correlogram_table(a, "ACF of " + what).csv() << '\n'
                   << correlogram_table(pa, "PACF of " + what).csv();
            } else {
                os << correlogram_chart(a, "ACF of " + what) << '\n' << correlogram_chart(pa, "PACF of " + what) << '\n'
                   << "AR(1): delta " << fixed(ar.delta, 4) << ", phi1 " << fixed(ar.phi1, 4) << ", residual sd "
                   << fixed(ar.residual_sd, 4) << '\n';
            }
        } else if (*decomp) {
            const SeasonalStatistic stat = seasonal_mean ? SeasonalStatistic::Mean : SeasonalStatistic::Median;
            ModeSelection sel = select_mode(panel, stat);
            if (mode == "additive")
                sel.selected = DecompositionMode::Additive;
            else if (mode == "multiplicative")
                sel.selected = DecompositionMode::Multiplicative;
            else if (mode != "auto")
                throw ConfigError("--mode must be auto, additive or multiplicative");
            if (fmt == Format::Json) {
                auto j = to_json(sel);
                j["trend_equation"] = trend_equation(sel.chosen(), panel.symbol);
                os << j.dump(2) << '\n';
            } else if (fmt == Format::Csv) {
                os << decomposition_table(sel, panel.symbol).csv() << '\n';
                const auto& d = sel.chosen();
                TextTable comp{"Components", {"t", "year", "month", "observed", "trend", "seasonal", "fitted", "irregular"}, {}, {}};
                for (std::size_t i = 0; i < d.observed.size(); ++i)
                    comp.rows.push_back({std::to_string(i + 1), std::to_string(panel.rows[i].year),
                                         std::to_string(d.months[i]), fixed(d.observed[i], 6),
                                         fixed(d.trend_values[i], 6), fixed(d.seasonal_at(d.months[i]), 6),
                                         fixed(d.fitted[i], 6), fixed(d.irregular[i], 6)});
                os << comp.csv();
            } else {
                os << decomposition_table(sel, panel.symbol).markdown();
            }
            write_svgs(svg_dir, sel, panel.symbol);
        } else if (*regress) {
            const auto p = with_returns(panel, false);
            const auto y = p.returns();
            const auto design = build_dummies(p, reference_month);
            StepwiseOptions so;
            so.alpha_enter = alpha_enter > 0 ? alpha_enter : alpha;
            so.alpha_remove = alpha_remove > 0 ? alpha_remove : alpha;
            const auto full = ols(y, design);
            if (no_stepwise) {
                if (fmt == Format::Json)
                    os << nlohmann::json{{"full", to_json(full)}}.dump(2) << '\n';
                else
                    os << "Full model: " << format_equation(full) << "\n\n"
                       << coefficient_table(full, "Full dummy model").render(fmt);
            } else {
                const auto sw = stepwise(y, design, so);
                if (fmt == Format::Json) {
                    os << nlohmann::json{{"full", to_json(full)}, {"stepwise", to_json(sw)}}.dump(2) << '\n';
                } else {
                    os << coefficient_table(full, "Full dummy model").render(fmt) << '\n';
                    os << (fmt == Format::Csv ? "# " : "") << format_equation(sw.fit) << " (R-square = "
                       << fixed(sw.fit.r_square) << ")\n\n";
                    os << coefficient_table(sw.fit, "Stepwise model").render(fmt) << '\n'
                       << stepwise_path_table(sw.path).render(fmt);
                }
            }
        } else if (*logit_cmd) {
            const auto p = with_returns(panel, zero_positive);
            LogisticOptions lo;
            lo.max_iter = max_iter;
            lo.coef_tol = tol;
            const auto fit = fit_logistic(p.positives(), build_dummies(p, reference_month), lo);
            if (fmt == Format::Json)
                os << to_json(fit).dump(2) << '\n';
            else
                os << logistic_table(fit).render(fmt);
        }
        write_output(common.out, os.str());
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
