#pragma once

// Daily price files -> month-end panel -> percentage returns and month dummies.

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "moncal/error.hpp"

namespace moncal {

using Date = std::chrono::year_month_day;

inline constexpr std::array<const char*, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

inline constexpr std::array<const char*, 12> kMonthAbbrev = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                             "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

inline std::string month_name(int month) { return kMonthNames.at(static_cast<std::size_t>(month - 1)); }
inline std::string month_abbrev(int month) { return kMonthAbbrev.at(static_cast<std::size_t>(month - 1)); }

inline void check_month(int month) {
    if (month < 1 || month > 12) throw ConfigError("month must be in 1..12, got " + std::to_string(month));
}

struct PriceObservation {
    Date date;
    double price;
};

/// Daily adjusted closes for one index, strictly increasing by date.
struct PriceSeries {
    std::string symbol;
    std::vector<PriceObservation> observations;
    std::size_t skipped_rows = 0;  // rows whose price field was empty
};

struct MonthlyRow {
    int year = 0;
    int month = 0;
    double close = 0.0;
    std::optional<double> return_pct;
    std::optional<bool> positive;
};

/// Contiguous month-end closes, optionally carrying returns.
struct MonthlyPanel {
    std::string symbol;
    std::vector<MonthlyRow> rows;

    bool has_returns() const { return rows.size() >= 2 && rows[1].return_pct.has_value(); }

    std::vector<double> closes() const {
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r.close);
        return out;
    }

    /// Returns of every row that has one, in order.
    std::vector<double> returns() const {
        std::vector<double> out;
        for (const auto& r : rows)
            if (r.return_pct) out.push_back(*r.return_pct);
        return out;
    }

    /// Calendar month of every row that has a return.
    std::vector<int> return_months() const {
        std::vector<int> out;
        for (const auto& r : rows)
            if (r.return_pct) out.push_back(r.month);
        return out;
    }

    std::vector<int> positives() const {
        std::vector<int> out;
        for (const auto& r : rows)
            if (r.positive) out.push_back(*r.positive ? 1 : 0);
        return out;
    }
};

/// Month indicators for every return row; the reference month has no column.
struct DummyDesign {
    int reference_month = 12;
    std::vector<int> column_months;  // 11 entries, calendar order
    std::vector<int> row_months;     // calendar month of each row

    std::size_t rows() const { return row_months.size(); }
    std::size_t cols() const { return column_months.size(); }
    int at(std::size_t row, std::size_t col) const { return row_months[row] == column_months[col] ? 1 : 0; }
    std::string column_name(std::size_t col) const { return month_name(column_months[col]); }
};

// ---------------------------------------------------------------------------
// parsing

struct ParseOptions {
    std::string symbol;
    std::string date_column = "Date";
    std::string price_column = "Adj Close";
    std::string date_format = "%Y-%m-%d";
    char delimiter = ',';
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

// Splits one line; double quotes group fields and "" escapes a quote.
inline std::vector<std::string> split_fields(std::string_view line, char delim) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delim) {
            out.emplace_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.emplace_back(trim(cur));
    return out;
}

inline bool read_int(std::string_view s, std::size_t& pos, std::size_t max_digits, int& value) {
    std::size_t n = 0;
    while (pos + n < s.size() && n < max_digits && s[pos + n] >= '0' && s[pos + n] <= '9') ++n;
    if (n == 0) return false;
    std::from_chars(s.data() + pos, s.data() + pos + n, value);
    pos += n;
    return true;
}

}  // namespace detail

/// Parses a date using a strftime-like format. Supported: %Y %y %m %d %b %%; other characters match literally.
inline std::optional<Date> parse_date(std::string_view text, std::string_view format) {
    int y = -1, m = -1, d = -1;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < format.size(); ++i) {
        const char f = format[i];
        if (f == '%' && i + 1 < format.size()) {
            const char spec = format[++i];
            switch (spec) {
                case 'Y':
                    if (!detail::read_int(text, pos, 4, y)) return std::nullopt;
                    break;
                case 'y':
                    if (!detail::read_int(text, pos, 2, y)) return std::nullopt;
                    y += y < 69 ? 2000 : 1900;
                    break;
                case 'm':
                    if (!detail::read_int(text, pos, 2, m)) return std::nullopt;
                    break;
                case 'd':
                    if (!detail::read_int(text, pos, 2, d)) return std::nullopt;
                    break;
                case 'b': {
                    if (pos + 3 > text.size()) return std::nullopt;
                    std::string abbr(text.substr(pos, 3));
                    for (auto& ch : abbr) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
                    m = -1;
                    for (int k = 0; k < 12; ++k) {
                        std::string ref = kMonthAbbrev[static_cast<std::size_t>(k)];
                        for (auto& ch : ref) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
                        if (ref == abbr) m = k + 1;
                    }
                    if (m < 0) return std::nullopt;
                    pos += 3;
                    break;
                }
                case '%':
                    if (pos >= text.size() || text[pos] != '%') return std::nullopt;
                    ++pos;
                    break;
                default:
                    throw ConfigError(std::string("unsupported date format directive %") + spec);
            }
        } else {
            if (pos >= text.size() || text[pos] != f) return std::nullopt;
            ++pos;
        }
    }
    if (pos != text.size() || y < 0 || m < 0 || d < 0) return std::nullopt;
    const Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!date.ok()) return std::nullopt;
    return date;
}

inline std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                  static_cast<unsigned>(d.day()));
    return buf;
}

/// Reads a delimited price file with a header row. Rows with an empty price are skipped and counted.
inline PriceSeries parse_prices(std::istream& in, const ParseOptions& opt) {
    std::string line;
    if (!std::getline(in, line)) throw EmptyInputError("input is empty: no header row");
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // UTF-8 BOM
    const auto header = detail::split_fields(line, opt.delimiter);
    auto find_col = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ConfigError("column '" + name + "' not found in header");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t date_idx = find_col(opt.date_column);
    const std::size_t price_idx = find_col(opt.price_column);

    PriceSeries series;
    series.symbol = opt.symbol;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split_fields(line, opt.delimiter);
        const std::string empty;
        const std::string& date_text = date_idx < fields.size() ? fields[date_idx] : empty;
        const std::string& price_text = price_idx < fields.size() ? fields[price_idx] : empty;
        if (price_text.empty() || price_text == "null" || price_text == "NA") {
            ++series.skipped_rows;
            continue;
        }
        const auto date = parse_date(date_text, opt.date_format);
        if (!date) throw DataError("row " + std::to_string(line_no) + ": unparseable date '" + date_text + "'");
        double price = 0.0;
        const auto [ptr, ec] = std::from_chars(price_text.data(), price_text.data() + price_text.size(), price);
        if (ec != std::errc{} || ptr != price_text.data() + price_text.size() || !std::isfinite(price))
            throw DataError("row " + std::to_string(line_no) + ": unparseable price '" + price_text + "'");
        if (!(price > 0.0))
            throw DataError("row " + std::to_string(line_no) + ": price must be positive, got " + price_text);
        series.observations.push_back({*date, price});
    }
    if (series.observations.empty()) throw EmptyInputError("no parseable price rows in input");
    std::stable_sort(series.observations.begin(), series.observations.end(),
                     [](const auto& a, const auto& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < series.observations.size(); ++i)
        if (series.observations[i].date == series.observations[i - 1].date)
            throw DataError("duplicate date " + format_date(series.observations[i].date));
    return series;
}

inline PriceSeries parse_prices(std::string_view text, const ParseOptions& opt) {
    std::istringstream in{std::string(text)};
    return parse_prices(in, opt);
}

// ---------------------------------------------------------------------------
// resampling and derived encodings

/// Month-end closes: the price on the latest observed date of each calendar month.
inline MonthlyPanel to_month_end(const PriceSeries& series) {
    if (series.observations.empty()) throw EmptyInputError("price series is empty");
    MonthlyPanel panel;
    panel.symbol = series.symbol;
    // observations are sorted, so the last one seen per month wins
    std::map<std::pair<int, int>, std::pair<Date, double>> last;
    for (const auto& ob : series.observations) {
        const std::pair key{static_cast<int>(ob.date.year()), static_cast<int>(static_cast<unsigned>(ob.date.month()))};
        auto it = last.find(key);
        if (it == last.end() || it->second.first < ob.date) last[key] = {ob.date, ob.price};
    }
    for (const auto& [key, value] : last) {
        if (!panel.rows.empty()) {
            int y = panel.rows.back().year;
            int m = panel.rows.back().month + 1;
            if (m == 13) {
                m = 1;
                ++y;
            }
            if (key != std::pair{y, m}) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%04d-%02d", y, m);
                throw GapError(std::string("no observations in month ") + buf + "; panel must be contiguous", y, m);
            }
        }
        panel.rows.push_back({key.first, key.second, value.second, std::nullopt, std::nullopt});
    }
    return panel;
}

struct ReturnOptions {
    bool zero_is_positive = false;
};

/// Percentage month-over-month returns; the first row has none.
inline MonthlyPanel compute_returns(MonthlyPanel panel, const ReturnOptions& opt = {}) {
    if (panel.rows.size() < 2)
        throw InsufficientDataError("at least 2 monthly closes are needed to compute returns");
    panel.rows[0].return_pct.reset();
    panel.rows[0].positive.reset();
    for (std::size_t t = 1; t < panel.rows.size(); ++t) {
        const double prev = panel.rows[t - 1].close;
        const double r = 100.0 * (panel.rows[t].close - prev) / prev;
        panel.rows[t].return_pct = r;
        panel.rows[t].positive = opt.zero_is_positive ? r >= 0.0 : r > 0.0;
    }
    return panel;
}

inline DummyDesign build_dummies(const std::vector<int>& row_months, int reference_month = 12) {
    check_month(reference_month);
    DummyDesign design;
    design.reference_month = reference_month;
    for (int m = 1; m <= 12; ++m)
        if (m != reference_month) design.column_months.push_back(m);
    for (int m : row_months) check_month(m);
    design.row_months = row_months;
    return design;
}

inline DummyDesign build_dummies(const MonthlyPanel& panel, int reference_month = 12) {
    if (!panel.has_returns()) throw InsufficientDataError("panel has no returns; call compute_returns first");
    return build_dummies(panel.return_months(), reference_month);
}

// ---------------------------------------------------------------------------
// JSON interchange: {symbol, rows: [{year, month, close, return_pct|null, positive|null}]}

inline nlohmann::json panel_to_json(const MonthlyPanel& panel) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : panel.rows) {
        nlohmann::json row;
        row["year"] = r.year;
        row["month"] = r.month;
        row["close"] = r.close;
        row["return_pct"] = r.return_pct ? nlohmann::json(*r.return_pct) : nlohmann::json(nullptr);
        row["positive"] = r.positive ? nlohmann::json(*r.positive) : nlohmann::json(nullptr);
        rows.push_back(std::move(row));
    }
    return {{"symbol", panel.symbol}, {"rows", std::move(rows)}};
}

inline MonthlyPanel panel_from_json(const nlohmann::json& j) {
    try {
        MonthlyPanel panel;
        panel.symbol = j.value("symbol", std::string{});
        for (const auto& row : j.at("rows")) {
            MonthlyRow r;
            r.year = row.at("year").get<int>();
            r.month = row.at("month").get<int>();
            check_month(r.month);
            r.close = row.at("close").get<double>();
            if (!(r.close > 0.0)) throw DataError("panel close must be positive");
            if (row.contains("return_pct") && !row["return_pct"].is_null())
                r.return_pct = row["return_pct"].get<double>();
            if (row.contains("positive") && !row["positive"].is_null()) {
                const auto& p = row["positive"];
                r.positive = p.is_boolean() ? p.get<bool>() : p.get<int>() != 0;
            }
            panel.rows.push_back(r);
        }
        for (std::size_t i = 1; i < panel.rows.size(); ++i) {
            const auto& a = panel.rows[i - 1];
            const auto& b = panel.rows[i];
            const bool next = (b.year == a.year && b.month == a.month + 1) ||
                              (b.year == a.year + 1 && a.month == 12 && b.month == 1);
            if (!next) throw GapError("panel rows are not consecutive months", b.year, b.month);
        }
        return panel;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed panel JSON: ") + e.what());
    } catch (const ConfigError& e) {
        throw DataError(std::string("malformed panel JSON: ") + e.what());
    }
}

}  // namespace moncal
