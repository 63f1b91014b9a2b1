#include "murphy/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "murphy/errors.hpp"

namespace murphy {

namespace {

// Splits one CSV record, honoring double-quoted fields with "" escapes.
std::vector<std::string> split_record(const std::string& line, const std::string& where) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    if (quoted) {
        throw csv_error(where + ": unterminated quoted field");
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

struct Header {
    std::map<std::string, std::size_t> columns;
    std::string source;

    std::size_t require(const std::string& name) const {
        auto it = columns.find(name);
        if (it == columns.end()) {
            throw csv_error(source + ": missing required column '" + name + "'");
        }
        return it->second;
    }

    std::optional<std::size_t> optional(const std::string& name) const {
        auto it = columns.find(name);
        if (it == columns.end()) return std::nullopt;
        return it->second;
    }
};

Header read_header(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) {
        throw csv_error(source + ": empty input, header row required");
    }
    Header header;
    header.source = source;
    const std::vector<std::string> names = split_record(line, source + ", header");
    for (std::size_t i = 0; i < names.size(); ++i) {
        const std::string name = trim(names[i]);
        if (name.empty()) continue;
        if (!header.columns.emplace(name, i).second) {
            throw csv_error(source + ": duplicate header column '" + name + "'");
        }
    }
    return header;
}

std::string cell(const std::vector<std::string>& fields, std::size_t idx,
                 const std::string& column, const std::string& where) {
    if (idx >= fields.size()) {
        throw csv_error(where + ", column '" + column + "': missing field");
    }
    return trim(fields[idx]);
}

double parse_double(const std::string& raw, const std::string& column,
                    const std::string& where) {
    double value = 0.0;
    const char* begin = raw.data();
    const char* end = raw.data() + raw.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || raw.empty()) {
        throw csv_error(where + ", column '" + column + "': '" + raw + "' is not a number");
    }
    if (!std::isfinite(value)) {
        throw csv_error(where + ", column '" + column + "': non-finite value");
    }
    return value;
}

int parse_int(const std::string& raw, const std::string& column, const std::string& where) {
    int value = 0;
    const char* begin = raw.data();
    const char* end = raw.data() + raw.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || raw.empty()) {
        throw csv_error(where + ", column '" + column + "': '" + raw +
                        "' is not an integer");
    }
    return value;
}

template <typename RowFn>
void for_each_record(std::istream& in, const std::string& source, RowFn&& fn) {
    std::string line;
    std::size_t row = 1;  // header was row 1
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const std::string where = source + ": row " + std::to_string(row);
        fn(split_record(line, where), where);
    }
}

std::ifstream open_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw csv_error(path + ": cannot open file");
    }
    return in;
}

}  // namespace

ForecastTable read_forecast_table(std::istream& in, const std::string& source_name) {
    const Header header = read_header(in, source_name);
    const std::size_t c_period = header.require("period");
    const std::size_t c_horizon = header.require("horizon");
    const std::size_t c_forecast = header.require("forecast");
    const std::size_t c_real = header.require("realization");
    const std::optional<std::size_t> c_tau = header.optional("tau");

    ForecastTable table;
    table.has_tau = c_tau.has_value();
    std::set<std::tuple<std::string, int, double>> keys;
    for_each_record(in, source_name, [&](const std::vector<std::string>& f,
                                         const std::string& where) {
        ForecastRow row;
        row.period = cell(f, c_period, "period", where);
        row.horizon = parse_int(cell(f, c_horizon, "horizon", where), "horizon", where);
        row.forecast =
            parse_double(cell(f, c_forecast, "forecast", where), "forecast", where);
        row.realization =
            parse_double(cell(f, c_real, "realization", where), "realization", where);
        if (c_tau) {
            row.tau = parse_double(cell(f, *c_tau, "tau", where), "tau", where);
        }
        if (!keys.emplace(row.period, row.horizon, row.tau.value_or(-1.0)).second) {
            throw csv_error(where + ": duplicate (period, horizon, tau) key");
        }
        table.rows.push_back(std::move(row));
    });
    return table;
}

ForecastTable read_forecast_table_file(const std::string& path) {
    std::ifstream in = open_file(path);
    return read_forecast_table(in, path);
}

std::vector<BoeRow> read_boe_table(std::istream& in, const std::string& source_name) {
    const Header header = read_header(in, source_name);
    const std::size_t c_period = header.require("period");
    const std::size_t c_horizon = header.require("horizon");
    const std::size_t c_mu = header.require("mu");
    const std::size_t c_sigma = header.require("sigma");
    const std::size_t c_xi = header.require("xi");

    std::vector<BoeRow> rows;
    std::set<std::pair<std::string, int>> keys;
    for_each_record(in, source_name, [&](const std::vector<std::string>& f,
                                         const std::string& where) {
        BoeRow row;
        row.period = cell(f, c_period, "period", where);
        row.horizon = parse_int(cell(f, c_horizon, "horizon", where), "horizon", where);
        row.mu = parse_double(cell(f, c_mu, "mu", where), "mu", where);
        row.sigma = parse_double(cell(f, c_sigma, "sigma", where), "sigma", where);
        row.xi = parse_double(cell(f, c_xi, "xi", where), "xi", where);
        if (!keys.emplace(row.period, row.horizon).second) {
            throw csv_error(where + ": duplicate (period, horizon) key");
        }
        rows.push_back(std::move(row));
    });
    return rows;
}

std::vector<BoeRow> read_boe_table_file(const std::string& path) {
    std::ifstream in = open_file(path);
    return read_boe_table(in, path);
}

std::vector<RealizationRow> read_realization_series(std::istream& in,
                                                    const std::string& source_name) {
    const Header header = read_header(in, source_name);
    const std::size_t c_period = header.require("period");
    const std::size_t c_real = header.require("realization");

    std::vector<RealizationRow> rows;
    std::set<std::string> keys;
    for_each_record(in, source_name, [&](const std::vector<std::string>& f,
                                         const std::string& where) {
        RealizationRow row;
        row.period = cell(f, c_period, "period", where);
        row.realization =
            parse_double(cell(f, c_real, "realization", where), "realization", where);
        if (!keys.insert(row.period).second) {
            throw csv_error(where + ": duplicate period '" + row.period + "'");
        }
        rows.push_back(std::move(row));
    });
    return rows;
}

std::vector<RealizationRow> read_realization_series_file(const std::string& path) {
    std::ifstream in = open_file(path);
    return read_realization_series(in, path);
}

std::vector<ForecastSeries> to_series_by_horizon(const ForecastTable& table,
                                                 std::optional<double> tau) {
    std::map<int, ForecastSeries> by_horizon;
    for (const ForecastRow& row : table.rows) {
        if (tau.has_value() && row.tau.has_value() &&
            std::fabs(*row.tau - *tau) > 1e-9) {
            continue;
        }
        ForecastSeries& series = by_horizon[row.horizon];
        series.horizon = row.horizon;
        series.periods.push_back(row.period);
        series.forecasts.push_back(row.forecast);
        series.realizations.push_back(row.realization);
    }
    std::vector<ForecastSeries> out;
    out.reserve(by_horizon.size());
    for (auto& [h, series] : by_horizon) out.push_back(std::move(series));
    return out;
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

void write_forecast_series_csv(std::ostream& out, const ForecastSeries& series) {
    out << "period,horizon,forecast,realization\n";
    for (std::size_t t = 0; t < series.forecasts.size(); ++t) {
        out << csv_escape(series.periods[t]) << ',' << series.horizon << ','
            << format_double(series.forecasts[t]) << ','
            << format_double(series.realizations[t]) << '\n';
    }
}

void write_panel_csv(std::ostream& out, const SimulatedPanel& panel) {
    out << "period,mu,y,mean_forecast,pred_mu,pred_sigma2\n";
    for (std::size_t t = 0; t < panel.y.size(); ++t) {
        out << 't' << (t + 1) << ',' << format_double(panel.mu[t]) << ','
            << format_double(panel.y[t]) << ',' << format_double(panel.mean_forecast[t])
            << ',' << format_double(panel.pred_mu[t]) << ','
            << format_double(panel.pred_sigma2[t]) << '\n';
    }
}

}  // namespace murphy
