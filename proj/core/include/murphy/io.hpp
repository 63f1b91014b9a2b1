#ifndef MURPHY_IO_HPP
#define MURPHY_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "murphy/decomp.hpp"
#include "murphy/stylized.hpp"

namespace murphy {

// One row of the forecast panel CSV: period,horizon,forecast,realization
// with an optional tau column for quantile panels.
struct ForecastRow {
    std::string period;
    int horizon = 0;
    double forecast = 0.0;
    double realization = 0.0;
    std::optional<double> tau;
};

struct ForecastTable {
    std::vector<ForecastRow> rows;
    bool has_tau = false;
};

// period,horizon,mu,sigma,xi
struct BoeRow {
    std::string period;
    int horizon = 0;
    double mu = 0.0;
    double sigma = 1.0;
    double xi = 0.0;
};

struct RealizationRow {
    std::string period;
    double realization = 0.0;
};

// CSV dialect: comma separated, UTF-8, '.' decimal separator, mandatory
// header, RFC-4180 style quoting for labels. Parse failures throw
// csv_error naming the row and column. Duplicate (period,horizon,tau) keys
// are rejected.
ForecastTable read_forecast_table(std::istream& in, const std::string& source_name);
ForecastTable read_forecast_table_file(const std::string& path);

std::vector<BoeRow> read_boe_table(std::istream& in, const std::string& source_name);
std::vector<BoeRow> read_boe_table_file(const std::string& path);

std::vector<RealizationRow> read_realization_series(std::istream& in,
                                                    const std::string& source_name);
std::vector<RealizationRow> read_realization_series_file(const std::string& path);

// Groups rows into one ForecastSeries per horizon, preserving input row
// order within each horizon and ordering series by horizon. When tau is
// set, only rows carrying that tau (within 1e-9) are used.
std::vector<ForecastSeries> to_series_by_horizon(const ForecastTable& table,
                                                 std::optional<double> tau = {});

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

// Quotes the field if it contains a comma, quote or newline.
std::string csv_escape(const std::string& field);

void write_forecast_series_csv(std::ostream& out, const ForecastSeries& series);
void write_panel_csv(std::ostream& out, const SimulatedPanel& panel);

}  // namespace murphy

#endif
