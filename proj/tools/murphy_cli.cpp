// Command line surface for the forecast verification library: decompose a
// forecast panel into uncertainty, resolution and miscalibration, fit
// calibration curves, simulate the stylized forecasters, build benchmark
// forecast series, and extract quantiles from BoE-style fan chart
// parameters.
//
// Exit codes: 0 success, 1 flag misuse, 2 malformed input CSV,
// 3 estimation or domain failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "murphy/benchmarks.hpp"
#include "murphy/decomp.hpp"
#include "murphy/errors.hpp"
#include "murphy/io.hpp"
#include "murphy/stylized.hpp"
#include "murphy/twopiece.hpp"
#include "murphy/version.hpp"

using nlohmann::ordered_json;

namespace {

// Flag combinations CLI11 cannot express; mapped to exit code 1.
class usage_error : public std::runtime_error {
public:
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file '" + path + "'");
    }
    return out;
}

murphy::LossSpec make_loss(const std::string& loss, std::optional<double> tau) {
    if (loss == "squared") {
        if (tau.has_value()) {
            throw usage_error("--tau only applies to --loss check");
        }
        return murphy::LossSpec::squared();
    }
    if (loss == "check") {
        if (!tau.has_value()) {
            throw usage_error("--loss check requires --tau");
        }
        if (!(*tau > 0.0 && *tau < 1.0)) {
            throw usage_error("--tau must lie strictly inside (0,1)");
        }
        return murphy::LossSpec::check(*tau);
    }
    throw usage_error("unknown loss '" + loss + "'");
}

std::string fmt(double v) { return murphy::format_double(v); }

// ---------------------------------------------------------------- decompose

struct DecomposeOpts {
    std::string input;
    std::string output;
    std::string loss = "squared";
    std::optional<double> tau;
    std::optional<double> bandwidth;
    bool cv = false;
    bool by_horizon = false;
    std::string format = "csv";
};

int run_decompose(const DecomposeOpts& opts) {
    const murphy::LossSpec loss = make_loss(opts.loss, opts.tau);
    const murphy::ForecastTable table = murphy::read_forecast_table_file(opts.input);
    std::vector<murphy::ForecastSeries> series =
        murphy::to_series_by_horizon(table, opts.tau);
    if (series.empty()) {
        throw murphy::csv_error(opts.input + ": no usable rows");
    }
    if (!opts.by_horizon && series.size() > 1) {
        throw usage_error(
            "input contains several horizons; pass --by-horizon to decompose each");
    }

    murphy::KernelFitConfig config;
    if (opts.bandwidth.has_value()) config.bandwidth = *opts.bandwidth;

    const std::vector<murphy::DecompositionResult> results =
        murphy::estimate_by_horizon(series, loss, config);

    std::printf("%4s %12s %12s %12s %12s\n", "h", "score", "UNC", "RES", "CAL");
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        std::printf("%4d %12.6g %12.6g %12.6g %12.6g\n", series[i].horizon, r.mean_score,
                    r.unc, r.res, r.cal);
    }

    std::ofstream out = open_output(opts.output);
    if (opts.format == "csv") {
        out << "h,score,unc,res,cal,n,bandwidth\n";
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i];
            out << series[i].horizon << ',' << fmt(r.mean_score) << ',' << fmt(r.unc) << ','
                << fmt(r.res) << ',' << fmt(r.cal) << ',' << r.n << ',' << fmt(r.bandwidth)
                << '\n';
        }
    } else {
        ordered_json meta;
        meta["version"] = murphy::kVersion;
        meta["command"] = "decompose";
        meta["loss"] = loss.name();
        if (loss.kind == murphy::LossKind::Check) meta["tau"] = loss.tau;
        meta["bandwidth_mode"] = opts.bandwidth.has_value() ? "fixed" : "cv";
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i];
            ordered_json row;
            row["h"] = series[i].horizon;
            row["score"] = r.mean_score;
            row["unc"] = r.unc;
            row["res"] = r.res;
            row["cal"] = r.cal;
            row["n"] = r.n;
            row["bandwidth"] = r.bandwidth;
            rows.push_back(row);
        }
        ordered_json doc;
        doc["metadata"] = meta;
        doc["decomposition"] = rows;
        out << doc.dump(2) << '\n';
    }
    return 0;
}

// ----------------------------------------------------------------- calcurve

struct CalcurveOpts {
    std::string input;
    std::string output;
    std::string loss = "squared";
    std::optional<double> tau;
    std::optional<double> bandwidth;
    bool cv = false;
    int grid_size = 101;
    std::optional<int> horizon;
    std::string format = "csv";
};

int run_calcurve(const CalcurveOpts& opts) {
    const murphy::LossSpec loss = make_loss(opts.loss, opts.tau);
    const murphy::ForecastTable table = murphy::read_forecast_table_file(opts.input);
    std::vector<murphy::ForecastSeries> series =
        murphy::to_series_by_horizon(table, opts.tau);
    if (series.empty()) {
        throw murphy::csv_error(opts.input + ": no usable rows");
    }
    const murphy::ForecastSeries* chosen = nullptr;
    if (opts.horizon.has_value()) {
        for (const auto& s : series) {
            if (s.horizon == *opts.horizon) chosen = &s;
        }
        if (chosen == nullptr) {
            throw usage_error("no rows with horizon " + std::to_string(*opts.horizon));
        }
    } else if (series.size() == 1) {
        chosen = &series.front();
    } else {
        throw usage_error("input contains several horizons; pick one with --horizon");
    }

    murphy::KernelFitConfig config;
    if (opts.bandwidth.has_value()) config.bandwidth = *opts.bandwidth;
    const murphy::CalibrationCurve curve =
        murphy::calibration_curve(*chosen, loss, config, opts.grid_size);

    std::ofstream out = open_output(opts.output);
    if (opts.format == "csv") {
        out << "x,fitted,unconditional\n";
        for (std::size_t i = 0; i < curve.grid.size(); ++i) {
            out << fmt(curve.grid[i]) << ',' << fmt(curve.conditional[i]) << ','
                << fmt(curve.unconditional) << '\n';
        }
    } else {
        ordered_json meta;
        meta["version"] = murphy::kVersion;
        meta["command"] = "calcurve";
        meta["loss"] = loss.name();
        if (loss.kind == murphy::LossKind::Check) meta["tau"] = loss.tau;
        meta["grid_size"] = opts.grid_size;
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < curve.grid.size(); ++i) {
            ordered_json row;
            row["x"] = curve.grid[i];
            row["fitted"] = curve.conditional[i];
            row["unconditional"] = curve.unconditional;
            rows.push_back(row);
        }
        ordered_json doc;
        doc["metadata"] = meta;
        doc["curve"] = rows;
        out << doc.dump(2) << '\n';
    }
    std::printf("calibration curve with %zu grid points written to %s\n", curve.grid.size(),
                opts.output.c_str());
    return 0;
}

// ----------------------------------------------------------------- simulate

struct SimulateOpts {
    std::string forecaster;
    std::optional<double> sigma_nu2;
    std::size_t n = 0;
    std::optional<std::uint64_t> seed;
    std::string output;
};

int run_simulate(const SimulateOpts& opts) {
    const auto kind = murphy::forecaster_kind_from_name(opts.forecaster);
    if (!kind.has_value()) {
        throw usage_error("unknown forecaster '" + opts.forecaster + "'");
    }
    if (!opts.seed.has_value()) {
        throw usage_error("--seed is required; simulations carry no hidden entropy");
    }
    murphy::ForecasterSpec spec;
    try {
        spec = murphy::ForecasterSpec::make(*kind, opts.sigma_nu2);
    } catch (const murphy::invalid_input& e) {
        throw usage_error(e.what());
    }

    const murphy::SimulatedPanel panel = murphy::simulate(spec, opts.n, *opts.seed);
    std::ofstream out = open_output(opts.output);
    murphy::write_panel_csv(out, panel);

    const auto mse = murphy::analytic_mse_decomposition(spec);
    const auto mls = murphy::analytic_logscore_decomposition(spec);
    std::printf("forecaster %s, n=%zu, seed=%llu\n", spec.name().c_str(), opts.n,
                static_cast<unsigned long long>(*opts.seed));
    std::printf("analytic squared:   MSE %g UNC %g RES %g CAL %g\n", mse.score, mse.unc,
                mse.res, mse.cal);
    std::printf("analytic log score: MLS %g UNC %g RES %g CAL %g\n", mls.score, mls.unc,
                mls.res, mls.cal);
    return 0;
}

// ---------------------------------------------------------------- benchmark

struct BenchmarkOpts {
    std::string input;
    std::string output;
    std::string kind = "unc-mean";
    std::optional<double> tau;
    int horizon = 0;
    int burn_in = 20;
};

int run_benchmark(const BenchmarkOpts& opts) {
    murphy::BenchmarkKind kind;
    if (opts.kind == "unc-mean") {
        if (opts.tau.has_value()) throw usage_error("--tau only applies to unc-quantile");
        kind = murphy::BenchmarkKind::unc_mean();
    } else if (opts.kind == "unc-quantile") {
        if (!opts.tau.has_value()) throw usage_error("unc-quantile requires --tau");
        kind = murphy::BenchmarkKind::unc_quantile(*opts.tau);
    } else if (opts.kind == "ar1") {
        if (opts.tau.has_value()) throw usage_error("--tau only applies to unc-quantile");
        kind = murphy::BenchmarkKind::ar1();
    } else {
        throw usage_error("unknown benchmark kind '" + opts.kind + "'");
    }

    const auto rows = murphy::read_realization_series_file(opts.input);
    std::vector<double> values;
    std::vector<std::string> periods;
    values.reserve(rows.size());
    for (const auto& row : rows) {
        values.push_back(row.realization);
        periods.push_back(row.period);
    }
    const murphy::ForecastSeries series = murphy::rolling_benchmark_series(
        values, opts.horizon, kind, opts.burn_in, periods);
    std::ofstream out = open_output(opts.output);
    murphy::write_forecast_series_csv(out, series);
    std::printf("%zu %s forecasts at horizon %d written to %s\n", series.forecasts.size(),
                kind.name().c_str(), opts.horizon, opts.output.c_str());
    return 0;
}

// ------------------------------------------------------------ boe-quantiles

struct BoeOpts {
    std::string input;
    std::string output;
    std::string taus = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
};

std::vector<double> parse_taus(const std::string& spec) {
    std::vector<double> taus;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double tau = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            taus.push_back(tau);
        } catch (const std::exception&) {
            throw usage_error("--taus: '" + item + "' is not a number");
        }
    }
    if (taus.empty()) throw usage_error("--taus: empty list");
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!(taus[i] > 0.0 && taus[i] < 1.0)) {
            throw usage_error("--taus: values must lie strictly inside (0,1)");
        }
        if (i > 0 && !(taus[i] > taus[i - 1])) {
            throw usage_error("--taus: values must be strictly increasing");
        }
    }
    return taus;
}

int run_boe_quantiles(const BoeOpts& opts) {
    const std::vector<double> taus = parse_taus(opts.taus);
    const auto rows = murphy::read_boe_table_file(opts.input);
    if (rows.empty()) {
        throw murphy::csv_error(opts.input + ": no data rows");
    }

    std::ofstream out = open_output(opts.output);
    out << "period,horizon,tau,quantile_forecast\n";
    for (const auto& row : rows) {
        std::vector<double> quantiles;
        try {
            const murphy::BoeReportedParams params(row.mu, row.sigma, row.xi);
            quantiles = murphy::twopiece::boe_quantile_forecasts(params, taus);
        } catch (const murphy::invalid_input& e) {
            throw murphy::estimation_error("row (period " + row.period + ", horizon " +
                                           std::to_string(row.horizon) + "): " + e.what());
        }
        for (std::size_t i = 0; i < taus.size(); ++i) {
            out << murphy::csv_escape(row.period) << ',' << row.horizon << ',' << fmt(taus[i])
                << ',' << fmt(quantiles[i]) << '\n';
        }
    }
    std::printf("%zu quantile rows written to %s\n", rows.size() * taus.size(),
                opts.output.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Murphy decomposition toolkit for forecast verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", murphy::kVersion);

    DecomposeOpts dec;
    CLI::App* decompose = app.add_subcommand(
        "decompose", "Estimate the score decomposition of a forecast panel");
    decompose->add_option("--input", dec.input, "forecast panel CSV")->required();
    decompose->add_option("--output", dec.output, "output file")->required();
    decompose->add_option("--loss", dec.loss, "squared or check")->required();
    decompose->add_option("--tau", dec.tau, "quantile level for check loss");
    auto* dec_bw = decompose->add_option("--bandwidth", dec.bandwidth, "fixed kernel bandwidth");
    decompose->add_flag("--cv", dec.cv, "cross-validate the bandwidth (default)")
        ->excludes(dec_bw);
    decompose->add_flag("--by-horizon", dec.by_horizon, "one decomposition per horizon");
    decompose->add_option("--format", dec.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CalcurveOpts cal;
    CLI::App* calcurve =
        app.add_subcommand("calcurve", "Fit a calibration curve over the forecast range");
    calcurve->add_option("--input", cal.input, "forecast panel CSV")->required();
    calcurve->add_option("--output", cal.output, "output file")->required();
    calcurve->add_option("--loss", cal.loss, "squared or check")->required();
    calcurve->add_option("--tau", cal.tau, "quantile level for check loss");
    auto* cal_bw = calcurve->add_option("--bandwidth", cal.bandwidth, "fixed kernel bandwidth");
    calcurve->add_flag("--cv", cal.cv, "cross-validate the bandwidth (default)")
        ->excludes(cal_bw);
    calcurve->add_option("--grid-size", cal.grid_size, "number of grid points")
        ->check(CLI::PositiveNumber);
    calcurve->add_option("--horizon", cal.horizon, "horizon to select from a mixed panel");
    calcurve->add_option("--format", cal.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    SimulateOpts sim;
    CLI::App* simulate =
        app.add_subcommand("simulate", "Simulate one of the stylized forecasters");
    simulate->add_option("--forecaster", sim.forecaster, "unc|inf|sr|ni|rec|perf")->required();
    simulate->add_option("--sigma-nu2", sim.sigma_nu2, "noise variance for ni and rec");
    simulate->add_option("--n", sim.n, "number of periods")->required()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "random seed (required)");
    simulate->add_option("--output", sim.output, "panel CSV path")->required();

    BenchmarkOpts bench;
    CLI::App* benchmark = app.add_subcommand(
        "benchmark", "Expanding-window benchmark forecasts from a realization series");
    benchmark->add_option("--input", bench.input, "realization CSV (period,realization)")
        ->required();
    benchmark->add_option("--output", bench.output, "forecast series CSV path")->required();
    benchmark->add_option("--kind", bench.kind, "unc-mean|unc-quantile|ar1")->required();
    benchmark->add_option("--tau", bench.tau, "quantile level for unc-quantile");
    benchmark->add_option("--horizon", bench.horizon, "forecast horizon")
        ->check(CLI::NonNegativeNumber);
    benchmark->add_option("--burn-in", bench.burn_in, "observations before the first forecast");

    BoeOpts boe;
    CLI::App* boe_cmd = app.add_subcommand(
        "boe-quantiles", "Quantiles from two-piece normal (mu, sigma, xi) parameters");
    boe_cmd->add_option("--input", boe.input, "CSV with period,horizon,mu,sigma,xi")->required();
    boe_cmd->add_option("--output", boe.output, "long-format quantile CSV")->required();
    boe_cmd->add_option("--taus", boe.taus, "comma list of levels (default deciles)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(decompose)) return run_decompose(dec);
        if (app.got_subcommand(calcurve)) return run_calcurve(cal);
        if (app.got_subcommand(simulate)) return run_simulate(sim);
        if (app.got_subcommand(benchmark)) return run_benchmark(bench);
        if (app.got_subcommand(boe_cmd)) return run_boe_quantiles(boe);
    } catch (const usage_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const murphy::csv_error& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const murphy::invalid_input& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const murphy::estimation_error& e) {
        std::fprintf(stderr, "estimation error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
