#include "murphy/stylized.hpp"

#include <cmath>
#include <random>

#include "murphy/errors.hpp"
#include "murphy/normal.hpp"

namespace murphy {

namespace {

constexpr double kLog2 = 0.6931471805599453;
constexpr double kLog2Pi = 1.8378770664093453;
constexpr double kLog4Pi = 2.5310242469692907;

// Uniform in (0,1) from the top 53 bits; engine output is fully specified
// by the standard, so draws are identical across platforms.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint32_t stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                          static_cast<std::uint32_t>(seed >> 32), stream};
        engine_.seed(seq);
    }

    double next() {
        const std::uint64_t bits = engine_() >> 11;
        const double u = static_cast<double>(bits) * 0x1.0p-53 + 0x1.0p-54;
        return norm_quantile(u);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace

ForecasterSpec ForecasterSpec::make(ForecasterKind kind, std::optional<double> sigma_nu2) {
    const bool uses_noise =
        kind == ForecasterKind::NoisyInformed || kind == ForecasterKind::Recalibrated;
    if (uses_noise) {
        if (!sigma_nu2.has_value()) {
            throw invalid_input("ForecasterSpec: sigma_nu2 required for this forecaster");
        }
        if (!std::isfinite(*sigma_nu2) || *sigma_nu2 < 0.0) {
            throw invalid_input("ForecasterSpec: sigma_nu2 must be finite and >= 0");
        }
        return ForecasterSpec{kind, *sigma_nu2};
    }
    if (sigma_nu2.has_value()) {
        throw invalid_input("ForecasterSpec: sigma_nu2 only applies to the noisily "
                            "informed and recalibrated forecasters");
    }
    return ForecasterSpec{kind, 0.0};
}

std::string ForecasterSpec::name() const {
    switch (kind) {
        case ForecasterKind::Unconditional: return "unc";
        case ForecasterKind::Informed: return "inf";
        case ForecasterKind::SignReversed: return "sr";
        case ForecasterKind::NoisyInformed: return "ni";
        case ForecasterKind::Recalibrated: return "rec";
        case ForecasterKind::Perfect: return "perf";
    }
    return "unknown";
}

std::optional<ForecasterKind> forecaster_kind_from_name(const std::string& name) {
    if (name == "unc") return ForecasterKind::Unconditional;
    if (name == "inf") return ForecasterKind::Informed;
    if (name == "sr") return ForecasterKind::SignReversed;
    if (name == "ni") return ForecasterKind::NoisyInformed;
    if (name == "rec") return ForecasterKind::Recalibrated;
    if (name == "perf") return ForecasterKind::Perfect;
    return std::nullopt;
}

SimulatedPanel simulate(const ForecasterSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n < 1) {
        throw invalid_input("simulate: n must be at least 1");
    }
    NormalStream mu_stream(seed, 0);
    NormalStream eps_stream(seed, 1);
    NormalStream nu_stream(seed, 2);
    const double nu_sd = std::sqrt(spec.sigma_nu2);

    SimulatedPanel panel;
    panel.mu.resize(n);
    panel.y.resize(n);
    panel.mean_forecast.resize(n);
    panel.pred_mu.resize(n);
    panel.pred_sigma2.resize(n);

    for (std::size_t t = 0; t < n; ++t) {
        const double mu = mu_stream.next();
        const double y = mu + eps_stream.next();
        panel.mu[t] = mu;
        panel.y[t] = y;
        switch (spec.kind) {
            case ForecasterKind::Unconditional:
                panel.mean_forecast[t] = 0.0;
                panel.pred_mu[t] = 0.0;
                panel.pred_sigma2[t] = 2.0;
                break;
            case ForecasterKind::Informed:
                panel.mean_forecast[t] = mu;
                panel.pred_mu[t] = mu;
                panel.pred_sigma2[t] = 1.0;
                break;
            case ForecasterKind::SignReversed:
                panel.mean_forecast[t] = -mu;
                panel.pred_mu[t] = -mu;
                panel.pred_sigma2[t] = 1.0;
                break;
            case ForecasterKind::NoisyInformed: {
                const double noisy = mu + nu_sd * nu_stream.next();
                panel.mean_forecast[t] = noisy;
                panel.pred_mu[t] = noisy;
                panel.pred_sigma2[t] = 1.0;
                break;
            }
            case ForecasterKind::Recalibrated: {
                const double noisy = mu + nu_sd * nu_stream.next();
                const double shrink = 1.0 / (1.0 + spec.sigma_nu2);
                panel.mean_forecast[t] = shrink * noisy;
                panel.pred_mu[t] = shrink * noisy;
                panel.pred_sigma2[t] = 1.0 + spec.sigma_nu2 / (1.0 + spec.sigma_nu2);
                break;
            }
            case ForecasterKind::Perfect:
                panel.mean_forecast[t] = y;
                panel.pred_mu[t] = y;
                panel.pred_sigma2[t] = 0.0;  // degenerate-density sentinel
                break;
        }
    }
    return panel;
}

AnalyticDecomposition analytic_mse_decomposition(const ForecasterSpec& spec) {
    const double s2 = spec.sigma_nu2;
    AnalyticDecomposition row;
    row.unc = 2.0;
    switch (spec.kind) {
        case ForecasterKind::Unconditional:
            row.res = 0.0;
            row.cal = 0.0;
            break;
        case ForecasterKind::Informed:
            row.res = 1.0;
            row.cal = 0.0;
            break;
        case ForecasterKind::SignReversed:
            row.res = 1.0;
            row.cal = 4.0;
            break;
        case ForecasterKind::NoisyInformed:
            row.res = 1.0 / (1.0 + s2);
            row.cal = s2 * s2 / (1.0 + s2);
            break;
        case ForecasterKind::Recalibrated:
            row.res = 1.0 / (1.0 + s2);
            row.cal = 0.0;
            break;
        case ForecasterKind::Perfect:
            row.res = 2.0;
            row.cal = 0.0;
            break;
    }
    row.score = row.unc - row.res + row.cal;
    return row;
}

AnalyticDecomposition analytic_logscore_decomposition(const ForecasterSpec& spec) {
    const double s2 = spec.sigma_nu2;
    // Conditional variance of Y given the noisy signal.
    const double cond_var_term = std::log1p(s2 / (1.0 + s2));
    AnalyticDecomposition row;
    row.unc = 0.5 * (kLog4Pi + 1.0);
    switch (spec.kind) {
        case ForecasterKind::Unconditional:
            row.res = 0.0;
            row.cal = 0.0;
            break;
        case ForecasterKind::Informed:
            row.res = 0.5 * kLog2;
            row.cal = 0.0;
            break;
        case ForecasterKind::SignReversed:
            row.res = 0.5 * kLog2;
            row.cal = 2.0;
            break;
        case ForecasterKind::NoisyInformed:
            row.res = 0.5 * (kLog2 - cond_var_term);
            row.cal = 0.5 * (s2 - cond_var_term);
            break;
        case ForecasterKind::Recalibrated:
            row.res = 0.5 * (kLog2 - cond_var_term);
            row.cal = 0.0;
            break;
        case ForecasterKind::Perfect:
            row.res = 0.5 * (kLog4Pi + 1.0);
            row.cal = 0.0;
            break;
    }
    row.score = row.unc - row.res + row.cal;
    return row;
}

}  // namespace murphy
