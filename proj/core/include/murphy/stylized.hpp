#ifndef MURPHY_STYLIZED_HPP
#define MURPHY_STYLIZED_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace murphy {

// Six stylized forecasters of the outcome Y_t = mu_t + eps_t with
// mu_t, eps_t ~ i.i.N(0,1):
//   Unconditional  issues N(0,2), mean forecast 0
//   Informed       knows mu_t, issues N(mu_t,1)
//   SignReversed   issues N(-mu_t,1)
//   NoisyInformed  observes mu_t + nu_t with nu_t ~ N(0,sigma_nu2),
//                  issues N(mu_t + nu_t, 1)
//   Recalibrated   the conditionally correct repair of NoisyInformed
//   Perfect        knows Y_t (degenerate density, sigma2 = 0 sentinel)
enum class ForecasterKind { Unconditional, Informed, SignReversed, NoisyInformed, Recalibrated, Perfect };

struct ForecasterSpec {
    ForecasterKind kind = ForecasterKind::Unconditional;
    double sigma_nu2 = 0.0;  // used by NoisyInformed and Recalibrated

    // sigma_nu2 must be supplied (>= 0) exactly for NoisyInformed and
    // Recalibrated; a value of 0 degenerates them to Informed.
    static ForecasterSpec make(ForecasterKind kind, std::optional<double> sigma_nu2 = {});

    std::string name() const;
};

std::optional<ForecasterKind> forecaster_kind_from_name(const std::string& name);

struct SimulatedPanel {
    std::vector<double> mu;             // latent means
    std::vector<double> y;              // realizations mu + eps
    std::vector<double> mean_forecast;  // the forecaster's point forecast
    std::vector<double> pred_mu;        // density forecast location
    std::vector<double> pred_sigma2;    // density forecast variance (0 for Perfect)
};

// Deterministic simulation: three mt19937_64 streams seeded from
// (seed, stream) with stream 0 -> mu, 1 -> eps, 2 -> nu, normals drawn by
// inverse transform. The mu and eps draws therefore agree across
// forecaster kinds for a fixed seed.
SimulatedPanel simulate(const ForecasterSpec& spec, std::size_t n, std::uint64_t seed);

struct AnalyticDecomposition {
    double score = 0.0;  // expected loss; equals unc - res + cal exactly
    double unc = 0.0;
    double res = 0.0;
    double cal = 0.0;
};

// Closed-form decomposition of the mean squared error of the forecaster's
// mean forecasts.
AnalyticDecomposition analytic_mse_decomposition(const ForecasterSpec& spec);

// Closed-form decomposition of the mean log score of the forecaster's
// density forecasts. Perfect returns the limit row (score 0, res = unc).
AnalyticDecomposition analytic_logscore_decomposition(const ForecasterSpec& spec);

}  // namespace murphy

#endif
