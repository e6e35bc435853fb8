#include "coverage.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "association.hpp"
#include "quadrature.hpp"

namespace dmec {

namespace {

void require_populated(Tier tier, const ScenarioParams& params) {
  if (!(params.tier(tier).density > 0.0)) {
    throw std::domain_error(std::string("coverage is undefined for the empty ") + to_string(tier) + " tier");
  }
}

double natural_scale(double exponent) { return 1.0 / std::sqrt(std::numbers::pi * exponent); }

CoverageResult to_coverage(const QuadratureResult& q) {
  return {q.value, q.error_estimate, q.evaluations};
}

}  // namespace

double thinning_probability(const ScenarioParams& params) {
  return (params.macro.density + params.small.density) / params.user_density;
}

ThinnedUserDensity thinned_user_density(const ScenarioParams& params) {
  return {params.macro.density + params.small.density};
}

double psi(double gamma) {
  const double root = std::sqrt(gamma);
  return root * std::atan(root);
}

CoverageResult ul_coverage(Policy policy, Tier tier, double gamma, const ScenarioParams& params,
                           const QuadratureOptions& options) {
  require_populated(tier, params);
  const double noise_coeff = gamma * params.noise_power / params.user_tx_power;
  const double interference_coeff =
      std::numbers::pi * thinned_user_density(params).value * psi(gamma);
  const double alpha = params.pathloss_exponent;

  auto integrand = [&](double x) {
    return std::exp(-noise_coeff * std::pow(x, alpha)) * std::exp(-interference_coeff * x * x) *
           serving_distance_pdf(policy, tier, x, params);
  };
  const double scale = natural_scale(serving_distance_exponent(policy, Link::Uplink, tier, params));
  return to_coverage(integrate_semi_infinite(integrand, options.rel_tol, options.abs_tol, scale));
}

CoverageResult dl_coverage(Policy policy, Tier tier, double gamma, const ScenarioParams& params,
                           const QuadratureOptions& options) {
  return dl_coverage(policy, tier, gamma, params, params.dl_coverage_form, options);
}

CoverageResult dl_coverage(Policy policy, Tier tier, double gamma, const ScenarioParams& params,
                           DlCoverageForm form, const QuadratureOptions& options) {
  require_populated(tier, params);
  const double alpha = params.pathloss_exponent;
  const double noise_coeff = gamma * params.noise_power / params.tier(tier).tx_power;
  const double psi_g = psi(gamma);
  const double exponent = serving_distance_exponent(Policy::Coupled, Link::Downlink, tier, params);

  std::function<double(double)> integrand;
  if (form == DlCoverageForm::NoiseScaled) {
    integrand = [&](double x) {
      return std::exp(-noise_coeff * std::pow(x, alpha) * (1.0 + psi_g)) *
             dl_serving_distance_pdf(policy, tier, x, params);
    };
  } else {
    // Interferers of tier j lie beyond x (P_j / P_k)^(1/alpha); their
    // aggregate contributes exp(-pi lambda_eq psi x^2).
    const double interference_coeff = std::numbers::pi * exponent * psi_g;
    integrand = [&, interference_coeff](double x) {
      return std::exp(-noise_coeff * std::pow(x, alpha)) * std::exp(-interference_coeff * x * x) *
             dl_serving_distance_pdf(policy, tier, x, params);
    };
  }
  return to_coverage(
      integrate_semi_infinite(integrand, options.rel_tol, options.abs_tol, natural_scale(exponent)));
}

}  // namespace dmec
