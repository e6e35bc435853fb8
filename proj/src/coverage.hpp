#pragma once

#include <cstddef>

#include "scenario.hpp"

namespace dmec {

struct CoverageResult {
  double probability = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
};

// Active UL interferer density p * lambda_u with p = (lambda_M + lambda_S) / lambda_u,
// i.e. one scheduled MU per BS on average.
struct ThinnedUserDensity {
  double value = 0.0;  // per m^2
};

double thinning_probability(const ScenarioParams& params);
ThinnedUserDensity thinned_user_density(const ScenarioParams& params);

// sqrt(g) * atan(sqrt(g)): the alpha = 4 interference factor.
double psi(double gamma);

// Probability that the UL SINR at the serving BS of `tier` reaches gamma.
CoverageResult ul_coverage(Policy policy, Tier tier, double gamma, const ScenarioParams& params,
                           const QuadratureOptions& options = {});

// DL counterpart; the integrand follows params.dl_coverage_form unless a form
// is given explicitly.
CoverageResult dl_coverage(Policy policy, Tier tier, double gamma, const ScenarioParams& params,
                           const QuadratureOptions& options = {});
CoverageResult dl_coverage(Policy policy, Tier tier, double gamma, const ScenarioParams& params,
                           DlCoverageForm form, const QuadratureOptions& options = {});

}  // namespace dmec
