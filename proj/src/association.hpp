#pragma once

#include "scenario.hpp"

namespace dmec {

// (P_M / P_S)^(2 / alpha).
double power_ratio_factor(const ScenarioParams& params);

// Max-DL-power association, UL BS = DL BS.
struct CoupledProbabilities {
  double ss = 0.0;
  double mm = 0.0;

  double of(Tier t) const { return t == Tier::Macro ? mm : ss; }
};

// Nearest-BS UL association, max-DL-power DL association. First letter is the
// UL tier, second the DL tier.
struct DecoupledProbabilities {
  double ss = 0.0;
  double mm = 0.0;
  double sm = 0.0;
  double ms = 0.0;

  double of(Tier ul, Tier dl) const;
};

struct Marginals {
  double ul_macro = 0.0;
  double ul_small = 0.0;
  double dl_macro = 0.0;
  double dl_small = 0.0;

  double ul(Tier t) const { return t == Tier::Macro ? ul_macro : ul_small; }
  double dl(Tier t) const { return t == Tier::Macro ? dl_macro : dl_small; }
};

CoupledProbabilities coupled_probs(const ScenarioParams& params);
DecoupledProbabilities decoupled_probs(const ScenarioParams& params);
Marginals marginals(const DecoupledProbabilities& probs);

// Probability that the typical MU's (policy, link) BS is in `tier`.
double association_probability(Policy policy, Link link, Tier tier, const ScenarioParams& params);

// Mean MUs per BS: lambda_u * A / lambda_tier. Zero for an empty tier.
double mean_load(Policy policy, Link link, Tier tier, const ScenarioParams& params);

// Serving-distance density in 1/m. Coupled: max-power association to `tier`,
// normalised by A_kk^D. Decoupled: nearest-BS (UL) association, normalised by
// the UL marginal.
double serving_distance_pdf(Policy policy, Tier tier, double x, const ScenarioParams& params);

// Density of the DL serving distance used by the DL coverage integral. Both
// policies share the max-power exponent; Decoupled swaps the normaliser for
// the DL marginal.
double dl_serving_distance_pdf(Policy policy, Tier tier, double x, const ScenarioParams& params);

// Coefficient c of the exp(-c pi x^2) factor in the serving-distance density.
double serving_distance_exponent(Policy policy, Link link, Tier tier, const ScenarioParams& params);

struct AssociationReport {
  CoupledProbabilities coupled;
  DecoupledProbabilities decoupled;
  Marginals marginal;
  // load[policy][link][tier]
  double load[2][2][2] = {};

  double load_of(Policy p, Link l, Tier t) const {
    return load[static_cast<int>(p)][static_cast<int>(l)][static_cast<int>(t)];
  }
};

AssociationReport association_report(const ScenarioParams& params);

}  // namespace dmec
