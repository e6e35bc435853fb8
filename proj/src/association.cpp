#include "association.hpp"

#include <cmath>
#include <numbers>

namespace dmec {

double DecoupledProbabilities::of(Tier ul, Tier dl) const {
  if (ul == Tier::Small) return dl == Tier::Small ? ss : sm;
  return dl == Tier::Macro ? mm : ms;
}

double power_ratio_factor(const ScenarioParams& params) {
  return std::pow(params.macro.tx_power / params.small.tx_power, 2.0 / params.pathloss_exponent);
}

CoupledProbabilities coupled_probs(const ScenarioParams& params) {
  const double f = power_ratio_factor(params);
  const double ls = params.small.density;
  const double lm = params.macro.density;
  const double denom = ls + f * lm;
  return {ls / denom, lm * f / denom};
}

DecoupledProbabilities decoupled_probs(const ScenarioParams& params) {
  const double f = power_ratio_factor(params);
  const double ls = params.small.density;
  const double lm = params.macro.density;
  DecoupledProbabilities out;
  out.ss = ls / (ls + f * lm);
  out.mm = lm / (lm + ls);
  out.sm = ls / (ls + lm) - out.ss;
  // Zero whenever P_M >= P_S, which validation enforces.
  out.ms = 0.0;
  return out;
}

Marginals marginals(const DecoupledProbabilities& probs) {
  Marginals m;
  m.ul_small = probs.ss + probs.sm;
  m.ul_macro = probs.mm + probs.ms;
  m.dl_macro = probs.mm + probs.sm;
  m.dl_small = probs.ss + probs.ms;
  return m;
}

double association_probability(Policy policy, Link link, Tier tier, const ScenarioParams& params) {
  if (policy == Policy::Coupled) return coupled_probs(params).of(tier);
  const auto m = marginals(decoupled_probs(params));
  return link == Link::Uplink ? m.ul(tier) : m.dl(tier);
}

double mean_load(Policy policy, Link link, Tier tier, const ScenarioParams& params) {
  const double lk = params.tier(tier).density;
  if (lk == 0.0) return 0.0;
  return params.user_density * association_probability(policy, link, tier, params) / lk;
}

double serving_distance_exponent(Policy policy, Link link, Tier tier, const ScenarioParams& params) {
  const double lk = params.tier(tier).density;
  const double lj = params.tier(other(tier)).density;
  if (policy == Policy::Decoupled && link == Link::Uplink) return lk + lj;
  const double pj = params.tier(other(tier)).tx_power;
  const double pk = params.tier(tier).tx_power;
  return lk + lj * std::pow(pj / pk, 2.0 / params.pathloss_exponent);
}

namespace {

double rayleigh_like_pdf(double lk, double normaliser, double exponent, double x) {
  if (lk == 0.0 || x <= 0.0) return 0.0;
  return 2.0 * std::numbers::pi * lk / normaliser * x * std::exp(-exponent * std::numbers::pi * x * x);
}

}  // namespace

double serving_distance_pdf(Policy policy, Tier tier, double x, const ScenarioParams& params) {
  const double lk = params.tier(tier).density;
  const double c = serving_distance_exponent(policy, Link::Uplink, tier, params);
  const double a = association_probability(policy, Link::Uplink, tier, params);
  return rayleigh_like_pdf(lk, a, c, x);
}

double dl_serving_distance_pdf(Policy policy, Tier tier, double x, const ScenarioParams& params) {
  const double lk = params.tier(tier).density;
  const double c = serving_distance_exponent(Policy::Coupled, Link::Downlink, tier, params);
  const double a = association_probability(policy, Link::Downlink, tier, params);
  return rayleigh_like_pdf(lk, a, c, x);
}

AssociationReport association_report(const ScenarioParams& params) {
  AssociationReport r;
  r.coupled = coupled_probs(params);
  r.decoupled = decoupled_probs(params);
  r.marginal = marginals(r.decoupled);
  for (auto policy : {Policy::Coupled, Policy::Decoupled}) {
    for (auto link : {Link::Uplink, Link::Downlink}) {
      for (auto tier : kTiers) {
        r.load[static_cast<int>(policy)][static_cast<int>(link)][static_cast<int>(tier)] =
            mean_load(policy, link, tier, params);
      }
    }
  }
  return r;
}

}  // namespace dmec
