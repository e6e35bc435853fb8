#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "scenario.hpp"

// Independent stochastic-geometry oracle. Nothing here calls the closed forms
// in association/coverage; every estimate comes from sampled point processes.
namespace dmec::mc {

inline constexpr double kDefaultWindowRadius = 20e3;  // m

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// One deployment on the disc of radius window_radius centred on the typical
// MU at the origin.
struct McRealization {
  std::vector<Point> macro_points;
  std::vector<Point> small_points;
  std::vector<Point> user_points;
  double window_radius = 0.0;
  std::uint64_t seed = 0;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(trials)
  std::uint64_t trials = 0;
};

McEstimate bernoulli_estimate(std::uint64_t successes, std::uint64_t trials);

class WindowTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

McRealization sample_realization(const ScenarioParams& params, double window_radius,
                                 std::uint64_t seed);

struct AssociationFrequencies {
  std::uint64_t trials = 0;
  std::uint64_t resampled = 0;  // draws with an occupied tier missing from the window
  std::uint64_t decoupled_counts[2][2] = {};  // [ul tier][dl tier]
  std::uint64_t coupled_counts[2] = {};       // [tier]

  McEstimate decoupled(Tier ul, Tier dl) const;
  McEstimate coupled(Tier tier) const;
};

// Per trial: nearest macro and small BS of a fresh deployment, then
// argmax P_k d^-4 for DL (and coupled UL) and argmin d for decoupled UL.
AssociationFrequencies empirical_association(const ScenarioParams& params, std::uint64_t trials,
                                             std::uint64_t seed,
                                             double window_radius = kDefaultWindowRadius);

// Coverage estimates for both tiers at several thresholds from one set of
// trials. Each trial lands in exactly one tier, so estimate(t, g).trials is
// the number of trials associated with t.
struct EmpiricalCoverage {
  std::vector<double> gammas;
  std::vector<McEstimate> macro;  // one per gamma
  std::vector<McEstimate> small;
  std::uint64_t trials = 0;
  std::uint64_t far_serving = 0;  // serving distance beyond window_radius / 2

  const McEstimate& estimate(Tier tier, std::size_t gamma_index) const {
    return tier == Tier::Macro ? macro[gamma_index] : small[gamma_index];
  }
};

// UL: interferers form an independent PPP of density lambda_M + lambda_S around
// the serving BS, excluding the disc of radius equal to the serving distance,
// each with power P_u. DL: every other BS of both tiers transmits at its tier
// power. Fading is i.i.d. unit-mean exponential on every link. Throws
// WindowTooSmall when more than 0.1% of trials are served from beyond R/2.
EmpiricalCoverage empirical_coverage_sweep(const ScenarioParams& params, Policy policy, Link link,
                                           std::span<const double> gammas, std::uint64_t trials,
                                           std::uint64_t seed,
                                           double window_radius = kDefaultWindowRadius);

// Single (tier, gamma) estimate, conditioned on landing in `tier`. Equal to the
// matching slice of empirical_coverage_sweep for the same seed.
McEstimate empirical_coverage(const ScenarioParams& params, Policy policy, Link link, Tier tier,
                              double gamma, std::uint64_t trials, std::uint64_t seed,
                              double window_radius = kDefaultWindowRadius);

// Mean MUs per BS from full deployments: every MU is associated, and BSs
// within window_radius / 2 are tallied. trials counts deployments.
struct EmpiricalLoads {
  McEstimate load[2][2][2];  // [policy][link][tier]
  std::uint64_t deployments = 0;

  const McEstimate& of(Policy p, Link l, Tier t) const {
    return load[static_cast<int>(p)][static_cast<int>(l)][static_cast<int>(t)];
  }
};

EmpiricalLoads empirical_mean_loads(const ScenarioParams& params, std::uint64_t deployments,
                                    std::uint64_t seed,
                                    double window_radius = kDefaultWindowRadius);

McEstimate empirical_mean_load(const ScenarioParams& params, Policy policy, Link link, Tier tier,
                               std::uint64_t deployments, std::uint64_t seed,
                               double window_radius = kDefaultWindowRadius);

}  // namespace dmec::mc
