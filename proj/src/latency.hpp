#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

#include "coverage.hpp"
#include "scenario.hpp"

namespace dmec {

// CoupledAccess: same BS both ways, executes there. DecoupledULProc executes
// at the UL BS and ships B^O over the backhaul; DecoupledDLProc ships B^I to
// the DL BS and executes there.
enum class Scheme { CoupledAccess, DecoupledULProc, DecoupledDLProc };

inline constexpr Scheme kSchemes[] = {Scheme::CoupledAccess, Scheme::DecoupledULProc,
                                      Scheme::DecoupledDLProc};

const char* to_string(Scheme s);     // csv token
const char* display_name(Scheme s);  // plot legend

enum class BackhaulDirection { InputToDL, OutputFromUL };

// Infinite latency is an ordinary value: it sorts above every finite latency
// and marks thresholds at which offloading is infeasible.
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

struct LatencyBreakdown {
  double ul_time = 0.0;
  double exec_time = 0.0;
  double backhaul_time = 0.0;
  double dl_time = 0.0;
  double total = 0.0;
  Scheme scheme = Scheme::CoupledAccess;
  // (UL tier, DL tier); empty for a probability-weighted average.
  std::optional<std::pair<Tier, Tier>> tiers;

  bool unbounded() const { return total == kUnbounded; }
};

struct QueueParams {
  double service_rate = 0.0;  // mu, requests/s
  double arrival_rate = 0.0;  // tau, requests/s

  bool stable() const { return service_rate > arrival_rate; }
};

class QueueUnstable : public std::runtime_error {
 public:
  QueueUnstable(Tier tier, QueueParams queue);

  Tier tier() const { return tier_; }
  const QueueParams& queue() const { return queue_; }

 private:
  Tier tier_;
  QueueParams queue_;
};

// (W / N) log2(1 + gamma) P_cov for the (policy, tier) UL or DL association.
double ul_rate(Policy policy, Tier tier, double gamma_ul, const ScenarioParams& params,
               const QuadratureOptions& options = {});
double dl_rate(Policy policy, Tier tier, double gamma_dl, const ScenarioParams& params,
               const QuadratureOptions& options = {});

// bits / rate; kUnbounded when the rate is zero.
double transmission_time(double bits, double rate);

double service_rate(Tier tier, const ScenarioParams& params);

// M/M/1 queues seen by the cloudlet of `tier`.
QueueParams coupled_queue(Tier tier, double gamma_ul, const ScenarioParams& params);
QueueParams decoupled_ul_queue(Tier ul_tier, double gamma_ul, const ScenarioParams& params);
// DL cloudlet: a macro DL cloudlet also serves the small-UL / macro-DL MUs
// whose inputs arrive over the backhaul; a small one serves only its own.
QueueParams decoupled_dl_queue(Tier dl_tier, double gamma_ul, const ScenarioParams& params);

// 1 / (mu - tau); throws QueueUnstable when tau >= mu.
double mm1_delay(Tier tier, const QueueParams& queue);

double exec_time_coupled(Tier tier, double gamma_ul, const ScenarioParams& params);
double exec_time_decoupled_ul(Tier ul_tier, double gamma_ul, const ScenarioParams& params);
double exec_time_decoupled_dl(Tier dl_tier, double gamma_ul, const ScenarioParams& params);

// OutputFromUL carries B^O, InputToDL carries B^I. Zero for a same-tier case
// under BackhaulMode::CrossTierOnly.
double backhaul_time(BackhaulDirection direction, bool crossed, const ScenarioParams& params);

// Association probability weighting (scheme, ul, dl) in the scheme average.
double case_weight(Scheme scheme, Tier ul_tier, Tier dl_tier, const ScenarioParams& params);

// Throws std::invalid_argument for CoupledAccess with ul != dl and for the
// zero-probability (macro UL, small DL) decoupled case.
LatencyBreakdown case_latency(Scheme scheme, Tier ul_tier, Tier dl_tier,
                              const ScenarioParams& params);

enum class OnUnstable { Throw, Saturate };

// Saturate reports an unstable cloudlet as an unbounded exec_time instead of
// throwing QueueUnstable.
LatencyBreakdown case_latency(Scheme scheme, Tier ul_tier, Tier dl_tier, const ScenarioParams& params,
                              OnUnstable on_unstable);

// Probability-weighted components; zero-weight cases are skipped.
LatencyBreakdown average_latency(Scheme scheme, const ScenarioParams& params,
                                 OnUnstable on_unstable = OnUnstable::Throw);

}  // namespace dmec
