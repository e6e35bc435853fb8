#include "latency.hpp"

#include <cmath>
#include <sstream>

#include "association.hpp"

namespace dmec {

namespace {

std::string unstable_message(Tier tier, const QueueParams& q) {
  std::ostringstream msg;
  msg << "cloudlet queue at the " << to_string(tier) << " tier is unstable: arrival rate "
      << q.arrival_rate << " req/s >= service rate " << q.service_rate << " req/s";
  return msg.str();
}

double rate(Policy policy, Link link, Tier tier, double gamma, const ScenarioParams& params,
            const QuadratureOptions& options) {
  const double load = mean_load(policy, link, tier, params);
  const double bandwidth = link == Link::Uplink ? params.ul_bandwidth : params.dl_bandwidth;
  const double coverage = link == Link::Uplink
                              ? ul_coverage(policy, tier, gamma, params, options).probability
                              : dl_coverage(policy, tier, gamma, params, options).probability;
  return bandwidth / load * std::log2(1.0 + gamma) * coverage;
}

}  // namespace

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::CoupledAccess: return "coupled";
    case Scheme::DecoupledULProc: return "decoupled_ul";
    case Scheme::DecoupledDLProc: return "decoupled_dl";
  }
  return "?";
}

const char* display_name(Scheme s) {
  switch (s) {
    case Scheme::CoupledAccess: return "Coupled Access";
    case Scheme::DecoupledULProc: return "Decoupled Access (UL Cloudlet Proc.)";
    case Scheme::DecoupledDLProc: return "Decoupled Access (DL Cloudlet Proc.)";
  }
  return "?";
}

QueueUnstable::QueueUnstable(Tier tier, QueueParams queue)
    : std::runtime_error(unstable_message(tier, queue)), tier_(tier), queue_(queue) {}

double ul_rate(Policy policy, Tier tier, double gamma_ul, const ScenarioParams& params,
               const QuadratureOptions& options) {
  return rate(policy, Link::Uplink, tier, gamma_ul, params, options);
}

double dl_rate(Policy policy, Tier tier, double gamma_dl, const ScenarioParams& params,
               const QuadratureOptions& options) {
  return rate(policy, Link::Downlink, tier, gamma_dl, params, options);
}

double transmission_time(double bits, double rate) {
  if (!(rate > 0.0)) return kUnbounded;
  return bits / rate;
}

double service_rate(Tier tier, const ScenarioParams& params) {
  return params.tier(tier).cloudlet_capacity / params.cycles_per_request();
}

QueueParams coupled_queue(Tier tier, double gamma_ul, const ScenarioParams& params) {
  const double r = ul_rate(Policy::Coupled, tier, gamma_ul, params);
  const double n = mean_load(Policy::Coupled, Link::Uplink, tier, params);
  return {service_rate(tier, params), r * n / params.input_bits};
}

QueueParams decoupled_ul_queue(Tier ul_tier, double gamma_ul, const ScenarioParams& params) {
  const double r = ul_rate(Policy::Decoupled, ul_tier, gamma_ul, params);
  const double n = mean_load(Policy::Decoupled, Link::Uplink, ul_tier, params);
  return {service_rate(ul_tier, params), r * n / params.input_bits};
}

QueueParams decoupled_dl_queue(Tier dl_tier, double gamma_ul, const ScenarioParams& params) {
  const auto probs = decoupled_probs(params);
  const double users_per_small = params.small.density > 0.0
                                     ? params.user_density / params.small.density
                                     : 0.0;
  double accumulated = 0.0;  // bits/s arriving at one DL cloudlet
  if (dl_tier == Tier::Macro) {
    accumulated = ul_rate(Policy::Decoupled, Tier::Macro, gamma_ul, params) *
                  mean_load(Policy::Decoupled, Link::Uplink, Tier::Macro, params);
    if (probs.sm > 0.0) {
      accumulated += ul_rate(Policy::Decoupled, Tier::Small, gamma_ul, params) *
                     users_per_small * probs.sm;
    }
  } else if (probs.ss > 0.0) {
    accumulated = ul_rate(Policy::Decoupled, Tier::Small, gamma_ul, params) * users_per_small *
                  probs.ss;
  }
  return {service_rate(dl_tier, params), accumulated / params.input_bits};
}

double mm1_delay(Tier tier, const QueueParams& queue) {
  if (!queue.stable()) throw QueueUnstable(tier, queue);
  return 1.0 / (queue.service_rate - queue.arrival_rate);
}

double exec_time_coupled(Tier tier, double gamma_ul, const ScenarioParams& params) {
  return mm1_delay(tier, coupled_queue(tier, gamma_ul, params));
}

double exec_time_decoupled_ul(Tier ul_tier, double gamma_ul, const ScenarioParams& params) {
  return mm1_delay(ul_tier, decoupled_ul_queue(ul_tier, gamma_ul, params));
}

double exec_time_decoupled_dl(Tier dl_tier, double gamma_ul, const ScenarioParams& params) {
  return mm1_delay(dl_tier, decoupled_dl_queue(dl_tier, gamma_ul, params));
}

double backhaul_time(BackhaulDirection direction, bool crossed, const ScenarioParams& params) {
  if (!crossed && params.backhaul_mode == BackhaulMode::CrossTierOnly) return 0.0;
  const double bits =
      direction == BackhaulDirection::OutputFromUL ? params.output_bits : params.input_bits;
  return bits / params.backhaul_capacity;
}

double case_weight(Scheme scheme, Tier ul_tier, Tier dl_tier, const ScenarioParams& params) {
  if (scheme == Scheme::CoupledAccess) {
    return ul_tier == dl_tier ? coupled_probs(params).of(ul_tier) : 0.0;
  }
  return decoupled_probs(params).of(ul_tier, dl_tier);
}

LatencyBreakdown case_latency(Scheme scheme, Tier ul_tier, Tier dl_tier,
                              const ScenarioParams& params) {
  return case_latency(scheme, ul_tier, dl_tier, params, OnUnstable::Throw);
}

LatencyBreakdown case_latency(Scheme scheme, Tier ul_tier, Tier dl_tier, const ScenarioParams& params,
                              OnUnstable on_unstable) {
  auto exec = [&](auto&& f) {
    if (on_unstable == OnUnstable::Throw) return f();
    try {
      return f();
    } catch (const QueueUnstable&) {
      return kUnbounded;
    }
  };
  const double g_ul = params.ul_sinr_threshold;
  const double g_dl = params.dl_sinr_threshold;
  LatencyBreakdown out;
  out.scheme = scheme;
  out.tiers = std::pair{ul_tier, dl_tier};

  if (scheme == Scheme::CoupledAccess) {
    if (ul_tier != dl_tier) {
      throw std::invalid_argument("coupled access serves UL and DL from the same tier");
    }
    out.ul_time = transmission_time(params.input_bits, ul_rate(Policy::Coupled, ul_tier, g_ul, params));
    out.exec_time = exec([&] { return exec_time_coupled(ul_tier, g_ul, params); });
    out.backhaul_time = 0.0;
    out.dl_time = transmission_time(params.output_bits, dl_rate(Policy::Coupled, dl_tier, g_dl, params));
  } else {
    if (ul_tier == Tier::Macro && dl_tier == Tier::Small) {
      throw std::invalid_argument("macro-UL / small-DL decoupled association has probability zero");
    }
    const bool crossed = ul_tier != dl_tier;
    out.ul_time =
        transmission_time(params.input_bits, ul_rate(Policy::Decoupled, ul_tier, g_ul, params));
    out.dl_time =
        transmission_time(params.output_bits, dl_rate(Policy::Decoupled, dl_tier, g_dl, params));
    if (scheme == Scheme::DecoupledULProc) {
      out.exec_time = exec([&] { return exec_time_decoupled_ul(ul_tier, g_ul, params); });
      out.backhaul_time = backhaul_time(BackhaulDirection::OutputFromUL, crossed, params);
    } else {
      out.exec_time = exec([&] { return exec_time_decoupled_dl(dl_tier, g_ul, params); });
      out.backhaul_time = backhaul_time(BackhaulDirection::InputToDL, crossed, params);
    }
  }
  out.total = out.ul_time + out.exec_time + out.backhaul_time + out.dl_time;
  return out;
}

LatencyBreakdown average_latency(Scheme scheme, const ScenarioParams& params, OnUnstable on_unstable) {
  LatencyBreakdown avg;
  avg.scheme = scheme;
  for (auto ul : kTiers) {
    for (auto dl : kTiers) {
      const double w = case_weight(scheme, ul, dl, params);
      if (w == 0.0) continue;
      const auto c = case_latency(scheme, ul, dl, params, on_unstable);
      avg.ul_time += w * c.ul_time;
      avg.exec_time += w * c.exec_time;
      avg.backhaul_time += w * c.backhaul_time;
      avg.dl_time += w * c.dl_time;
    }
  }
  avg.total = avg.ul_time + avg.exec_time + avg.backhaul_time + avg.dl_time;
  return avg;
}

}  // namespace dmec
