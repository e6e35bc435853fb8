#include "report.hpp"

#include <sstream>

#include "association.hpp"
#include "coverage.hpp"
#include "latency.hpp"
#include "number_format.hpp"

namespace dmec {

namespace {

const char* tier_letter(Tier t) { return t == Tier::Macro ? "m" : "s"; }

void put(std::ostringstream& out, const std::string& key, double value) {
  out << key << " = " << format_number(value) << "\n";
}

void put_breakdown(std::ostringstream& out, const std::string& prefix, const LatencyBreakdown& b) {
  put(out, prefix + ".ul_time_s", b.ul_time);
  put(out, prefix + ".exec_time_s", b.exec_time);
  put(out, prefix + ".backhaul_time_s", b.backhaul_time);
  put(out, prefix + ".dl_time_s", b.dl_time);
  put(out, prefix + ".total_s", b.total);
}

}  // namespace

std::string analytic_report(const ScenarioParams& params) {
  validate(params);
  std::ostringstream out;
  out << "backhaul_mode = " << to_string(params.backhaul_mode) << "\n";
  out << "dl_coverage_form = " << to_string(params.dl_coverage_form) << "\n";

  const auto a = association_report(params);
  put(out, "association.coupled.ss", a.coupled.ss);
  put(out, "association.coupled.mm", a.coupled.mm);
  put(out, "association.decoupled.ss", a.decoupled.ss);
  put(out, "association.decoupled.mm", a.decoupled.mm);
  put(out, "association.decoupled.sm", a.decoupled.sm);
  put(out, "association.decoupled.ms", a.decoupled.ms);
  for (auto t : kTiers) {
    put(out, std::string("marginal.ul.") + to_string(t), a.marginal.ul(t));
    put(out, std::string("marginal.dl.") + to_string(t), a.marginal.dl(t));
  }
  for (auto policy : {Policy::Coupled, Policy::Decoupled}) {
    for (auto link : {Link::Uplink, Link::Downlink}) {
      for (auto t : kTiers) {
        put(out, std::string("load.") + to_string(policy) + "." + to_string(link) + "." + to_string(t),
            a.load_of(policy, link, t));
      }
    }
  }

  put(out, "psi.ul", psi(params.ul_sinr_threshold));
  put(out, "psi.dl", psi(params.dl_sinr_threshold));
  for (auto policy : {Policy::Coupled, Policy::Decoupled}) {
    for (auto t : kTiers) {
      if (!(params.tier(t).density > 0.0)) continue;
      const std::string base = std::string("coverage.") + to_string(policy);
      put(out, base + ".ul." + to_string(t), ul_coverage(policy, t, params.ul_sinr_threshold, params).probability);
      for (auto form : {DlCoverageForm::NoiseScaled, DlCoverageForm::InterferenceLimited}) {
        put(out, base + ".dl." + to_string(t) + "." + to_string(form),
            dl_coverage(policy, t, params.dl_sinr_threshold, params, form).probability);
      }
    }
  }

  for (auto scheme : kSchemes) {
    for (auto ul : kTiers) {
      for (auto dl : kTiers) {
        const double w = case_weight(scheme, ul, dl, params);
        if (w == 0.0) continue;
        const std::string prefix =
            std::string("case.") + to_string(scheme) + "." + tier_letter(ul) + tier_letter(dl);
        put(out, prefix + ".weight", w);
        put_breakdown(out, prefix, case_latency(scheme, ul, dl, params));
      }
    }
  }
  for (auto scheme : kSchemes) {
    put_breakdown(out, std::string("average.") + to_string(scheme), average_latency(scheme, params));
  }
  ScenarioParams other_form = params;
  other_form.dl_coverage_form = params.dl_coverage_form == DlCoverageForm::NoiseScaled
                                    ? DlCoverageForm::InterferenceLimited
                                    : DlCoverageForm::NoiseScaled;
  for (auto scheme : kSchemes) {
    put(out, std::string("average.") + to_string(scheme) + ".total_s." + to_string(other_form.dl_coverage_form),
        average_latency(scheme, other_form).total);
  }
  return out.str();
}

}  // namespace dmec
