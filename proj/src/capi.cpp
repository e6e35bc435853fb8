#include "dmec/dmec.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "association.hpp"
#include "coverage.hpp"
#include "latency.hpp"
#include "montecarlo.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "scenario.hpp"
#include "svg_plot.hpp"
#include "sweep.hpp"
#include "validation.hpp"

struct dmec_scenario {
  dmec::ScenarioParams params;
};

namespace {

thread_local std::string last_error;

dmec_status fail(dmec_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
dmec_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const dmec::ConfigError& e) {
    return fail(DMEC_ERR_CONFIG, e.what());
  } catch (const dmec::QueueUnstable& e) {
    return fail(DMEC_ERR_UNSTABLE, e.what());
  } catch (const dmec::CsvFormatError& e) {
    return fail(DMEC_ERR_FORMAT, e.what());
  } catch (const dmec::QuadratureError& e) {
    return fail(DMEC_ERR_NUMERICAL, e.what());
  } catch (const dmec::mc::WindowTooSmall& e) {
    return fail(DMEC_ERR_NUMERICAL, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(DMEC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(DMEC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DMEC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DMEC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DMEC_ERR_INTERNAL, "unknown error");
  }
}

char* copy_out(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

#define DMEC_REQUIRE(cond, what) \
  if (!(cond)) return fail(DMEC_ERR_INVALID_ARGUMENT, what)

dmec::Tier tier_of(dmec_tier t) {
  if (t != DMEC_TIER_MACRO && t != DMEC_TIER_SMALL) throw std::invalid_argument("unknown tier");
  return t == DMEC_TIER_MACRO ? dmec::Tier::Macro : dmec::Tier::Small;
}

dmec::Policy policy_of(dmec_policy p) {
  if (p != DMEC_POLICY_COUPLED && p != DMEC_POLICY_DECOUPLED) throw std::invalid_argument("unknown policy");
  return p == DMEC_POLICY_COUPLED ? dmec::Policy::Coupled : dmec::Policy::Decoupled;
}

dmec::Link link_of(dmec_link l) {
  if (l != DMEC_LINK_UL && l != DMEC_LINK_DL) throw std::invalid_argument("unknown link");
  return l == DMEC_LINK_UL ? dmec::Link::Uplink : dmec::Link::Downlink;
}

dmec::Scheme scheme_of(dmec_scheme s) {
  switch (s) {
    case DMEC_SCHEME_COUPLED: return dmec::Scheme::CoupledAccess;
    case DMEC_SCHEME_DECOUPLED_UL_PROC: return dmec::Scheme::DecoupledULProc;
    case DMEC_SCHEME_DECOUPLED_DL_PROC: return dmec::Scheme::DecoupledDLProc;
  }
  throw std::invalid_argument("unknown scheme");
}

void fill(dmec_latency* out, const dmec::LatencyBreakdown& b) {
  *out = {b.ul_time, b.exec_time, b.backhaul_time, b.dl_time, b.total};
}

}  // namespace

extern "C" {

const char* dmec_last_error(void) { return last_error.c_str(); }

const char* dmec_version(void) { return "0.1.0"; }

void dmec_string_free(char* text) { std::free(text); }

dmec_status dmec_scenario_default(dmec_scenario** out) {
  DMEC_REQUIRE(out, "out is null");
  return guarded([&] {
    *out = new dmec_scenario{dmec::default_scenario()};
    return DMEC_OK;
  });
}

dmec_status dmec_scenario_from_text(const char* text, dmec_scenario** out) {
  DMEC_REQUIRE(text && out, "null argument");
  return guarded([&] {
    *out = new dmec_scenario{dmec::parse_config(text)};
    return DMEC_OK;
  });
}

dmec_status dmec_scenario_from_file(const char* path, dmec_scenario** out) {
  DMEC_REQUIRE(path && out, "null argument");
  return guarded([&] {
    *out = new dmec_scenario{dmec::load_config(path)};
    return DMEC_OK;
  });
}

void dmec_scenario_free(dmec_scenario* scenario) { delete scenario; }

dmec_status dmec_scenario_set(dmec_scenario* scenario, const char* key, const char* value) {
  DMEC_REQUIRE(scenario && key && value, "null argument");
  return guarded([&] {
    dmec::apply_setting(scenario->params, key, value);
    return DMEC_OK;
  });
}

dmec_status dmec_scenario_get(const dmec_scenario* scenario, const char* key, double* out) {
  DMEC_REQUIRE(scenario && key && out, "null argument");
  return guarded([&] {
    *out = dmec::config_value(scenario->params, key);
    return DMEC_OK;
  });
}

dmec_status dmec_scenario_validate(const dmec_scenario* scenario) {
  DMEC_REQUIRE(scenario, "scenario is null");
  return guarded([&] {
    dmec::validate(scenario->params);
    return DMEC_OK;
  });
}

dmec_status dmec_scenario_to_text(const dmec_scenario* scenario, char** out) {
  DMEC_REQUIRE(scenario && out, "null argument");
  return guarded([&] {
    *out = copy_out(dmec::to_config_text(scenario->params));
    return DMEC_OK;
  });
}

dmec_status dmec_association_probs(const dmec_scenario* scenario, dmec_association* out) {
  DMEC_REQUIRE(scenario && out, "null argument");
  return guarded([&] {
    dmec::validate(scenario->params);
    const auto c = dmec::coupled_probs(scenario->params);
    const auto d = dmec::decoupled_probs(scenario->params);
    *out = {c.ss, c.mm, d.ss, d.mm, d.sm, d.ms};
    return DMEC_OK;
  });
}

dmec_status dmec_mean_load(const dmec_scenario* scenario, dmec_policy policy, dmec_link link, dmec_tier tier,
                           double* out) {
  DMEC_REQUIRE(scenario && out, "null argument");
  return guarded([&] {
    dmec::validate(scenario->params);
    *out = dmec::mean_load(policy_of(policy), link_of(link), tier_of(tier), scenario->params);
    return DMEC_OK;
  });
}

dmec_status dmec_ul_coverage(const dmec_scenario* scenario, dmec_policy policy, dmec_tier tier, double gamma,
                             double* out) {
  DMEC_REQUIRE(scenario && out, "null argument");
  DMEC_REQUIRE(gamma > 0.0, "gamma must be positive");
  return guarded([&] {
    dmec::validate(scenario->params);
    *out = dmec::ul_coverage(policy_of(policy), tier_of(tier), gamma, scenario->params).probability;
    return DMEC_OK;
  });
}

dmec_status dmec_dl_coverage(const dmec_scenario* scenario, dmec_policy policy, dmec_tier tier, double gamma,
                             dmec_dl_form form, double* out) {
  DMEC_REQUIRE(scenario && out, "null argument");
  DMEC_REQUIRE(gamma > 0.0, "gamma must be positive");
  return guarded([&] {
    dmec::validate(scenario->params);
    auto f = scenario->params.dl_coverage_form;
    if (form == DMEC_DL_FORM_NOISE_SCALED) {
      f = dmec::DlCoverageForm::NoiseScaled;
    } else if (form == DMEC_DL_FORM_INTERFERENCE) {
      f = dmec::DlCoverageForm::InterferenceLimited;
    } else if (form != DMEC_DL_FORM_CONFIGURED) {
      throw std::invalid_argument("unknown DL coverage form");
    }
    *out = dmec::dl_coverage(policy_of(policy), tier_of(tier), gamma, scenario->params, f).probability;
    return DMEC_OK;
  });
}

dmec_status dmec_case_latency(const dmec_scenario* scenario, dmec_scheme scheme, dmec_tier ul_tier,
                              dmec_tier dl_tier, dmec_latency* out) {
  DMEC_REQUIRE(scenario && out, "null argument");
  return guarded([&] {
    dmec::validate(scenario->params);
    fill(out, dmec::case_latency(scheme_of(scheme), tier_of(ul_tier), tier_of(dl_tier), scenario->params));
    return DMEC_OK;
  });
}

dmec_status dmec_average_latency(const dmec_scenario* scenario, dmec_scheme scheme, dmec_latency* out) {
  DMEC_REQUIRE(scenario && out, "null argument");
  return guarded([&] {
    dmec::validate(scenario->params);
    fill(out, dmec::average_latency(scheme_of(scheme), scenario->params));
    return DMEC_OK;
  });
}

dmec_status dmec_analytic_report(const dmec_scenario* scenario, char** out) {
  DMEC_REQUIRE(scenario && out, "null argument");
  return guarded([&] {
    *out = copy_out(dmec::analytic_report(scenario->params));
    return DMEC_OK;
  });
}

dmec_status dmec_sweep_figure(const dmec_scenario* scenario, int figure, char** out_csv) {
  DMEC_REQUIRE(scenario && out_csv, "null argument");
  return guarded([&] {
    const auto result = dmec::run_figure(dmec::figure_from_number(figure), scenario->params);
    std::ostringstream csv;
    dmec::write_sweep_csv(csv, result);
    *out_csv = copy_out(csv.str());
    return DMEC_OK;
  });
}

dmec_status dmec_sweep_axis(const dmec_scenario* scenario, const char* axis, const double* values, size_t count,
                            char** out_csv) {
  DMEC_REQUIRE(scenario && axis && out_csv && (values || count == 0), "null argument");
  return guarded([&] {
    dmec::SweepSpec spec;
    spec.axis = axis;
    spec.values.assign(values, values + count);
    const auto result = dmec::run_sweep(spec, scenario->params);
    std::ostringstream csv;
    dmec::write_sweep_csv(csv, result);
    *out_csv = copy_out(csv.str());
    return DMEC_OK;
  });
}

dmec_status dmec_stability_frontier(const dmec_scenario* scenario, const char* axis, const double* values,
                                    size_t count, dmec_scheme scheme, dmec_frontier* out) {
  DMEC_REQUIRE(scenario && axis && out && (values || count == 0), "null argument");
  return guarded([&] {
    const auto f = dmec::stability_frontier(scenario->params, axis, std::vector<double>(values, values + count),
                                            scheme_of(scheme));
    *out = {};
    out->has_last_stable = f.last_stable.has_value();
    out->last_stable = f.last_stable.value_or(0.0);
    out->has_first_unstable = f.first_unstable.has_value();
    out->first_unstable = f.first_unstable.value_or(0.0);
    out->tier = f.tier == dmec::Tier::Small ? DMEC_TIER_SMALL : DMEC_TIER_MACRO;
    return DMEC_OK;
  });
}

dmec_status dmec_validate(const dmec_scenario* scenario, const dmec_validation_options* options, char** out_csv,
                          char** out_summary) {
  DMEC_REQUIRE(scenario && options, "null argument");
  DMEC_REQUIRE(options->trials >= 1, "trials must be at least 1");
  return guarded([&] {
    dmec::ValidationOptions opts;
    opts.trials = options->trials;
    opts.seed = options->seed;
    const auto report = dmec::run_validation(scenario->params, opts);
    std::ostringstream csv;
    dmec::write_validation_csv(csv, report);
    const auto summary = dmec::validation_summary(report);
    if (out_csv) *out_csv = copy_out(csv.str());
    if (out_summary) *out_summary = copy_out(summary);
    if (!report.passed) return fail(DMEC_ERR_VALIDATION, summary);
    return DMEC_OK;
  });
}

dmec_status dmec_plot(const char* csv_text, char** out_svg) {
  DMEC_REQUIRE(csv_text && out_svg, "null argument");
  return guarded([&] {
    std::istringstream in(csv_text);
    const auto data = dmec::read_sweep_csv(in);
    std::ostringstream svg;
    dmec::write_svg(svg, data);
    *out_svg = copy_out(svg.str());
    return DMEC_OK;
  });
}

}  // extern "C"
