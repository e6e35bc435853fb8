#include "validation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "association.hpp"
#include "coverage.hpp"
#include "number_format.hpp"
#include "units.hpp"

namespace dmec {

namespace {

double z_score(double analytic, double empirical, double se) {
  const double diff = empirical - analytic;
  if (se > 0.0) return diff / se;
  if (diff == 0.0) return 0.0;
  return diff > 0 ? INFINITY : -INFINITY;
}

ValidationRow z_row(std::string name, double analytic, const mc::McEstimate& e, double limit) {
  ValidationRow r;
  r.quantity = std::move(name);
  r.analytic = analytic;
  r.empirical = e.mean;
  r.std_error = e.std_error;
  r.z_score = z_score(analytic, e.mean, e.std_error);
  r.check = CheckKind::ZScore;
  r.passed = std::abs(r.z_score) <= limit;
  return r;
}

ValidationRow delta_row(std::string name, double analytic, const mc::McEstimate& e, double limit) {
  ValidationRow r = z_row(std::move(name), analytic, e, INFINITY);
  r.check = CheckKind::AbsoluteDelta;
  r.passed = e.trials > 0 && std::abs(e.mean - analytic) <= limit;
  return r;
}

std::string gamma_label(double db) {
  std::ostringstream s;
  s << "gamma_db=" << db;
  return s.str();
}

}  // namespace

std::size_t ValidationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.passed; }));
}

ValidationReport run_validation(const ScenarioParams& params, const ValidationOptions& options) {
  validate(params);
  ValidationReport report;
  report.trials = options.trials;
  report.seed = options.seed;
  report.sufficient_power = options.trials >= kMinValidationTrials;

  report.notes.push_back(
      "UL interferers are an independent PPP of density lambda_m + lambda_s outside the serving "
      "distance around the serving BS, the same approximation the closed forms use; agreement "
      "checks implementation fidelity, not the physical accuracy of that approximation");
  report.notes.push_back(
      "DL coverage is compared with the interference-limited form; the noise-scaled form ignores "
      "interferers and its offset from the sampled field is listed below");

  // Association.
  const auto probs = association_report(params);
  const auto freq = mc::empirical_association(params, options.trials, options.seed, options.window_radius);
  const double z = options.max_abs_z;
  for (auto t : kTiers) {
    double analytic = probs.coupled.of(t);
    if (t == Tier::Small) analytic += options.fault_offset_a_ss_d;
    report.rows.push_back(z_row(std::string("assoc.coupled.") + (t == Tier::Macro ? "mm" : "ss"), analytic,
                                freq.coupled(t), z));
  }
  for (auto ul : kTiers) {
    for (auto dl : kTiers) {
      std::string name = std::string("assoc.decoupled.") + (ul == Tier::Macro ? "m" : "s") +
                         (dl == Tier::Macro ? "m" : "s");
      report.rows.push_back(z_row(name, probs.decoupled.of(ul, dl), freq.decoupled(ul, dl), z));
    }
  }
  if (freq.resampled > 0) {
    report.notes.push_back("association draws resampled for an empty window: " +
                           std::to_string(freq.resampled));
  }

  // Mean loads.
  const std::uint64_t deployments =
      options.load_deployments > 0 ? options.load_deployments
                                   : std::max<std::uint64_t>(20, options.trials / 1000);
  const auto loads = mc::empirical_mean_loads(params, deployments, options.seed, options.window_radius);
  for (auto policy : {Policy::Coupled, Policy::Decoupled}) {
    for (auto link : {Link::Uplink, Link::Downlink}) {
      for (auto t : kTiers) {
        if (!(params.tier(t).density > 0.0)) continue;
        std::string name = std::string("load.") + to_string(policy) + "." + to_string(link) + "." + to_string(t);
        report.rows.push_back(z_row(name, mean_load(policy, link, t, params), loads.of(policy, link, t), z));
      }
    }
  }

  // Coverage. DL association is max-power under both policies, so one DL
  // sample serves both rows.
  std::vector<double> gammas;
  for (double db : options.gammas_db) gammas.push_back(db_to_linear(db));
  const auto ul_coupled = mc::empirical_coverage_sweep(params, Policy::Coupled, Link::Uplink, gammas,
                                                       options.trials, options.seed, options.window_radius);
  const auto ul_decoupled = mc::empirical_coverage_sweep(
      params, Policy::Decoupled, Link::Uplink, gammas, options.trials, options.seed, options.window_radius);
  const auto dl = mc::empirical_coverage_sweep(params, Policy::Coupled, Link::Downlink, gammas,
                                               options.trials, options.seed, options.window_radius);
  const double tol = options.max_coverage_delta;
  for (auto policy : {Policy::Coupled, Policy::Decoupled}) {
    for (auto link : {Link::Uplink, Link::Downlink}) {
      const auto& sample = link == Link::Downlink ? dl : (policy == Policy::Coupled ? ul_coupled : ul_decoupled);
      for (auto t : kTiers) {
        if (!(params.tier(t).density > 0.0)) continue;
        for (std::size_t g = 0; g < gammas.size(); ++g) {
          std::string name = std::string("coverage.") + to_string(policy) + "." + to_string(link) + "." +
                             to_string(t) + "." + gamma_label(options.gammas_db[g]);
          double analytic;
          if (link == Link::Uplink) {
            analytic = ul_coverage(policy, t, gammas[g], params).probability;
          } else {
            analytic = dl_coverage(policy, t, gammas[g], params, DlCoverageForm::InterferenceLimited).probability;
            const double literal = dl_coverage(policy, t, gammas[g], params, DlCoverageForm::NoiseScaled).probability;
            report.notes.push_back(name + ": noise-scaled form " + format_number(literal) +
                                   ", minus sampled " + format_number(literal - sample.estimate(t, g).mean));
          }
          report.rows.push_back(delta_row(std::move(name), analytic, sample.estimate(t, g), tol));
        }
      }
    }
  }

  report.passed = report.sufficient_power && report.failures() == 0;
  return report;
}

void write_validation_csv(std::ostream& out, const ValidationReport& report) {
  out << "# validation trials=" << report.trials << " seed=" << report.seed << "\n";
  for (const auto& n : report.notes) out << "# " << n << "\n";
  out << "# summary: " << validation_summary(report) << "\n";
  out << "quantity,analytic,empirical,std_error,z_score\n";
  for (const auto& r : report.rows) {
    out << r.quantity << ',' << format_number(r.analytic) << ',' << format_number(r.empirical) << ','
        << format_number(r.std_error) << ',' << format_number(r.z_score) << '\n';
  }
}

std::string validation_summary(const ValidationReport& report) {
  std::ostringstream s;
  if (!report.sufficient_power) {
    s << "INSUFFICIENT trials=" << report.trials << " (need at least " << kMinValidationTrials
      << " for meaningful power)";
    return s.str();
  }
  s << (report.passed ? "PASS " : "FAIL ") << (report.rows.size() - report.failures()) << "/"
    << report.rows.size() << " checks";
  for (const auto& r : report.rows) {
    if (!r.passed) s << "; " << r.quantity << " z=" << format_number(r.z_score);
  }
  return s.str();
}

}  // namespace dmec
