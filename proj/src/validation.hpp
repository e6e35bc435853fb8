#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "montecarlo.hpp"
#include "scenario.hpp"

namespace dmec {

inline constexpr std::uint64_t kMinValidationTrials = 10000;

struct ValidationOptions {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::vector<double> gammas_db{-15.0, -10.0, 0.0, 5.0};
  double window_radius = mc::kDefaultWindowRadius;
  // 0 picks max(20, trials / 1000).
  std::uint64_t load_deployments = 0;
  // Added to the closed-form A_SS^D before comparison; harness sensitivity checks only.
  double fault_offset_a_ss_d = 0.0;
  double max_abs_z = 3.0;
  double max_coverage_delta = 0.02;
};

enum class CheckKind { ZScore, AbsoluteDelta };

struct ValidationRow {
  std::string quantity;
  double analytic = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;  // (empirical - analytic) / std_error; 0 when both agree exactly
  CheckKind check = CheckKind::ZScore;
  bool passed = false;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  std::vector<std::string> notes;  // emitted as '#' header lines
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool sufficient_power = false;
  bool passed = false;  // every row passed and sufficient_power

  std::size_t failures() const;
};

// Runs every closed-form vs Monte Carlo comparison at the given scenario:
// association probabilities and mean loads by z-score, coverage by absolute
// difference. DL coverage is compared against the interference-limited form,
// since the sampled field always contains the interferers.
ValidationReport run_validation(const ScenarioParams& params, const ValidationOptions& options = {});

void write_validation_csv(std::ostream& out, const ValidationReport& report);

// One line: "PASS ..." / "FAIL ..." / "INSUFFICIENT ...".
std::string validation_summary(const ValidationReport& report);

}  // namespace dmec
