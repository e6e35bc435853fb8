#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "latency.hpp"
#include "scenario.hpp"

namespace dmec {

enum class Figure { Threshold = 2, DensityRatio = 3, CapacityRatio = 4, BitsRatio = 5 };

// Figure number 2..5; throws std::invalid_argument otherwise.
Figure figure_from_number(int number);

// Custom one-dimensional sweep over a configuration key. Values are in config
// units (dBm, dB, per km^2) and must be nonempty, finite and strictly monotone.
struct SweepSpec {
  std::string axis;
  std::vector<double> values;
  std::vector<Scheme> schemes{std::begin(kSchemes), std::end(kSchemes)};
  std::vector<std::pair<std::string, std::string>> overrides;
};

// Throws ConfigError (key = axis or override key) when the spec is malformed.
void check_sweep_spec(const SweepSpec& spec);

struct SweepRow {
  double axis_value = 0.0;
  double backhaul_bps = 0.0;
  double gamma_db = 0.0;  // UL threshold; equal to the DL one on every figure grid
  LatencyBreakdown latency;
};

struct SweepResult {
  std::string axis;               // column meaning of axis_value
  std::vector<std::string> notes; // '#' header lines after the resolved parameters
  ScenarioParams base;
  std::vector<SweepRow> rows;     // grid order: axis value, backhaul, gamma, scheme
};

// Evaluation failure at one grid point; what() names the point.
class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Figure grids:
//   Threshold: gamma_ul = gamma_dl over [-20, 10] dB in 1 dB steps, C^bh in {10 kbit/s, 10 Mbit/s}.
//   DensityRatio: lambda_s / lambda_m on a 25-point log grid over [1, 100] plus 15, gamma in
//     {-3, -10} dB; lambda_u is raised to lambda_m + lambda_s where the base value is smaller.
//   CapacityRatio: F_S / F_M = k / 20, k = 1..20, both backhauls.
//   BitsRatio: B^I / B^O = 1..10 with B^O = 1 kbit, both backhauls; V follows B^I.
// Unstable cloudlets yield unbounded exec times and a header note.
SweepResult run_figure(Figure figure, const ScenarioParams& base);
SweepResult run_sweep(const SweepSpec& spec, const ScenarioParams& base);

// Parameter set used at one grid point of a figure.
ScenarioParams figure_point(Figure figure, const ScenarioParams& base, double axis_value,
                            double backhaul_bps, double gamma_db);
std::vector<double> figure_axis(Figure figure);

void write_sweep_csv(std::ostream& out, const SweepResult& result);

// Scans `values` of a config key in order and reports where the cloudlet
// queues used by `scheme` first become unstable.
struct StabilityFrontier {
  std::optional<double> last_stable;
  std::optional<double> first_unstable;
  std::optional<Tier> tier;  // tier whose queue saturated first
};

StabilityFrontier stability_frontier(const ScenarioParams& base, const std::string& axis,
                                     const std::vector<double>& values, Scheme scheme);

}  // namespace dmec
