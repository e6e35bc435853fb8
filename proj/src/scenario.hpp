#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dmec {

enum class Tier { Macro, Small };
enum class Policy { Coupled, Decoupled };
enum class Link { Uplink, Downlink };

// Whether decoupled cases whose UL and DL BS share a tier also pay the
// backhaul delay. Always is the literal reading of the latency sums.
enum class BackhaulMode { CrossTierOnly, Always };

// NoiseScaled evaluates the DL coverage integrand with the noise term scaled
// by (1 + psi) and no interferer term. InterferenceLimited uses the standard
// max-power DL result, exp(-g s2 x^4 / P_k) exp(-pi lambda_eq psi x^2).
enum class DlCoverageForm { NoiseScaled, InterferenceLimited };

inline constexpr Tier kTiers[] = {Tier::Macro, Tier::Small};

inline constexpr Tier other(Tier t) { return t == Tier::Macro ? Tier::Small : Tier::Macro; }

const char* to_string(Tier t);
const char* to_string(Policy p);
const char* to_string(Link l);
const char* to_string(BackhaulMode m);
const char* to_string(DlCoverageForm f);

struct TierParams {
  double density = 0.0;            // BS per m^2
  double tx_power = 0.0;           // W
  double cloudlet_capacity = 0.0;  // CPU cycles per second

  bool operator==(const TierParams&) const = default;
};

// All fields in SI units: m, W, Hz, bits, s.
struct ScenarioParams {
  TierParams macro;
  TierParams small;
  double user_density = 0.0;       // MU per m^2
  double user_tx_power = 0.0;      // W
  double ul_bandwidth = 0.0;       // Hz
  double dl_bandwidth = 0.0;       // Hz
  double noise_power = 0.0;        // W
  double pathloss_exponent = 4.0;
  double input_bits = 0.0;         // B^I
  double output_bits = 0.0;        // B^O
  double cycles_per_input_bit = 0.0;
  double backhaul_capacity = 0.0;  // bit/s
  double ul_sinr_threshold = 0.0;  // linear
  double dl_sinr_threshold = 0.0;  // linear
  BackhaulMode backhaul_mode = BackhaulMode::CrossTierOnly;
  DlCoverageForm dl_coverage_form = DlCoverageForm::NoiseScaled;

  const TierParams& tier(Tier t) const { return t == Tier::Macro ? macro : small; }
  TierParams& tier(Tier t) { return t == Tier::Macro ? macro : small; }

  // V; scales with B^I so input-size sweeps rescale the workload.
  double cycles_per_request() const { return cycles_per_input_bit * input_bits; }

  bool operator==(const ScenarioParams&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Two-tier reference scenario: 1 and 10 BS/km^2, 46/30/20 dBm, 4.5/3.6 GHz,
// 25 MU/km^2, 1.4 MHz, -120 dBm, B^I = 4 kbit, B^O = 1 kbit, V = 2640 B^I,
// 10 Mbit/s backhaul, -10 dB thresholds.
ScenarioParams default_scenario();

// Recognised configuration keys in canonical emission order.
const std::vector<std::string>& config_keys();
bool is_config_key(std::string_view key);

// Flat "key = value" document, '#' starts a comment. Missing keys take the
// default scenario's values. Throws ConfigError.
ScenarioParams parse_config(std::string_view text);
ScenarioParams load_config(const std::filesystem::path& path);

// Applies one key in config units (dBm, per km^2, dB) without validating.
void apply_setting(ScenarioParams& params, std::string_view key, std::string_view value);

// Value of a key expressed in config units.
double config_value(const ScenarioParams& params, std::string_view key);

// Throws ConfigError naming the key, its raw value and its SI value.
void validate(const ScenarioParams& params);

// Canonical document; parse_config(to_config_text(p)) == p for any p that
// parse_config can produce.
std::string to_config_text(const ScenarioParams& params);

}  // namespace dmec
