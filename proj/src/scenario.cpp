#include "scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "units.hpp"

namespace dmec {

const char* to_string(Tier t) { return t == Tier::Macro ? "macro" : "small"; }
const char* to_string(Policy p) { return p == Policy::Coupled ? "coupled" : "decoupled"; }
const char* to_string(Link l) { return l == Link::Uplink ? "ul" : "dl"; }
const char* to_string(BackhaulMode m) {
  return m == BackhaulMode::CrossTierOnly ? "cross_tier_only" : "always";
}
const char* to_string(DlCoverageForm f) {
  return f == DlCoverageForm::NoiseScaled ? "noise_scaled" : "interference";
}

namespace {

double identity(double v) { return v; }

struct NumericKey {
  const char* name;
  double& (*field)(ScenarioParams&);
  double (*to_si)(double);
  double (*from_si)(double);
  const char* si_unit;
};

// Order here is the canonical emission order.
const NumericKey kNumericKeys[] = {
    {"lambda_m_per_km2", [](ScenarioParams& p) -> double& { return p.macro.density; },
     per_km2_to_per_m2, per_m2_to_per_km2, "1/m^2"},
    {"lambda_s_per_km2", [](ScenarioParams& p) -> double& { return p.small.density; },
     per_km2_to_per_m2, per_m2_to_per_km2, "1/m^2"},
    {"lambda_u_per_km2", [](ScenarioParams& p) -> double& { return p.user_density; },
     per_km2_to_per_m2, per_m2_to_per_km2, "1/m^2"},
    {"p_m_dbm", [](ScenarioParams& p) -> double& { return p.macro.tx_power; }, dbm_to_watts,
     watts_to_dbm, "W"},
    {"p_s_dbm", [](ScenarioParams& p) -> double& { return p.small.tx_power; }, dbm_to_watts,
     watts_to_dbm, "W"},
    {"p_u_dbm", [](ScenarioParams& p) -> double& { return p.user_tx_power; }, dbm_to_watts,
     watts_to_dbm, "W"},
    {"f_m_hz", [](ScenarioParams& p) -> double& { return p.macro.cloudlet_capacity; }, identity,
     identity, "cycles/s"},
    {"f_s_hz", [](ScenarioParams& p) -> double& { return p.small.cloudlet_capacity; }, identity,
     identity, "cycles/s"},
    {"w_ul_hz", [](ScenarioParams& p) -> double& { return p.ul_bandwidth; }, identity, identity,
     "Hz"},
    {"w_dl_hz", [](ScenarioParams& p) -> double& { return p.dl_bandwidth; }, identity, identity,
     "Hz"},
    {"noise_dbm", [](ScenarioParams& p) -> double& { return p.noise_power; }, dbm_to_watts,
     watts_to_dbm, "W"},
    {"alpha", [](ScenarioParams& p) -> double& { return p.pathloss_exponent; }, identity,
     identity, ""},
    {"b_in_bits", [](ScenarioParams& p) -> double& { return p.input_bits; }, identity, identity,
     "bits"},
    {"b_out_bits", [](ScenarioParams& p) -> double& { return p.output_bits; }, identity, identity,
     "bits"},
    {"cycles_per_input_bit", [](ScenarioParams& p) -> double& { return p.cycles_per_input_bit; },
     identity, identity, "cycles/bit"},
    {"c_bh_bps", [](ScenarioParams& p) -> double& { return p.backhaul_capacity; }, identity,
     identity, "bit/s"},
    {"gamma_ul_db", [](ScenarioParams& p) -> double& { return p.ul_sinr_threshold; },
     db_to_linear, linear_to_db, ""},
    {"gamma_dl_db", [](ScenarioParams& p) -> double& { return p.dl_sinr_threshold; },
     db_to_linear, linear_to_db, ""},
};

constexpr const char* kBackhaulModeKey = "backhaul_mode";
constexpr const char* kDlFormKey = "dl_coverage_form";

// The accessor table hands out mutable references; reads go through here.
double read(const ScenarioParams& p, const NumericKey& k) {
  return k.field(const_cast<ScenarioParams&>(p));
}

const NumericKey* find_numeric(std::string_view key) {
  for (const auto& k : kNumericKeys) {
    if (key == k.name) return &k;
  }
  return nullptr;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(std::string_view key, std::string_view text) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(std::string(key), "value '" + std::string(text) + "' is not a finite number");
  }
  return v;
}

// Config-unit text whose conversion lands exactly on `si`, when one exists
// within a few hundred ulps of the direct inverse.
std::string exact_config_repr(double si, const NumericKey& key) {
  const double guess = key.from_si(si);
  if (key.to_si(guess) == si) return format_double(guess);
  double up = guess;
  double down = guess;
  for (int i = 0; i < 512; ++i) {
    up = std::nextafter(up, std::numeric_limits<double>::infinity());
    if (key.to_si(up) == si) return format_double(up);
    down = std::nextafter(down, -std::numeric_limits<double>::infinity());
    if (key.to_si(down) == si) return format_double(down);
  }
  return format_double(guess);
}

[[noreturn]] void reject(const ScenarioParams& p, const char* key, const std::string& why) {
  const auto* k = find_numeric(key);
  const double field = read(p, *k);
  std::ostringstream msg;
  msg.precision(10);
  msg << why << " (raw " << k->from_si(field) << " -> " << field;
  if (*k->si_unit) msg << ' ' << k->si_unit;
  msg << ')';
  throw ConfigError(key, msg.str());
}

}  // namespace

ScenarioParams default_scenario() {
  ScenarioParams p;
  p.macro = {per_km2_to_per_m2(1.0), dbm_to_watts(46.0), 4.5e9};
  p.small = {per_km2_to_per_m2(10.0), dbm_to_watts(30.0), 3.6e9};
  p.user_density = per_km2_to_per_m2(25.0);
  p.user_tx_power = dbm_to_watts(20.0);
  p.ul_bandwidth = 1.4e6;
  p.dl_bandwidth = 1.4e6;
  p.noise_power = dbm_to_watts(-120.0);
  p.pathloss_exponent = 4.0;
  p.input_bits = 4000.0;
  p.output_bits = 1000.0;
  p.cycles_per_input_bit = 2640.0;
  p.backhaul_capacity = 10e6;
  p.ul_sinr_threshold = db_to_linear(-10.0);
  p.dl_sinr_threshold = db_to_linear(-10.0);
  return p;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& k : kNumericKeys) out.emplace_back(k.name);
    out.emplace_back(kBackhaulModeKey);
    out.emplace_back(kDlFormKey);
    return out;
  }();
  return keys;
}

bool is_config_key(std::string_view key) {
  return find_numeric(key) != nullptr || key == kBackhaulModeKey || key == kDlFormKey;
}

void apply_setting(ScenarioParams& params, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == kBackhaulModeKey) {
    if (value == "cross_tier_only") {
      params.backhaul_mode = BackhaulMode::CrossTierOnly;
    } else if (value == "always") {
      params.backhaul_mode = BackhaulMode::Always;
    } else {
      throw ConfigError(std::string(key), "expected 'cross_tier_only' or 'always', got '" +
                                              std::string(value) + "'");
    }
    return;
  }
  if (key == kDlFormKey) {
    if (value == "noise_scaled") {
      params.dl_coverage_form = DlCoverageForm::NoiseScaled;
    } else if (value == "interference") {
      params.dl_coverage_form = DlCoverageForm::InterferenceLimited;
    } else {
      throw ConfigError(std::string(key),
                        "expected 'noise_scaled' or 'interference', got '" + std::string(value) + "'");
    }
    return;
  }
  const auto* k = find_numeric(key);
  if (k == nullptr) throw ConfigError(std::string(key), "unknown configuration key");
  k->field(params) = k->to_si(parse_number(key, value));
}

double config_value(const ScenarioParams& params, std::string_view key) {
  const auto* k = find_numeric(key);
  if (k == nullptr) throw ConfigError(std::string(key), "not a numeric configuration key");
  return k->from_si(read(params, *k));
}

ScenarioParams parse_config(std::string_view text) {
  ScenarioParams params = default_scenario();
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    if (!is_config_key(key)) throw ConfigError(std::string(key), "unknown configuration key");
    if (!seen.emplace(key).second) throw ConfigError(std::string(key), "key given more than once");
    apply_setting(params, key, line.substr(eq + 1));
  }
  validate(params);
  return params;
}

ScenarioParams load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read configuration file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate(const ScenarioParams& p) {
  for (const auto& k : kNumericKeys) {
    if (!std::isfinite(read(p, k))) reject(p, k.name, "must be finite");
  }
  if (p.pathloss_exponent != 4.0) {
    reject(p, "alpha", "path-loss exponent must be exactly 4 (psi is only available for alpha = 4)");
  }
  if (!(p.macro.density > 0)) reject(p, "lambda_m_per_km2", "macro density must be positive");
  if (p.small.density < 0) reject(p, "lambda_s_per_km2", "small-cell density must be non-negative");
  if (!(p.macro.tx_power > 0)) reject(p, "p_m_dbm", "must be positive");
  if (!(p.small.tx_power > 0)) reject(p, "p_s_dbm", "must be positive");
  if (!(p.user_tx_power > 0)) reject(p, "p_u_dbm", "must be positive");
  if (p.macro.tx_power < p.small.tx_power) {
    reject(p, "p_s_dbm", "small-cell power must not exceed macro power (P_M >= P_S)");
  }
  if (!(p.macro.cloudlet_capacity > 0)) reject(p, "f_m_hz", "must be positive");
  if (!(p.small.cloudlet_capacity > 0)) reject(p, "f_s_hz", "must be positive");
  if (p.macro.cloudlet_capacity < p.small.cloudlet_capacity) {
    reject(p, "f_s_hz", "small-cell cloudlet capacity must not exceed macro capacity (F_M >= F_S)");
  }
  const double bs_density = p.macro.density + p.small.density;
  if (p.user_density < bs_density * (1.0 - 1e-12)) {
    std::ostringstream why;
    why << "violates the thinning constraint: user density must be at least lambda_m + lambda_s = "
        << per_m2_to_per_km2(bs_density)
        << " per km^2 so that the thinning probability (lambda_m + lambda_s) / lambda_u is <= 1";
    reject(p, "lambda_u_per_km2", why.str());
  }
  if (!(p.ul_bandwidth > 0)) reject(p, "w_ul_hz", "must be positive");
  if (!(p.dl_bandwidth > 0)) reject(p, "w_dl_hz", "must be positive");
  if (p.noise_power < 0) reject(p, "noise_dbm", "must be non-negative");
  if (!(p.input_bits > 0)) reject(p, "b_in_bits", "must be positive");
  if (!(p.output_bits > 0)) reject(p, "b_out_bits", "must be positive");
  if (!(p.cycles_per_input_bit > 0)) reject(p, "cycles_per_input_bit", "must be positive");
  if (!(p.backhaul_capacity > 0)) reject(p, "c_bh_bps", "must be positive");
  if (!(p.ul_sinr_threshold > 0)) reject(p, "gamma_ul_db", "must be positive");
  if (!(p.dl_sinr_threshold > 0)) reject(p, "gamma_dl_db", "must be positive");
}

std::string to_config_text(const ScenarioParams& params) {
  std::string out;
  for (const auto& k : kNumericKeys) {
    out += k.name;
    out += " = ";
    out += exact_config_repr(read(params, k), k);
    out += '\n';
  }
  out += std::string(kBackhaulModeKey) + " = " + to_string(params.backhaul_mode) + '\n';
  out += std::string(kDlFormKey) + " = " + to_string(params.dl_coverage_form) + '\n';
  return out;
}

}  // namespace dmec
