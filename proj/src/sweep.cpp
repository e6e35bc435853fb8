#include "sweep.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "number_format.hpp"
#include "parallel.hpp"
#include "units.hpp"

namespace dmec {

namespace {

constexpr double kLowBackhaul = 10e3;
constexpr double kHighBackhaul = 10e6;

struct GridTask {
  double axis_value;
  double backhaul_bps;
  double gamma_db;
  ScenarioParams params;
};

std::string point_label(const std::string& axis, const GridTask& t) {
  std::ostringstream s;
  s << axis << "=" << format_number(t.axis_value) << ", backhaul_bps=" << format_number(t.backhaul_bps)
    << ", gamma_db=" << format_number(t.gamma_db);
  return s.str();
}

SweepResult evaluate(std::string axis, const ScenarioParams& base, std::vector<GridTask> tasks,
                     const std::vector<Scheme>& schemes, std::vector<std::string> notes) {
  std::vector<std::vector<SweepRow>> slots(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    const auto& t = tasks[i];
    try {
      validate(t.params);
      for (auto s : schemes) {
        slots[i].push_back({t.axis_value, t.backhaul_bps, t.gamma_db,
                            average_latency(s, t.params, OnUnstable::Saturate)});
      }
    } catch (const ConfigError& e) {
      throw ConfigError(e.key(), std::string("at grid point ") + point_label(axis, t) + ": " + e.what());
    } catch (const std::exception& e) {
      throw SweepError(std::string("at grid point ") + point_label(axis, t) + ": " + e.what());
    }
  });

  SweepResult result;
  result.axis = std::move(axis);
  result.base = base;
  result.notes = std::move(notes);
  for (auto& slot : slots) {
    for (auto& row : slot) {
      if (row.latency.exec_time == kUnbounded) {
        std::ostringstream s;
        s << "unstable cloudlet queue: " << result.axis << "=" << format_number(row.axis_value)
          << " backhaul_bps=" << format_number(row.backhaul_bps) << " gamma_db="
          << format_number(row.gamma_db) << " scheme=" << to_string(row.latency.scheme)
          << " (exec_time_s reported as inf)";
        result.notes.push_back(s.str());
      }
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

std::string list_text(const std::vector<double>& xs) {
  std::ostringstream s;
  for (std::size_t i = 0; i < xs.size(); ++i) s << (i ? " " : "") << format_number(xs[i]);
  return s.str();
}

const char* axis_name(Figure f) {
  switch (f) {
    case Figure::Threshold: return "gamma_db";
    case Figure::DensityRatio: return "lambda_s_over_lambda_m";
    case Figure::CapacityRatio: return "f_s_over_f_m";
    case Figure::BitsRatio: return "b_in_over_b_out";
  }
  return "?";
}

}  // namespace

Figure figure_from_number(int number) {
  if (number < 2 || number > 5) {
    throw std::invalid_argument("figure must be 2, 3, 4 or 5, got " + std::to_string(number));
  }
  return static_cast<Figure>(number);
}

std::vector<double> figure_axis(Figure figure) {
  std::vector<double> v;
  switch (figure) {
    case Figure::Threshold:
      for (int db = -20; db <= 10; ++db) v.push_back(db);
      break;
    case Figure::DensityRatio:
      for (int k = 0; k <= 24; ++k) v.push_back(std::pow(10.0, k / 12.0));
      v.push_back(15.0);
      std::sort(v.begin(), v.end());
      break;
    case Figure::CapacityRatio:
      for (int k = 1; k <= 20; ++k) v.push_back(k / 20.0);
      break;
    case Figure::BitsRatio:
      for (int k = 1; k <= 10; ++k) v.push_back(k);
      break;
  }
  return v;
}

ScenarioParams figure_point(Figure figure, const ScenarioParams& base, double axis_value,
                            double backhaul_bps, double gamma_db) {
  ScenarioParams p = base;
  p.backhaul_capacity = backhaul_bps;
  p.ul_sinr_threshold = db_to_linear(gamma_db);
  p.dl_sinr_threshold = db_to_linear(gamma_db);
  switch (figure) {
    case Figure::Threshold:
      break;
    case Figure::DensityRatio:
      p.small.density = axis_value * p.macro.density;
      p.user_density = std::max(p.user_density, p.macro.density + p.small.density);
      break;
    case Figure::CapacityRatio:
      p.small.cloudlet_capacity = axis_value * p.macro.cloudlet_capacity;
      break;
    case Figure::BitsRatio:
      p.output_bits = 1000.0;
      p.input_bits = axis_value * p.output_bits;
      break;
  }
  return p;
}

SweepResult run_figure(Figure figure, const ScenarioParams& base) {
  validate(base);
  const auto axis = figure_axis(figure);
  std::vector<double> backhauls{kLowBackhaul, kHighBackhaul};
  const double base_gamma = linear_to_db(base.ul_sinr_threshold);
  std::vector<double> gammas{base_gamma};
  if (figure == Figure::DensityRatio) {
    backhauls = {base.backhaul_capacity};
    gammas = {-3.0, -10.0};
  }

  std::vector<std::string> notes;
  notes.push_back("figure = " + std::to_string(static_cast<int>(figure)));
  notes.push_back(std::string("axis = ") + axis_name(figure) + " : " + list_text(axis));
  notes.push_back("backhaul_bps = " + list_text(backhauls));
  if (figure == Figure::Threshold) {
    notes.push_back("gamma_db: gamma_ul_db = gamma_dl_db = axis value");
  } else {
    notes.push_back("gamma_db = " + list_text(gammas) + " (applied to UL and DL)");
  }
  if (figure == Figure::DensityRatio) {
    notes.push_back("lambda_s = axis * lambda_m; lambda_u = max(base, lambda_m + lambda_s)");
  } else if (figure == Figure::CapacityRatio) {
    notes.push_back("f_s_hz = axis * f_m_hz");
  } else if (figure == Figure::BitsRatio) {
    notes.push_back("b_out_bits = 1000, b_in_bits = axis * 1000, cycles per request follow b_in_bits");
  }

  std::vector<GridTask> tasks;
  for (double x : axis) {
    for (double bh : backhauls) {
      if (figure == Figure::Threshold) {
        tasks.push_back({x, bh, x, figure_point(figure, base, x, bh, x)});
      } else {
        for (double g : gammas) tasks.push_back({x, bh, g, figure_point(figure, base, x, bh, g)});
      }
    }
  }
  return evaluate(axis_name(figure), base, std::move(tasks),
                  {std::begin(kSchemes), std::end(kSchemes)}, std::move(notes));
}

void check_sweep_spec(const SweepSpec& spec) {
  if (!is_config_key(spec.axis)) throw ConfigError(spec.axis, "sweep axis is not a configuration key");
  if (spec.axis == "backhaul_mode" || spec.axis == "dl_coverage_form") {
    throw ConfigError(spec.axis, "sweep axis must be numeric");
  }
  if (spec.values.empty()) throw ConfigError(spec.axis, "sweep values are empty");
  for (double v : spec.values) {
    if (!std::isfinite(v)) throw ConfigError(spec.axis, "sweep values must be finite");
  }
  if (spec.values.size() > 1) {
    const bool up = spec.values[1] > spec.values[0];
    for (std::size_t i = 1; i < spec.values.size(); ++i) {
      const bool ok = up ? spec.values[i] > spec.values[i - 1] : spec.values[i] < spec.values[i - 1];
      if (!ok) throw ConfigError(spec.axis, "sweep values must be strictly monotone");
    }
  }
  if (spec.schemes.empty()) throw ConfigError(spec.axis, "no schemes selected");
  for (const auto& [key, value] : spec.overrides) {
    if (!is_config_key(key)) throw ConfigError(key, "unknown configuration key");
  }
}

SweepResult run_sweep(const SweepSpec& spec, const ScenarioParams& base) {
  check_sweep_spec(spec);
  ScenarioParams resolved = base;
  for (const auto& [key, value] : spec.overrides) apply_setting(resolved, key, value);

  std::vector<std::string> notes;
  notes.push_back("axis = " + spec.axis + " : " + list_text(spec.values));
  for (const auto& [key, value] : spec.overrides) notes.push_back("override " + key + " = " + value);

  std::vector<GridTask> tasks;
  for (double x : spec.values) {
    ScenarioParams p = resolved;
    apply_setting(p, spec.axis, format_number(x));
    tasks.push_back({x, p.backhaul_capacity, linear_to_db(p.ul_sinr_threshold), p});
  }
  return evaluate(spec.axis, resolved, std::move(tasks), spec.schemes, std::move(notes));
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "# resolved base parameters\n";
  std::istringstream config(to_config_text(result.base));
  for (std::string line; std::getline(config, line);) {
    if (line.empty() || line[0] == '#') continue;
    out << "# " << line << "\n";
  }
  for (const auto& n : result.notes) out << "# " << n << "\n";
  out << "axis_value,backhaul_bps,gamma_db,scheme,ul_time_s,exec_time_s,backhaul_time_s,dl_time_s,total_s\n";
  for (const auto& r : result.rows) {
    const auto& l = r.latency;
    out << format_number(r.axis_value) << ',' << format_number(r.backhaul_bps) << ','
        << format_number(r.gamma_db) << ',' << to_string(l.scheme) << ',' << format_number(l.ul_time)
        << ',' << format_number(l.exec_time) << ',' << format_number(l.backhaul_time) << ','
        << format_number(l.dl_time) << ',' << format_number(l.total) << '\n';
  }
}

StabilityFrontier stability_frontier(const ScenarioParams& base, const std::string& axis,
                                     const std::vector<double>& values, Scheme scheme) {
  SweepSpec spec{axis, values, {scheme}, {}};
  check_sweep_spec(spec);
  StabilityFrontier f;
  for (double x : values) {
    ScenarioParams p = base;
    apply_setting(p, axis, format_number(x));
    validate(p);
    std::optional<Tier> saturated;
    for (auto t : kTiers) {
      if (!(p.tier(t).density > 0.0)) continue;
      QueueParams q;
      switch (scheme) {
        case Scheme::CoupledAccess: q = coupled_queue(t, p.ul_sinr_threshold, p); break;
        case Scheme::DecoupledULProc: q = decoupled_ul_queue(t, p.ul_sinr_threshold, p); break;
        case Scheme::DecoupledDLProc: q = decoupled_dl_queue(t, p.ul_sinr_threshold, p); break;
      }
      if (!q.stable()) {
        saturated = t;
        break;
      }
    }
    if (saturated) {
      f.first_unstable = x;
      f.tier = saturated;
      return f;
    }
    f.last_stable = x;
  }
  return f;
}

}  // namespace dmec
