#pragma once

// Straight-line reference model for the tests. It reads ScenarioParams fields
// but calls nothing else in the library: association, coverage (composite
// Simpson on a fixed truncated grid) and latency are all recomputed here.

#include <cmath>
#include <numbers>

#include "scenario.hpp"

namespace oracle {

using dmec::ScenarioParams;

struct Averages {
  double coupled = 0.0;
  double decoupled_ul = 0.0;
  double decoupled_dl = 0.0;
};

template <class F>
double simpson(F f, double upper, int intervals = 6000) {
  const double h = upper / intervals;
  double sum = f(0.0) + f(upper);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return sum * h / 3.0;
}

inline double psi(double g) { return std::sqrt(g) * std::atan(std::sqrt(g)); }

struct Model {
  const ScenarioParams& p;
  double lm, ls, lu, pm, ps;

  explicit Model(const ScenarioParams& params)
      : p(params), lm(params.macro.density), ls(params.small.density), lu(params.user_density),
        pm(params.macro.tx_power), ps(params.small.tx_power) {}

  double a_ss() const { return ls / (ls + std::sqrt(pm / ps) * lm); }
  double a_mm() const { return 1.0 - a_ss(); }
  double a_ul_m() const { return lm / (lm + ls); }
  double a_sm() const { return ls / (lm + ls) - a_ss(); }

  // Max-power serving-distance exponent for tier k (0 macro, 1 small).
  double c_max_power(int k) const { return k == 0 ? lm + ls * std::sqrt(ps / pm) : ls + lm * std::sqrt(pm / ps); }

  double lam(int k) const { return k == 0 ? lm : ls; }
  double power(int k) const { return k == 0 ? pm : ps; }

  double ul_cov(bool decoupled, int k, double g) const {
    const double c = decoupled ? lm + ls : c_max_power(k);
    const double a = decoupled ? lam(k) / (lm + ls) : (k == 0 ? a_mm() : a_ss());
    const double noise = g * p.noise_power / p.user_tx_power;
    const double intf = std::numbers::pi * (lm + ls) * psi(g);
    const double lk = lam(k);
    auto f = [&](double x) {
      return 2 * std::numbers::pi * lk / a * x * std::exp(-c * std::numbers::pi * x * x) *
             std::exp(-noise * x * x * x * x) * std::exp(-intf * x * x);
    };
    return simpson(f, 12.0 / std::sqrt(std::numbers::pi * c));
  }

  double dl_cov(int k, double g, bool interference) const {
    const double c = c_max_power(k);
    const double a = k == 0 ? a_mm() : a_ss();
    const double noise = g * p.noise_power / power(k);
    const double ps_ = psi(g);
    const double lk = lam(k);
    auto f = [&](double x) {
      const double x4 = x * x * x * x;
      const double body = interference ? std::exp(-noise * x4) * std::exp(-std::numbers::pi * c * ps_ * x * x)
                                       : std::exp(-noise * x4 * (1 + ps_));
      return 2 * std::numbers::pi * lk / a * x * std::exp(-c * std::numbers::pi * x * x) * body;
    };
    return simpson(f, 12.0 / std::sqrt(std::numbers::pi * c));
  }

  Averages averages() const {
    const double gu = p.ul_sinr_threshold;
    const double gd = p.dl_sinr_threshold;
    const bool intf = p.dl_coverage_form == dmec::DlCoverageForm::InterferenceLimited;
    const bool always = p.backhaul_mode == dmec::BackhaulMode::Always;
    const double bi = p.input_bits, bo = p.output_bits;
    const double v = p.cycles_per_input_bit * bi;
    const double lg = std::log2(1 + gu), lgd = std::log2(1 + gd);

    double n_c[2], r_ul_c[2], r_dl[2], mu[2];
    for (int k = 0; k < 2; ++k) {
      const double a = k == 0 ? a_mm() : a_ss();
      n_c[k] = lu * a / lam(k);
      r_ul_c[k] = p.ul_bandwidth / n_c[k] * lg * ul_cov(false, k, gu);
      r_dl[k] = p.dl_bandwidth / n_c[k] * lgd * dl_cov(k, gd, intf);
      mu[k] = (k == 0 ? p.macro.cloudlet_capacity : p.small.cloudlet_capacity) / v;
    }
    const double n_d = lu / (lm + ls);
    double r_ul_d[2];
    for (int k = 0; k < 2; ++k) r_ul_d[k] = p.ul_bandwidth / n_d * lg * ul_cov(true, k, gu);

    Averages out;
    for (int k = 0; k < 2; ++k) {
      const double w = k == 0 ? a_mm() : a_ss();
      const double tau = r_ul_c[k] * n_c[k] / bi;
      out.coupled += w * (bi / r_ul_c[k] + 1 / (mu[k] - tau) + bo / r_dl[k]);
    }
    // Decoupled cases: (ul, dl) = (M, M), (S, M), (S, S).
    const int ul_of[3] = {0, 1, 1};
    const int dl_of[3] = {0, 0, 1};
    const double weight[3] = {a_ul_m(), a_sm(), a_ss()};
    const double tau_dl_m = (r_ul_d[0] * n_d + r_ul_d[1] * (lu / ls) * a_sm()) / bi;
    const double tau_dl_s = r_ul_d[1] * (lu / ls) * a_ss() / bi;
    for (int c = 0; c < 3; ++c) {
      const int k = ul_of[c], l = dl_of[c];
      if (weight[c] == 0.0) continue;
      const bool crossed = k != l;
      const double bh_out = (crossed || always) ? bo / p.backhaul_capacity : 0.0;
      const double bh_in = (crossed || always) ? bi / p.backhaul_capacity : 0.0;
      const double common = bi / r_ul_d[k] + bo / r_dl[l];
      out.decoupled_ul += weight[c] * (common + 1 / (mu[k] - r_ul_d[k] * n_d / bi) + bh_out);
      out.decoupled_dl += weight[c] * (common + 1 / (mu[l] - (l == 0 ? tau_dl_m : tau_dl_s)) + bh_in);
    }
    return out;
  }
};

}  // namespace oracle
