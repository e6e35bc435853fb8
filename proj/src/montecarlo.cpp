#include "montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/random/exponential_distribution.hpp>

#include "parallel.hpp"
#include "rng.hpp"

namespace dmec::mc {

namespace {

constexpr std::uint64_t kChunk = 1024;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Substreams per trial. Each interfering field has its own stream so the
// draws of one field never shift another's.
constexpr std::uint64_t kAssociationStream = 0;
constexpr std::uint64_t kFadingStream = 1;
constexpr std::uint64_t kFieldStream = 2;     // + tier index
constexpr std::uint64_t kFarFieldStream = 4;  // + tier index

double exponential(Xoshiro256& rng) { return -std::log(rng.uniform_open0()); }

// Ziggurat sampler for the bulk interferer fading draws.
const boost::random::exponential_distribution<double> unit_exp(1.0);

std::uint64_t poisson(Xoshiro256& rng, double mean) {
  if (!(mean > 0.0)) return 0;
  return std::poisson_distribution<std::uint64_t>(mean)(rng);
}

// Distance from the origin to the nearest point of a PPP of the given density,
// or kInf when the tier is empty. Draws that fall outside the window are
// redrawn and counted.
double nearest_distance(Xoshiro256& rng, double density, double window, std::uint64_t& redraws) {
  if (!(density > 0.0)) return kInf;
  for (;;) {
    const double d = std::sqrt(exponential(rng) / (kPi * density));
    if (d <= window) return d;
    ++redraws;
  }
}

struct Nearest {
  double macro = kInf;
  double small = kInf;
};

Nearest sample_nearest(const ScenarioParams& p, Xoshiro256& rng, double window, std::uint64_t& redraws) {
  Nearest n;
  n.macro = nearest_distance(rng, p.macro.density, window, redraws);
  n.small = nearest_distance(rng, p.small.density, window, redraws);
  return n;
}

double path_gain(double d) {
  const double d2 = d * d;
  return 1.0 / (d2 * d2);
}

Tier max_power_tier(const ScenarioParams& p, const Nearest& n) {
  if (n.small == kInf) return Tier::Macro;
  return p.macro.tx_power * path_gain(n.macro) >= p.small.tx_power * path_gain(n.small) ? Tier::Macro
                                                                                         : Tier::Small;
}

Tier nearest_tier(const Nearest& n) { return n.macro <= n.small ? Tier::Macro : Tier::Small; }

// Expected number of interferers generated in radius order before switching
// to uniform annulus sampling for the far field.
constexpr double kOrderedInterferers = 256.0;

// Sum of fading * r^-4 over a PPP on the annulus inner < r <= outer. The near
// part is generated outward in radius order from `near`, so enlarging the
// window leaves it unchanged; the far part, whose share of the sum is small,
// comes from `far`.
double annulus_interference(Xoshiro256& near, Xoshiro256& far, double density, double inner,
                            double outer) {
  if (!(outer > inner) || !(density > 0.0)) return 0.0;
  const double step = 1.0 / (kPi * density);
  const double limit = outer * outer;
  const double split = std::min(limit, inner * inner + kOrderedInterferers * step);
  double r2 = inner * inner;
  double sum = 0.0;
  for (;;) {
    r2 += step * unit_exp(near);
    if (r2 > split) break;
    sum += unit_exp(near) / (r2 * r2);
  }
  if (limit > split) {
    const double span = limit - split;
    const std::uint64_t n = poisson(far, density * kPi * span);
    for (std::uint64_t i = 0; i < n; ++i) {
      const double u2 = split + span * far.uniform();
      sum += unit_exp(far) / (u2 * u2);
    }
  }
  return sum;
}

struct CoverageChunk {
  std::uint64_t accepted[2] = {};
  std::vector<std::uint64_t> covered[2];
  std::uint64_t far = 0;
};

EmpiricalCoverage coverage_impl(const ScenarioParams& p, Policy policy, Link link,
                                std::span<const double> gammas, std::uint64_t trials,
                                std::uint64_t seed, double window, const Tier* only) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  const std::size_t ng = gammas.size();
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<CoverageChunk> parts(chunks);

  parallel_for(chunks, [&](std::size_t c) {
    auto& part = parts[c];
    part.covered[0].assign(ng, 0);
    part.covered[1].assign(ng, 0);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(trials, begin + kChunk);
    for (std::uint64_t t = begin; t < end; ++t) {
      auto assoc = stream(seed, t, kAssociationStream);
      std::uint64_t redraws = 0;
      const Nearest near = sample_nearest(p, assoc, window, redraws);

      Tier tier;
      if (link == Link::Uplink && policy == Policy::Decoupled) {
        tier = nearest_tier(near);
      } else {
        tier = max_power_tier(p, near);
      }
      if (only != nullptr && tier != *only) continue;
      const double x = tier == Tier::Macro ? near.macro : near.small;
      if (x > window / 2) ++part.far;

      auto fade = stream(seed, t, kFadingStream);
      const double serving_fading = exponential(fade);
      double signal = 0.0;
      double interference = 0.0;
      if (link == Link::Uplink) {
        const double density = p.macro.density + p.small.density;
        signal = p.user_tx_power * serving_fading * path_gain(x);
        auto field = stream(seed, t, kFieldStream);
        auto far_field = stream(seed, t, kFarFieldStream);
        interference = p.user_tx_power * annulus_interference(field, far_field, density, x, window);
      } else {
        signal = p.tier(tier).tx_power * serving_fading * path_gain(x);
        for (auto j : kTiers) {
          const double nearest_j = j == Tier::Macro ? near.macro : near.small;
          if (nearest_j == kInf) continue;
          const auto j_index = static_cast<std::uint64_t>(j);
          auto field = stream(seed, t, kFieldStream + j_index);
          auto far_field = stream(seed, t, kFarFieldStream + j_index);
          double sum = annulus_interference(field, far_field, p.tier(j).density, nearest_j, window);
          if (j != tier) sum += exponential(fade) * path_gain(nearest_j);
          interference += p.tier(j).tx_power * sum;
        }
      }
      const double sinr = signal / (interference + p.noise_power);
      const int ti = static_cast<int>(tier);
      ++part.accepted[ti];
      for (std::size_t g = 0; g < ng; ++g) {
        if (sinr >= gammas[g]) ++part.covered[ti][g];
      }
    }
  });

  std::uint64_t accepted[2] = {};
  std::vector<std::uint64_t> covered[2] = {std::vector<std::uint64_t>(ng, 0),
                                           std::vector<std::uint64_t>(ng, 0)};
  std::uint64_t far = 0;
  for (const auto& part : parts) {
    far += part.far;
    for (int ti = 0; ti < 2; ++ti) {
      accepted[ti] += part.accepted[ti];
      for (std::size_t g = 0; g < ng; ++g) covered[ti][g] += part.covered[ti][g];
    }
  }
  const std::uint64_t served = accepted[0] + accepted[1];
  if (served > 0 && static_cast<double>(far) > 1e-3 * static_cast<double>(served)) {
    std::ostringstream msg;
    msg << "window radius " << window << " m is too small: " << far << " of " << served
        << " trials were served from beyond half the window";
    throw WindowTooSmall(msg.str());
  }

  EmpiricalCoverage out;
  out.gammas.assign(gammas.begin(), gammas.end());
  out.trials = trials;
  out.far_serving = far;
  for (std::size_t g = 0; g < ng; ++g) {
    out.macro.push_back(bernoulli_estimate(covered[0][g], accepted[0]));
    out.small.push_back(bernoulli_estimate(covered[1][g], accepted[1]));
  }
  return out;
}

// Uniform bucket grid for nearest-neighbour queries inside the window.
class NearestGrid {
 public:
  NearestGrid(const std::vector<Point>& points, double half_extent, double cell)
      : points_(points), origin_(-half_extent), cell_(cell) {
    side_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2 * half_extent / cell)));
    start_.assign(side_ * side_ + 1, 0);
    for (const auto& pt : points_) ++start_[index(cell_of(pt.x), cell_of(pt.y)) + 1];
    for (std::size_t i = 1; i < start_.size(); ++i) start_[i] += start_[i - 1];
    order_.resize(points_.size());
    auto fill = start_;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      order_[fill[index(cell_of(points_[i].x), cell_of(points_[i].y))]++] = i;
    }
  }

  // (index, squared distance); index == npos when there are no points.
  std::pair<std::size_t, double> nearest(Point q) const {
    std::size_t best = npos;
    double best_d2 = kInf;
    if (points_.empty()) return {best, best_d2};
    const auto cx = static_cast<std::ptrdiff_t>(cell_of(q.x));
    const auto cy = static_cast<std::ptrdiff_t>(cell_of(q.y));
    const auto side = static_cast<std::ptrdiff_t>(side_);
    for (std::ptrdiff_t ring = 0; ring <= side; ++ring) {
      for (std::ptrdiff_t gy = cy - ring; gy <= cy + ring; ++gy) {
        if (gy < 0 || gy >= side) continue;
        const bool edge_row = gy == cy - ring || gy == cy + ring;
        const std::ptrdiff_t step = edge_row ? 1 : 2 * ring;
        for (std::ptrdiff_t gx = cx - ring; gx <= cx + ring; gx += std::max<std::ptrdiff_t>(step, 1)) {
          if (gx < 0 || gx >= side) continue;
          const auto cell = index(static_cast<std::size_t>(gx), static_cast<std::size_t>(gy));
          for (std::size_t k = start_[cell]; k < start_[cell + 1]; ++k) {
            const auto& pt = points_[order_[k]];
            const double dx = pt.x - q.x;
            const double dy = pt.y - q.y;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best_d2) {
              best_d2 = d2;
              best = order_[k];
            }
          }
        }
      }
      const double cleared = static_cast<double>(ring) * cell_;
      if (best != npos && best_d2 <= cleared * cleared) break;
    }
    return {best, best_d2};
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t cell_of(double v) const {
    const double c = std::floor((v - origin_) / cell_);
    return static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(side_ - 1)));
  }
  std::size_t index(std::size_t gx, std::size_t gy) const { return gy * side_ + gx; }

  const std::vector<Point>& points_;
  double origin_;
  double cell_;
  std::size_t side_ = 1;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> order_;
};

void fill_disc(std::vector<Point>& out, Xoshiro256& rng, double density, double radius) {
  const std::uint64_t n = poisson(rng, density * kPi * radius * radius);
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double r = radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * kPi * rng.uniform();
    out.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
}

McEstimate sample_mean(const std::vector<double>& xs) {
  McEstimate e;
  e.trials = xs.size();
  if (xs.empty()) return e;
  double sum = 0.0;
  for (double v : xs) sum += v;
  e.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double v : xs) ss += (v - e.mean) * (v - e.mean);
    e.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return e;
}

}  // namespace

McEstimate bernoulli_estimate(std::uint64_t successes, std::uint64_t trials) {
  McEstimate e;
  e.trials = trials;
  if (trials == 0) return e;
  const double n = static_cast<double>(trials);
  e.mean = static_cast<double>(successes) / n;
  if (trials > 1) {
    const double variance = e.mean * (1.0 - e.mean) * n / (n - 1.0);
    e.std_error = std::sqrt(variance / n);
  }
  return e;
}

McRealization sample_realization(const ScenarioParams& params, double window_radius,
                                 std::uint64_t seed) {
  if (!(window_radius > 0.0)) throw std::invalid_argument("window radius must be positive");
  McRealization r;
  r.window_radius = window_radius;
  r.seed = seed;
  auto rng = stream(seed, 0, 0);
  fill_disc(r.macro_points, rng, params.macro.density, window_radius);
  fill_disc(r.small_points, rng, params.small.density, window_radius);
  fill_disc(r.user_points, rng, params.user_density, window_radius);
  return r;
}

McEstimate AssociationFrequencies::decoupled(Tier ul, Tier dl) const {
  return bernoulli_estimate(decoupled_counts[static_cast<int>(ul)][static_cast<int>(dl)], trials);
}

McEstimate AssociationFrequencies::coupled(Tier tier) const {
  return bernoulli_estimate(coupled_counts[static_cast<int>(tier)], trials);
}

AssociationFrequencies empirical_association(const ScenarioParams& params, std::uint64_t trials,
                                             std::uint64_t seed, double window_radius) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<AssociationFrequencies> parts(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    auto& part = parts[c];
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(trials, begin + kChunk);
    for (std::uint64_t t = begin; t < end; ++t) {
      auto rng = stream(seed, t, kAssociationStream);
      const Nearest near = sample_nearest(params, rng, window_radius, part.resampled);
      const auto dl = max_power_tier(params, near);
      const auto ul = nearest_tier(near);
      ++part.decoupled_counts[static_cast<int>(ul)][static_cast<int>(dl)];
      ++part.coupled_counts[static_cast<int>(dl)];
      ++part.trials;
    }
  });
  AssociationFrequencies out;
  for (const auto& part : parts) {
    out.trials += part.trials;
    out.resampled += part.resampled;
    for (int i = 0; i < 2; ++i) {
      out.coupled_counts[i] += part.coupled_counts[i];
      for (int j = 0; j < 2; ++j) out.decoupled_counts[i][j] += part.decoupled_counts[i][j];
    }
  }
  return out;
}

EmpiricalCoverage empirical_coverage_sweep(const ScenarioParams& params, Policy policy, Link link,
                                           std::span<const double> gammas, std::uint64_t trials,
                                           std::uint64_t seed, double window_radius) {
  return coverage_impl(params, policy, link, gammas, trials, seed, window_radius, nullptr);
}

McEstimate empirical_coverage(const ScenarioParams& params, Policy policy, Link link, Tier tier,
                              double gamma, std::uint64_t trials, std::uint64_t seed,
                              double window_radius) {
  const double g[] = {gamma};
  return coverage_impl(params, policy, link, g, trials, seed, window_radius, &tier).estimate(tier, 0);
}

EmpiricalLoads empirical_mean_loads(const ScenarioParams& params, std::uint64_t deployments,
                                    std::uint64_t seed, double window_radius) {
  if (deployments == 0) throw std::invalid_argument("deployments must be at least 1");
  // per_deployment[d][rule][tier]; rule 0 = max DL power, rule 1 = nearest BS.
  std::vector<std::array<std::array<double, 2>, 2>> per_deployment(deployments);
  const double tagged_r2 = window_radius * window_radius / 4.0;

  parallel_for(deployments, [&](std::size_t d) {
    const auto r = sample_realization(params, window_radius, stream(seed, d, 2)());
    const std::vector<Point>* sites[2] = {&r.macro_points, &r.small_points};
    std::vector<std::uint32_t> counts[2][2];  // [rule][tier] per BS
    NearestGrid grid_macro(r.macro_points, window_radius,
                           std::max(1.0, 1.0 / std::sqrt(std::max(params.macro.density, 1e-300))));
    NearestGrid grid_small(r.small_points, window_radius,
                           std::max(1.0, 1.0 / std::sqrt(std::max(params.small.density, 1e-300))));
    for (int rule = 0; rule < 2; ++rule) {
      counts[rule][0].assign(r.macro_points.size(), 0);
      counts[rule][1].assign(r.small_points.size(), 0);
    }
    for (const auto& u : r.user_points) {
      const auto [im, dm2] = grid_macro.nearest(u);
      const auto [is, ds2] = grid_small.nearest(u);
      const bool has_m = im != NearestGrid::npos;
      const bool has_s = is != NearestGrid::npos;
      if (!has_m && !has_s) continue;
      // Max DL power: compare P_k / d_k^4 through squared distances.
      bool power_macro = has_m;
      if (has_m && has_s) {
        power_macro = params.macro.tx_power * ds2 * ds2 >= params.small.tx_power * dm2 * dm2;
      }
      bool nearest_macro = has_m && (!has_s || dm2 <= ds2);
      if (power_macro) ++counts[0][0][im]; else ++counts[0][1][is];
      if (nearest_macro) ++counts[1][0][im]; else ++counts[1][1][is];
    }
    for (int rule = 0; rule < 2; ++rule) {
      for (int tier = 0; tier < 2; ++tier) {
        std::uint64_t users = 0;
        std::uint64_t tagged = 0;
        const auto& pts = *sites[tier];
        for (std::size_t i = 0; i < pts.size(); ++i) {
          if (pts[i].x * pts[i].x + pts[i].y * pts[i].y > tagged_r2) continue;
          ++tagged;
          users += counts[rule][tier][i];
        }
        per_deployment[d][rule][tier] =
            tagged > 0 ? static_cast<double>(users) / static_cast<double>(tagged) : std::numeric_limits<double>::quiet_NaN();
      }
    }
  });

  EmpiricalLoads out;
  out.deployments = deployments;
  for (int rule = 0; rule < 2; ++rule) {
    for (int tier = 0; tier < 2; ++tier) {
      std::vector<double> xs;
      xs.reserve(deployments);
      for (const auto& v : per_deployment) {
        if (!std::isnan(v[rule][tier])) xs.push_back(v[rule][tier]);
      }
      const auto e = sample_mean(xs);
      if (rule == 0) {
        // Coupled association is max-power on both links; so is decoupled DL.
        out.load[0][0][tier] = e;
        out.load[0][1][tier] = e;
        out.load[1][1][tier] = e;
      } else {
        out.load[1][0][tier] = e;
      }
    }
  }
  return out;
}

McEstimate empirical_mean_load(const ScenarioParams& params, Policy policy, Link link, Tier tier,
                               std::uint64_t deployments, std::uint64_t seed, double window_radius) {
  return empirical_mean_loads(params, deployments, seed, window_radius).of(policy, link, tier);
}

}  // namespace dmec::mc
