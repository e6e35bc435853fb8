#include <cmath>
#include <numbers>

#include "association.hpp"
#include "coverage.hpp"
#include "doctest.h"
#include "montecarlo.hpp"
#include "rng.hpp"
#include "units.hpp"

using namespace dmec;
using namespace dmec::mc;

TEST_SUITE("montecarlo") {
  TEST_CASE("streams are reproducible and distinct") {
    auto a = stream(7, 3, 0);
    auto b = stream(7, 3, 0);
    auto c = stream(7, 3, 1);
    auto d = stream(7, 4, 0);
    const auto first = a();
    CHECK(first == b());
    CHECK(first != c());
    CHECK(first != d());
    Xoshiro256 g(1);
    for (int i = 0; i < 1000; ++i) {
      const double u = g.uniform_open0();
      CHECK(u > 0.0);
      CHECK(u <= 1.0);
    }
  }

  TEST_CASE("realization counts are Poisson with mean density x area") {
    auto p = default_scenario();
    p.small.density = 0;
    p.user_density = 0;
    const double mean = p.macro.density * std::numbers::pi * 20e3 * 20e3;
    CHECK(mean == doctest::Approx(1256.637).epsilon(1e-6));
    double chi2 = 0;
    const int seeds = 1000;
    for (int s = 0; s < seeds; ++s) {
      const auto r = sample_realization(p, 20e3, s);
      const double n = static_cast<double>(r.macro_points.size());
      chi2 += (n - mean) * (n - mean) / mean;
      CHECK(r.small_points.empty());
      CHECK(r.user_points.empty());
      for (const auto& pt : r.macro_points) REQUIRE(pt.x * pt.x + pt.y * pt.y <= 20e3 * 20e3);
    }
    // chi2 ~ chi-square(1000): mean 1000, sd ~44.7. Accept within 4 sd.
    CHECK(chi2 > 1000 - 4 * 44.7);
    CHECK(chi2 < 1000 + 4 * 44.7);
  }

  TEST_CASE("same seed gives the same realization") {
    const auto p = default_scenario();
    const auto a = sample_realization(p, 5e3, 42);
    const auto b = sample_realization(p, 5e3, 42);
    REQUIRE(a.small_points.size() == b.small_points.size());
    for (std::size_t i = 0; i < a.small_points.size(); ++i) {
      CHECK(a.small_points[i].x == b.small_points[i].x);
      CHECK(a.small_points[i].y == b.small_points[i].y);
    }
    CHECK(a.seed == 42);
    CHECK_THROWS_AS(sample_realization(p, 0.0, 1), std::invalid_argument);
  }

  TEST_CASE("association frequencies") {
    const auto p = default_scenario();
    const auto f = empirical_association(p, 100000, 3);
    CHECK(f.trials == 100000);
    std::uint64_t total = 0;
    for (auto& row : f.decoupled_counts) {
      for (auto n : row) total += n;
    }
    CHECK(total == f.trials);
    CHECK(f.decoupled_counts[0][1] == 0);
    CHECK(f.resampled * 1000 < f.trials);
    const auto d = decoupled_probs(p);
    for (auto ul : kTiers) {
      for (auto dl : kTiers) {
        const auto e = f.decoupled(ul, dl);
        if (e.std_error == 0) {
          CHECK(e.mean == d.of(ul, dl));
        } else {
          CHECK(std::abs(e.mean - d.of(ul, dl)) <= 3 * e.std_error);
        }
      }
    }
    CHECK(std::abs(f.coupled(Tier::Small).mean - coupled_probs(p).ss) <= 3 * f.coupled(Tier::Small).std_error);
  }

  TEST_CASE("equal powers give identical tallies") {
    auto p = default_scenario();
    p.small.tx_power = p.macro.tx_power;
    const auto f = empirical_association(p, 20000, 9);
    CHECK(f.decoupled_counts[1][0] == 0);
    CHECK(f.decoupled_counts[0][0] == f.coupled_counts[0]);
    CHECK(f.decoupled_counts[1][1] == f.coupled_counts[1]);
  }

  TEST_CASE("estimates are bit-reproducible") {
    const auto p = default_scenario();
    const double g[] = {0.1, 1.0};
    const auto a = empirical_coverage_sweep(p, Policy::Decoupled, Link::Uplink, g, 3000, 5);
    const auto b = empirical_coverage_sweep(p, Policy::Decoupled, Link::Uplink, g, 3000, 5);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(a.small[i].mean == b.small[i].mean);
      CHECK(a.macro[i].mean == b.macro[i].mean);
    }
    const auto one = empirical_coverage(p, Policy::Decoupled, Link::Uplink, Tier::Small, 1.0, 3000, 5);
    CHECK(one.mean == a.small[1].mean);
    CHECK(one.trials == a.small[1].trials);
  }

  TEST_CASE("tiny threshold is always covered") {
    const auto p = default_scenario();
    const double g[] = {1e-9};
    const auto c = empirical_coverage_sweep(p, Policy::Coupled, Link::Downlink, g, 2000, 1);
    CHECK(c.macro[0].mean == 1.0);
    CHECK(c.small[0].mean == 1.0);
    CHECK(c.macro[0].trials + c.small[0].trials == 2000);
  }

  TEST_CASE("standard error shrinks like one over root trials") {
    const auto p = default_scenario();
    const double g[] = {1.0};
    const auto a = empirical_coverage_sweep(p, Policy::Decoupled, Link::Uplink, g, 4000, 11);
    const auto b = empirical_coverage_sweep(p, Policy::Decoupled, Link::Uplink, g, 8000, 11);
    const double ratio = a.small[0].std_error / b.small[0].std_error;
    CHECK(ratio == doctest::Approx(std::sqrt(2.0)).epsilon(0.10));
  }

  TEST_CASE("coverage agrees with quadrature") {
    const auto p = default_scenario();
    const double g[] = {0.1};
    const auto ul = empirical_coverage_sweep(p, Policy::Coupled, Link::Uplink, g, 20000, 21);
    const auto dl = empirical_coverage_sweep(p, Policy::Coupled, Link::Downlink, g, 20000, 22);
    for (auto t : kTiers) {
      CHECK(std::abs(ul.estimate(t, 0).mean - ul_coverage(Policy::Coupled, t, 0.1, p).probability) < 0.02);
      CHECK(std::abs(dl.estimate(t, 0).mean -
                     dl_coverage(Policy::Coupled, t, 0.1, p, DlCoverageForm::InterferenceLimited).probability) < 0.02);
    }
  }

  TEST_CASE("doubling the window moves no estimate by two standard errors") {
    const auto p = default_scenario();
    const double g[] = {db_to_linear(-10), db_to_linear(0)};
    for (auto link : {Link::Uplink, Link::Downlink}) {
      const auto a = empirical_coverage_sweep(p, Policy::Coupled, link, g, 3000, 13, kDefaultWindowRadius);
      const auto b = empirical_coverage_sweep(p, Policy::Coupled, link, g, 3000, 13, 2 * kDefaultWindowRadius);
      for (auto t : kTiers) {
        for (std::size_t i = 0; i < 2; ++i) {
          CHECK(std::abs(a.estimate(t, i).mean - b.estimate(t, i).mean) < 2 * a.estimate(t, i).std_error);
        }
      }
    }
    const auto fa = empirical_association(p, 20000, 4, kDefaultWindowRadius);
    const auto fb = empirical_association(p, 20000, 4, 2 * kDefaultWindowRadius);
    CHECK(std::abs(fa.coupled(Tier::Small).mean - fb.coupled(Tier::Small).mean) <
          2 * fa.coupled(Tier::Small).std_error);
  }

  TEST_CASE("too small a window is reported") {
    const auto p = default_scenario();
    const double g[] = {0.1};
    CHECK_THROWS_AS(empirical_coverage_sweep(p, Policy::Coupled, Link::Uplink, g, 2000, 1, 300.0), WindowTooSmall);
  }

  TEST_CASE("mean loads") {
    const auto p = default_scenario();
    const auto l = empirical_mean_loads(p, 40, 17);
    CHECK(l.deployments == 40);
    for (auto policy : {Policy::Coupled, Policy::Decoupled}) {
      for (auto link : {Link::Uplink, Link::Downlink}) {
        double users = 0, var = 0;
        for (auto t : kTiers) {
          const auto e = l.of(policy, link, t);
          CHECK(std::abs(e.mean - mean_load(policy, link, t, p)) <= 3 * e.std_error);
          users += e.mean * p.tier(t).density;
          var += std::pow(e.std_error * p.tier(t).density, 2);
        }
        // Conservation of users, within statistical error.
        CHECK(std::abs(users - p.user_density) <= 4 * std::sqrt(var));
      }
    }
    const auto small = empirical_mean_load(p, Policy::Coupled, Link::Uplink, Tier::Small, 40, 17);
    CHECK(small.mean == l.of(Policy::Coupled, Link::Uplink, Tier::Small).mean);
    auto empty = p;
    empty.user_density = 0;
    const auto z = empirical_mean_loads(empty, 5, 1);
    CHECK(z.of(Policy::Coupled, Link::Uplink, Tier::Small).mean == 0.0);
    CHECK(z.of(Policy::Decoupled, Link::Uplink, Tier::Macro).mean == 0.0);
  }

  TEST_CASE("bernoulli estimate") {
    const auto e = bernoulli_estimate(30, 100);
    CHECK(e.mean == doctest::Approx(0.3));
    CHECK(e.std_error == doctest::Approx(std::sqrt(0.3 * 0.7 / 99)));
    CHECK(bernoulli_estimate(0, 0).trials == 0);
  }
}
