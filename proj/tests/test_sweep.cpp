#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "report.hpp"
#include "svg_plot.hpp"
#include "sweep.hpp"
#include "units.hpp"
#include "validation.hpp"

using namespace dmec;

namespace {

std::string csv_of(const SweepResult& r) {
  std::ostringstream s;
  write_sweep_csv(s, r);
  return s.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

const SweepRow& row_at(const SweepResult& r, double axis, double backhaul, double gamma_db, Scheme s) {
  for (const auto& row : r.rows) {
    if (std::abs(row.axis_value - axis) < 1e-9 && row.backhaul_bps == backhaul &&
        std::abs(row.gamma_db - gamma_db) < 1e-9 && row.latency.scheme == s) {
      return row;
    }
  }
  FAIL("grid point not found");
  return r.rows.front();
}

}  // namespace

TEST_SUITE("sweep") {
  TEST_CASE("figure grids") {
    CHECK(figure_axis(Figure::Threshold).size() == 31);
    CHECK(figure_axis(Figure::Threshold).front() == -20);
    CHECK(figure_axis(Figure::Threshold).back() == 10);
    const auto density = figure_axis(Figure::DensityRatio);
    CHECK(density.front() == doctest::Approx(1.0));
    CHECK(density.back() == doctest::Approx(100.0));
    CHECK(std::count(density.begin(), density.end(), 15.0) == 1);
    const auto capacity = figure_axis(Figure::CapacityRatio);
    CHECK(capacity.front() == doctest::Approx(0.05));
    CHECK(capacity.back() == 1.0);
    CHECK(capacity[2] == doctest::Approx(0.15));
    CHECK(figure_axis(Figure::BitsRatio).size() == 10);
    CHECK_THROWS_AS(figure_from_number(6), std::invalid_argument);
    CHECK(figure_from_number(4) == Figure::CapacityRatio);
  }

  TEST_CASE("figure points apply the axis") {
    const auto base = default_scenario();
    const auto d = figure_point(Figure::DensityRatio, base, 100, 1e7, -3);
    CHECK(d.small.density == doctest::Approx(1e-4));
    CHECK(d.user_density == doctest::Approx(1.01e-4));
    CHECK(d.ul_sinr_threshold == doctest::Approx(db_to_linear(-3)));
    CHECK(figure_point(Figure::DensityRatio, base, 2, 1e7, -3).user_density == base.user_density);
    const auto b = figure_point(Figure::BitsRatio, base, 4, 1e4, -10);
    CHECK(b.input_bits == 4000);
    CHECK(b.output_bits == 1000);
    CHECK(b.cycles_per_request() == 4000 * base.cycles_per_input_bit);
    CHECK(figure_point(Figure::CapacityRatio, base, 0.15, 1e7, -10).small.cloudlet_capacity ==
          doctest::Approx(0.15 * 4.5e9));
  }

  TEST_CASE("figure 2 rows and decomposition") {
    const auto r = run_figure(Figure::Threshold, default_scenario());
    CHECK(r.rows.size() == 31 * 2 * 3);
    for (const auto& row : r.rows) {
      const auto& l = row.latency;
      CHECK(std::abs(l.total - (l.ul_time + l.exec_time + l.backhaul_time + l.dl_time)) <= 1e-12 * l.total);
      CHECK(row.gamma_db == row.axis_value);
    }
    const auto& c = row_at(r, -15, 1e7, -15, Scheme::CoupledAccess);
    CHECK(row_at(r, -15, 1e7, -15, Scheme::DecoupledULProc).latency.total < c.latency.total);
    CHECK(row_at(r, -15, 1e7, -15, Scheme::DecoupledDLProc).latency.total < c.latency.total);
  }

  TEST_CASE("CSV is deterministic and self-describing") {
    const auto a = csv_of(run_figure(Figure::BitsRatio, default_scenario()));
    const auto b = csv_of(run_figure(Figure::BitsRatio, default_scenario()));
    CHECK(a == b);
    CHECK(a.find("# backhaul_mode = cross_tier_only") != std::string::npos);
    CHECK(a.find("# dl_coverage_form = noise_scaled") != std::string::npos);
    CHECK(a.find("# figure = 5") != std::string::npos);
    CHECK(a.find("axis_value,backhaul_bps,gamma_db,scheme,ul_time_s,exec_time_s,backhaul_time_s,dl_time_s,total_s\n") !=
          std::string::npos);
  }

  TEST_CASE("unstable grid points become inf with a note") {
    auto base = default_scenario();
    SweepSpec spec;
    spec.axis = "f_s_hz";
    spec.values = {1e3, 1e9};
    const auto r = run_sweep(spec, base);
    CHECK(r.rows.size() == 6);
    CHECK(std::isinf(r.rows[0].latency.exec_time));
    CHECK(std::isfinite(r.rows[5].latency.total));
    const auto text = csv_of(r);
    CHECK(count(text, ",inf,") >= 3);
    CHECK(text.find("# unstable cloudlet queue") != std::string::npos);
  }

  TEST_CASE("custom sweep spec checks") {
    const auto base = default_scenario();
    CHECK_THROWS_AS(run_sweep({"not_a_key", {1, 2}}, base), ConfigError);
    CHECK_THROWS_AS(run_sweep({"c_bh_bps", {}}, base), ConfigError);
    CHECK_THROWS_AS(run_sweep({"c_bh_bps", {1e4, 1e4}}, base), ConfigError);
    CHECK_THROWS_AS(run_sweep({"c_bh_bps", {1e4, 1e6, 1e5}}, base), ConfigError);
    CHECK_THROWS_AS(run_sweep({"c_bh_bps", {1e4, INFINITY}}, base), ConfigError);
    CHECK_THROWS_AS(run_sweep({"backhaul_mode", {1}}, base), ConfigError);
    CHECK_NOTHROW(run_sweep({"c_bh_bps", {1e6, 1e5, 1e4}}, base));
    SweepSpec bad_point{"lambda_u_per_km2", {25, 5}};
    try {
      run_sweep(bad_point, base);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("grid point") != std::string::npos);
    }
    SweepSpec with_override{"gamma_ul_db", {-10, -5}, {Scheme::CoupledAccess}, {{"p_s_dbm", "24"}}};
    const auto r = run_sweep(with_override, base);
    CHECK(r.rows.size() == 2);
    CHECK(r.base.small.tx_power == doctest::Approx(dbm_to_watts(24)));
  }

  TEST_CASE("stability frontier") {
    auto base = default_scenario();
    const std::vector<double> widths{1e6, 1e7, 1e8, 1e9, 1e10};
    const auto f = stability_frontier(base, "w_ul_hz", widths, Scheme::CoupledAccess);
    REQUIRE(f.first_unstable.has_value());
    REQUIRE(f.last_stable.has_value());
    CHECK(*f.last_stable < *f.first_unstable);
    const auto none = stability_frontier(base, "w_ul_hz", {1e5, 1e6}, Scheme::CoupledAccess);
    CHECK_FALSE(none.first_unstable.has_value());
  }
}

TEST_SUITE("plot") {
  TEST_CASE("figure 2 CSV gives six polylines") {
    std::istringstream in(csv_of(run_figure(Figure::Threshold, default_scenario())));
    const auto data = read_sweep_csv(in);
    CHECK(data.series.size() == 6);
    CHECK(data.x_label == "gamma_db");
    std::ostringstream svg;
    const auto stats = write_svg(svg, data);
    CHECK(stats.polylines == 6);
    CHECK(stats.markers == 0);
    CHECK(svg.str().find("Decoupled Access (UL Cloudlet Proc.)") != std::string::npos);
    CHECK(svg.str().find("Coupled Access") != std::string::npos);
  }

  TEST_CASE("figure 3 splits series by threshold") {
    std::istringstream in(csv_of(run_figure(Figure::DensityRatio, default_scenario())));
    CHECK(read_sweep_csv(in).series.size() == 6);
  }

  TEST_CASE("single row gives a marker") {
    std::istringstream in(
        "axis_value,backhaul_bps,scheme,ul_time_s,exec_time_s,backhaul_time_s,dl_time_s,total_s\n"
        "1,10000,coupled,0.1,0.01,0,0.02,0.13\n");
    std::ostringstream svg;
    const auto stats = write_svg(svg, read_sweep_csv(in));
    CHECK(stats.polylines == 0);
    CHECK(stats.markers == 1);
  }

  TEST_CASE("inf breaks the line") {
    std::istringstream in(
        "axis_value,backhaul_bps,scheme,total_s\n"
        "1,10000,coupled,0.1\n2,10000,coupled,0.2\n3,10000,coupled,inf\n4,10000,coupled,0.3\n5,10000,coupled,0.4\n");
    std::ostringstream svg;
    const auto stats = write_svg(svg, read_sweep_csv(in));
    CHECK(stats.polylines == 2);
  }

  TEST_CASE("malformed CSV") {
    std::istringstream missing("axis_value,backhaul_bps,scheme\n1,2,coupled\n");
    try {
      read_sweep_csv(missing);
      FAIL("expected CsvFormatError");
    } catch (const CsvFormatError& e) {
      CHECK(std::string(e.what()).find("total_s") != std::string::npos);
    }
    std::istringstream ragged("axis_value,backhaul_bps,scheme,total_s\n1,2,coupled\n");
    CHECK_THROWS_AS(read_sweep_csv(ragged), CsvFormatError);
    std::istringstream junk("axis_value,backhaul_bps,scheme,total_s\n1,2,coupled,abc\n");
    CHECK_THROWS_AS(read_sweep_csv(junk), CsvFormatError);
    std::istringstream empty("# only comments\n");
    CHECK_THROWS_AS(read_sweep_csv(empty), CsvFormatError);
  }
}

TEST_SUITE("report") {
  TEST_CASE("analytic report lines") {
    const auto text = analytic_report(default_scenario());
    CHECK(text.find("association.coupled.ss = 0.6131368") != std::string::npos);
    CHECK(text.find("association.decoupled.ms = 0\n") != std::string::npos);
    CHECK(text.find("coverage.coupled.dl.small.interference = ") != std::string::npos);
    CHECK(text.find("average.decoupled_dl.total_s = ") != std::string::npos);
    for (std::istringstream in(text); !in.eof();) {
      std::string line;
      std::getline(in, line);
      if (line.empty()) continue;
      CHECK(line.find(" = ") != std::string::npos);
    }
  }

  TEST_CASE("single-tier report has no small-cell cases") {
    auto p = default_scenario();
    p.small.density = 0;
    const auto text = analytic_report(p);
    CHECK(text.find("coverage.coupled.ul.small") == std::string::npos);
    CHECK(text.find("case.decoupled_ul.sm") == std::string::npos);
    CHECK(text.find("association.decoupled.sm = 0\n") != std::string::npos);
  }
}

TEST_SUITE("validation") {
  TEST_CASE("too few trials is flagged, not passed") {
    ValidationOptions o;
    o.trials = 10;
    o.load_deployments = 2;
    const auto r = run_validation(default_scenario(), o);
    CHECK_FALSE(r.sufficient_power);
    CHECK_FALSE(r.passed);
    CHECK(validation_summary(r).rfind("INSUFFICIENT", 0) == 0);
  }

  TEST_CASE("fault injection on the small-cell association is caught") {
    ValidationOptions o;
    o.trials = 10000;
    o.load_deployments = 5;
    o.gammas_db = {-10};
    o.fault_offset_a_ss_d = 0.1;
    const auto r = run_validation(default_scenario(), o);
    CHECK_FALSE(r.passed);
    bool found = false;
    for (const auto& row : r.rows) {
      if (row.quantity == "assoc.coupled.ss") {
        found = true;
        CHECK_FALSE(row.passed);
        CHECK(std::abs(row.z_score) > 3);
      }
    }
    CHECK(found);
    std::ostringstream csv;
    write_validation_csv(csv, r);
    CHECK(csv.str().find("quantity,analytic,empirical,std_error,z_score\n") != std::string::npos);
    CHECK(csv.str().find("# summary: FAIL") != std::string::npos);
  }
}
