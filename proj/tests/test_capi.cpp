#include <cmath>
#include <string>

#include "dmec/dmec.h"
#include "doctest.h"

TEST_SUITE("capi") {
  TEST_CASE("scenario lifecycle and model calls") {
    dmec_scenario* s = nullptr;
    REQUIRE(dmec_scenario_default(&s) == DMEC_OK);
    CHECK(std::string(dmec_last_error()).empty());

    dmec_association a{};
    REQUIRE(dmec_association_probs(s, &a) == DMEC_OK);
    CHECK(std::abs(a.coupled_ss - 0.61314) < 1e-5);
    CHECK(std::abs(a.decoupled_sm - 0.29595) < 1e-5);
    CHECK(a.decoupled_ms == 0.0);

    double v = 0;
    REQUIRE(dmec_ul_coverage(s, DMEC_POLICY_DECOUPLED, DMEC_TIER_SMALL, 0.1, &v) == DMEC_OK);
    CHECK(v == doctest::Approx(0.911697589187144).epsilon(1e-9));
    REQUIRE(dmec_dl_coverage(s, DMEC_POLICY_COUPLED, DMEC_TIER_MACRO, 0.1, DMEC_DL_FORM_INTERFERENCE, &v) == DMEC_OK);
    CHECK(v == doctest::Approx(0.91169880056171).epsilon(1e-9));
    REQUIRE(dmec_mean_load(s, DMEC_POLICY_COUPLED, DMEC_LINK_UL, DMEC_TIER_SMALL, &v) == DMEC_OK);
    CHECK(v == doctest::Approx(1.5328420503828577));

    dmec_latency l{};
    REQUIRE(dmec_average_latency(s, DMEC_SCHEME_DECOUPLED_DL_PROC, &l) == DMEC_OK);
    CHECK(l.total_s == doctest::Approx(0.0792558464819442).epsilon(1e-8));
    REQUIRE(dmec_case_latency(s, DMEC_SCHEME_COUPLED, DMEC_TIER_SMALL, DMEC_TIER_SMALL, &l) == DMEC_OK);
    CHECK(l.total_s == doctest::Approx(l.ul_time_s + l.exec_time_s + l.backhaul_time_s + l.dl_time_s));
    CHECK(dmec_case_latency(s, DMEC_SCHEME_COUPLED, DMEC_TIER_SMALL, DMEC_TIER_MACRO, &l) == DMEC_ERR_INVALID_ARGUMENT);
    CHECK(std::string(dmec_last_error()).find("same tier") != std::string::npos);

    REQUIRE(dmec_scenario_set(s, "c_bh_bps", "10000") == DMEC_OK);
    REQUIRE(dmec_scenario_get(s, "c_bh_bps", &v) == DMEC_OK);
    CHECK(v == 1e4);
    CHECK(dmec_scenario_set(s, "bogus", "1") == DMEC_ERR_CONFIG);
    CHECK(std::string(dmec_last_error()).find("bogus") != std::string::npos);

    char* text = nullptr;
    REQUIRE(dmec_scenario_to_text(s, &text) == DMEC_OK);
    dmec_scenario* copy = nullptr;
    REQUIRE(dmec_scenario_from_text(text, &copy) == DMEC_OK);
    dmec_string_free(text);
    REQUIRE(dmec_scenario_get(copy, "c_bh_bps", &v) == DMEC_OK);
    CHECK(v == 1e4);
    dmec_scenario_free(copy);

    REQUIRE(dmec_analytic_report(s, &text) == DMEC_OK);
    CHECK(std::string(text).find("average.coupled.total_s") != std::string::npos);
    dmec_string_free(text);
    dmec_scenario_free(s);
  }

  TEST_CASE("error codes") {
    dmec_scenario* s = nullptr;
    CHECK(dmec_scenario_from_text("lambda_u_per_km2 = 5\n", &s) == DMEC_ERR_CONFIG);
    CHECK(std::string(dmec_last_error()).find("thinning") != std::string::npos);
    REQUIRE(dmec_scenario_default(&s) == DMEC_OK);
    REQUIRE(dmec_scenario_set(s, "lambda_u_per_km2", "5") == DMEC_OK);
    CHECK(dmec_scenario_validate(s) == DMEC_ERR_CONFIG);
    dmec_association a{};
    CHECK(dmec_association_probs(s, &a) == DMEC_ERR_CONFIG);
    dmec_scenario_free(s);

    CHECK(dmec_scenario_from_text("p_m_dbm = x\n", &s) == DMEC_ERR_CONFIG);
    CHECK(dmec_scenario_from_file("/nonexistent/cfg", &s) == DMEC_ERR_CONFIG);
    CHECK(dmec_scenario_default(nullptr) == DMEC_ERR_INVALID_ARGUMENT);

    REQUIRE(dmec_scenario_default(&s) == DMEC_OK);
    dmec_latency l{};
    REQUIRE(dmec_scenario_set(s, "f_s_hz", "1000") == DMEC_OK);
    CHECK(dmec_average_latency(s, DMEC_SCHEME_COUPLED, &l) == DMEC_ERR_UNSTABLE);
    CHECK(std::string(dmec_last_error()).find("unstable") != std::string::npos);
    char* csv = nullptr;
    CHECK(dmec_sweep_figure(s, 7, &csv) == DMEC_ERR_INVALID_ARGUMENT);
    CHECK(dmec_plot("axis_value,scheme\n", &csv) == DMEC_ERR_FORMAT);
    dmec_scenario_free(s);
  }

  TEST_CASE("sweep, frontier, plot and validate through the C API") {
    dmec_scenario* s = nullptr;
    REQUIRE(dmec_scenario_default(&s) == DMEC_OK);
    char* csv = nullptr;
    REQUIRE(dmec_sweep_figure(s, 4, &csv) == DMEC_OK);
    char* svg = nullptr;
    REQUIRE(dmec_plot(csv, &svg) == DMEC_OK);
    CHECK(std::string(svg).find("<polyline") != std::string::npos);
    dmec_string_free(svg);
    dmec_string_free(csv);

    const double values[] = {1e4, 1e5, 1e6};
    REQUIRE(dmec_sweep_axis(s, "c_bh_bps", values, 3, &csv) == DMEC_OK);
    CHECK(std::string(csv).find("\n100000,100000,") != std::string::npos);
    dmec_string_free(csv);

    const double widths[] = {1e6, 1e7, 1e8};
    dmec_frontier f{};
    REQUIRE(dmec_stability_frontier(s, "w_ul_hz", widths, 3, DMEC_SCHEME_COUPLED, &f) == DMEC_OK);
    CHECK(f.has_first_unstable);
    CHECK(f.first_unstable == 1e8);
    CHECK(f.last_stable == 1e7);

    dmec_validation_options o{10, 1};
    char* summary = nullptr;
    CHECK(dmec_validate(s, &o, &csv, &summary) == DMEC_ERR_VALIDATION);
    CHECK(std::string(summary).rfind("INSUFFICIENT", 0) == 0);
    dmec_string_free(summary);
    dmec_string_free(csv);
    dmec_scenario_free(s);
    CHECK(std::string(dmec_version()) == "0.1.0");
  }
}
