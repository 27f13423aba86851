#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "trendkit/report.hpp"

using namespace trendkit;

namespace {

double round6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::strtod(buf, nullptr);
}

trend_report example_report() {
    trend_report r;
    r.dataset = "delhi_2016.csv,delhi_2017.csv";
    r.input_hash = "00ff00ff00ff00ff";
    r.n = 1826;
    r.params.alpha = 0.05;
    r.params.confidence = 0.95;
    r.params.aggregation = "daily-mean";
    r.params.kind = "station";
    r.mk.s = 123457;
    r.mk.var_s = 826115469.6666666;
    r.mk.z = 3.7712345;
    r.mk.p_two_sided = 0.00016259467;
    r.mk.tau_a = 0.0268913;
    r.mk.tau_b = 0.0269417;
    r.mk.h = true;
    r.mk.alpha = 0.05;
    r.sen.slope = 6.978e-05;
    r.sen.intercept = 26.694;
    r.sen.ci_lower = 3.1e-05;
    r.sen.ci_upper = 1.07e-04;
    r.sen.confidence = 0.95;
    r.sen.n_pairs = 1666225;
    r.sw.w = 0.9812345;
    r.sw.p_value = 0.00031245;
    return r;
}

}  // namespace

TEST_CASE("rendering is deterministic") {
    const trend_report r = example_report();
    for (report_format f : {report_format::json, report_format::csv, report_format::text}) {
        CHECK(render_trend_report(r, f) == render_trend_report(r, f));
    }
}

TEST_CASE("json round-trips losslessly at 6 significant digits") {
    const trend_report r = example_report();
    const nlohmann::json j = nlohmann::json::parse(render_trend_report(r, report_format::json));

    CHECK(j["dataset"] == r.dataset);
    CHECK(j["input_hash"] == r.input_hash);
    CHECK(j["n"] == 1826);
    CHECK(j["s"] == 123457);
    CHECK(j["h"] == true);
    CHECK(j["alpha"].get<double>() == round6(r.mk.alpha));
    CHECK(j["confidence"].get<double>() == round6(r.sen.confidence));
    CHECK(j["var_s"].get<double>() == round6(r.mk.var_s));
    CHECK(j["z"].get<double>() == round6(r.mk.z));
    CHECK(j["p_two_sided"].get<double>() == round6(r.mk.p_two_sided));
    CHECK(j["tau_a"].get<double>() == round6(r.mk.tau_a));
    CHECK(j["tau_b"].get<double>() == round6(r.mk.tau_b));
    CHECK(j["slope"].get<double>() == round6(r.sen.slope));
    CHECK(j["intercept"].get<double>() == round6(r.sen.intercept));
    CHECK(j["ci_lower"].get<double>() == round6(r.sen.ci_lower));
    CHECK(j["ci_upper"].get<double>() == round6(r.sen.ci_upper));
    CHECK(j["sw_w"].get<double>() == round6(r.sw.w));
    CHECK(j["sw_p"].get<double>() == round6(r.sw.p_value));
}

TEST_CASE("text format lists the h/p/z/tau rows") {
    const std::string text = render_trend_report(example_report(), report_format::text);
    CHECK(text.find("\n  h ") != std::string::npos);
    CHECK(text.find("\n  p ") != std::string::npos);
    CHECK(text.find("\n  z ") != std::string::npos);
    CHECK(text.find("\n  tau ") != std::string::npos);
    CHECK(text.find("significance") != std::string::npos);
    CHECK(text.find("value") != std::string::npos);
    CHECK(text.find("0.000162595") != std::string::npos);
}

TEST_CASE("csv format is a header plus one row") {
    const std::string csv = render_trend_report(example_report(), report_format::csv);
    const std::size_t first_newline = csv.find('\n');
    REQUIRE(first_newline != std::string::npos);
    CHECK(csv.substr(0, first_newline) ==
          "s,var_s,z,p_two_sided,tau_a,tau_b,h,alpha,slope,intercept,ci_lower,ci_upper,sw_w,sw_p");
    CHECK(csv.find("123457,") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("unknown format name is rejected") {
    CHECK_THROWS_AS(parse_report_format("yaml"), validation_error);
    CHECK(parse_report_format("json") == report_format::json);
    CHECK(parse_report_format("csv") == report_format::csv);
    CHECK(parse_report_format("text") == report_format::text);
}

TEST_CASE("qq plot data emission") {
    qq_data qq;
    qq.points = {{-1.0, 10.0}, {0.0, 12.0}, {1.0, 14.0}};
    const std::string csv = emit_plot_data(plot_kind::qq, qq);
    CHECK(csv == "theoretical,sample\n-1,10\n0,12\n1,14\n");
}

TEST_CASE("seasonal plot data emission") {
    std::vector<seasonal_mean> rows = {
        {2019, season::winter, 7.25, 90}, {2019, season::summer, 33.5, 91}};
    const std::string csv = emit_plot_data(plot_kind::seasonal, rows);
    CHECK(csv == "season_year,season,mean_c\n2019,Winter,7.25\n2019,Summer,33.5\n");
}

TEST_CASE("annual-change plot data emission") {
    std::vector<year_mean> rows = {{2018, 24.75}, {2019, 25.5}};
    const std::string csv = emit_plot_data(plot_kind::annual_change, rows);
    CHECK(csv == "year,mean_c\n2018,24.75\n2019,25.5\n");
}

TEST_CASE("empty plot data yields header-only output") {
    CHECK(emit_plot_data(plot_kind::qq, qq_data{}) == "theoretical,sample\n");
    CHECK(emit_plot_data(plot_kind::seasonal, std::vector<seasonal_mean>{}) ==
          "season_year,season,mean_c\n");
    CHECK(emit_plot_data(plot_kind::annual_change, std::vector<year_mean>{}) == "year,mean_c\n");
}

TEST_CASE("kind and payload must agree") {
    CHECK_THROWS_AS(emit_plot_data(plot_kind::qq, std::vector<year_mean>{}), validation_error);
    CHECK_THROWS_AS(emit_plot_data(plot_kind::seasonal, qq_data{}), validation_error);
    CHECK_THROWS_AS(emit_plot_data(plot_kind::annual_change, qq_data{}), validation_error);
}

TEST_CASE("region change CSV quotes names containing commas") {
    const std::vector<region_change> ranked = {{"Andaman, Nicobar", 0.79}, {"Delhi", 0.76}};
    const std::string csv = emit_region_changes_csv(ranked);
    CHECK(csv == "region,change_c\n\"Andaman, Nicobar\",0.79\nDelhi,0.76\n");
}

TEST_CASE("input hashing is stable") {
    CHECK(detail::fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(detail::fnv1a64_hex("trend") == detail::fnv1a64_hex("trend"));
    CHECK(detail::fnv1a64_hex("trend") != detail::fnv1a64_hex("trend "));
}
