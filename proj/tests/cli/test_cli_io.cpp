#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dimerlab/cli/config.hpp"
#include "dimerlab/cli/json_format.hpp"
#include "dimerlab/cli/svg.hpp"

using namespace dimerlab::cli;

namespace {

std::string config_error(Command c, std::string_view text) {
  try {
    parse_config(c, text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  ADD_FAILURE() << "accepted: " << text;
  return {};
}

}  // namespace

TEST(Config, ParsesEveryCommand) {
  const auto crit = std::get<CriticalConfig>(parse_config(Command::Critical, R"({"mu": 5})"));
  EXPECT_EQ(crit.mu, 5.0);

  const auto bif = std::get<BifurcationConfig>(
      parse_config(Command::Bifurcation, R"({"command": "bifurcation", "mu": 1, "eta_min": 0.1, "eta_max": 4})"));
  EXPECT_EQ(bif.samples, 400u);
  EXPECT_EQ(bif.jump_guard, 0.1);

  const auto por = std::get<PortraitConfig>(parse_config(Command::Portrait, R"({"mu": 5, "eta": 2, "levels": [1, -2.5]})"));
  EXPECT_EQ(por.nz, 401u);
  ASSERT_EQ(por.levels.size(), 2u);
  EXPECT_EQ(por.levels[1], -2.5);

  const auto sim = std::get<SimulateConfig>(
      parse_config(Command::Simulate, R"({"mu": 1, "eta": 1e-300, "z0": 0, "theta0": 1.5, "tau_end": 10})"));
  EXPECT_EQ(sim.chart, ChartChoice::Phase);
  EXPECT_EQ(sim.tol, 1e-10);
  EXPECT_TRUE(sim.handoff);

  const auto amp = std::get<SimulateConfig>(parse_config(
      Command::Simulate,
      R"({"mu": 1, "eta": 2, "chart": "amplitude", "a_right": [1, 0], "a_left": [0, 0], "tau_end": 10})"));
  ASSERT_TRUE(amp.amplitudes.has_value());
  EXPECT_EQ(amp.amplitudes->first, std::complex<double>(1.0, 0.0));

  const auto red = std::get<ReduceConfig>(parse_config(
      Command::Reduce, R"({"potential": {"family": "gaussian", "A": 2, "x0": 1, "s": 0.5}, "hbar": 0.2, "epsilon": [0, 1]})"));
  EXPECT_EQ(red.spec.potential.family(), dimerlab::PotentialFamily::GaussianWells);
  EXPECT_EQ(red.mu, 1.0);
  EXPECT_EQ(red.epsilons.size(), 2u);
  EXPECT_FALSE(red.spec.domain_half_width.has_value());
}

TEST(Config, NamesTheOffendingField) {
  EXPECT_NE(config_error(Command::Critical, R"({})").find("'mu'"), std::string::npos);
  EXPECT_NE(config_error(Command::Critical, R"({"mu": -1})").find("'mu': must be > 0"), std::string::npos);
  EXPECT_NE(config_error(Command::Critical, R"({"mu": "five"})").find("expected a number"), std::string::npos);
  EXPECT_NE(config_error(Command::Critical, R"({"mu": 1, "muu": 2})").find("'muu': unknown field"), std::string::npos);
  EXPECT_NE(config_error(Command::Critical, R"({"command": "reduce", "mu": 1})").find("'command'"), std::string::npos);
  EXPECT_NE(config_error(Command::Bifurcation, R"({"mu": 1, "eta_min": 3, "eta_max": 2})").find("eta_max"),
            std::string::npos);
  EXPECT_NE(config_error(Command::Portrait, R"({"mu": 1, "eta": 1, "nz": 8})").find("'nz'"), std::string::npos);
  EXPECT_NE(config_error(Command::Simulate, R"({"mu": 1, "eta": 1, "z0": 1, "theta0": 0, "tau_end": 1})").find("'z0'"),
            std::string::npos);
  EXPECT_NE(config_error(Command::Simulate, R"({"mu": 1, "eta": 1, "z0": 0, "theta0": 0, "tau_end": 1, "tol": 1e-3})")
                .find("'tol'"),
            std::string::npos);
  EXPECT_NE(config_error(Command::Simulate,
                         R"({"mu": 1, "eta": 1, "chart": "amplitude", "a_right": [1, 0], "a_left": [1, 0], "tau_end": 1})")
                .find("a_right"),
            std::string::npos);
  EXPECT_NE(config_error(Command::Reduce, R"({"potential": {"family": "cubic"}, "hbar": 1})").find("potential.family"),
            std::string::npos);
  EXPECT_NE(config_error(Command::Reduce, R"({"potential": {"family": "harmonic"}, "hbar": 1})").find("validation_mode"),
            std::string::npos);
  EXPECT_NE(config_error(Command::Reduce, R"({"potential": {"family": "quartic", "a": 1, "b": 1}, "hbar": 1, "grid_points": 64})")
                .find("grid_points"),
            std::string::npos);
}

TEST(Config, SyntaxErrorsReportTheLine) {
  EXPECT_NE(config_error(Command::Critical, "{\n  \"mu\": 5,\n  oops\n}").find("line 3"), std::string::npos);
  EXPECT_NE(config_error(Command::Critical, "[1, 2]").find("JSON object"), std::string::npos);
}

TEST(Config, MissingTableIsAnIoError) {
  EXPECT_THROW(parse_config(Command::Reduce, R"({"potential": {"family": "tabulated", "path": "/nonexistent/t.txt"}, "hbar": 1})"),
               IoError);
  EXPECT_THROW(load_config(Command::Critical, "/nonexistent/config.json"), IoError);
}

TEST(Config, ThreadBudget) {
  EXPECT_GE(thread_budget(nullptr), 1u);
  EXPECT_EQ(thread_budget("1"), 1u);
  EXPECT_LE(thread_budget("3"), 3u);
  EXPECT_THROW(thread_budget("0"), ConfigError);
  EXPECT_THROW(thread_budget("-2"), ConfigError);
  EXPECT_THROW(thread_budget("four"), ConfigError);
  EXPECT_THROW(thread_budget("2x"), ConfigError);
}

TEST(JsonFormat, RealsUseTwelveDigitScientific) {
  EXPECT_EQ(format_real(6.4), "6.400000000000e+00");
  EXPECT_EQ(format_real(-1.0 / 3.0), "-3.333333333333e-01");
  EXPECT_EQ(format_real(0.0), "0.000000000000e+00");

  Json j;
  j["b"] = 1.5;
  j["a"] = 2;
  j["n"] = std::nan("");
  j["s"] = "x";
  j["list"] = Json::array({0.25, nullptr, true});
  j["empty"] = Json::object();
  EXPECT_EQ(dump_json(j),
            "{\n"
            "  \"b\": 1.500000000000e+00,\n"
            "  \"a\": 2,\n"
            "  \"n\": null,\n"
            "  \"s\": \"x\",\n"
            "  \"list\": [\n"
            "    2.500000000000e-01,\n"
            "    null,\n"
            "    true\n"
            "  ],\n"
            "  \"empty\": {}\n"
            "}\n");
  EXPECT_EQ(Json::parse(dump_json(j))["b"].get<double>(), 1.5);
}

TEST(MarchingSquares, CircleContour) {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 100; ++i) xs.push_back(-1.0 + 0.02 * i);
  ys = xs;
  auto f = [&](std::size_t i, std::size_t j) { return xs[i] * xs[i] + ys[j] * ys[j]; };
  const auto segs = marching_squares(xs, ys, f, 0.49);
  ASSERT_GT(segs.size(), 100u);
  double length = 0.0;
  for (const auto& s : segs) {
    EXPECT_NEAR(std::hypot(s.x0, s.y0), 0.7, 2e-3);
    EXPECT_NEAR(std::hypot(s.x1, s.y1), 0.7, 2e-3);
    length += std::hypot(s.x1 - s.x0, s.y1 - s.y0);
  }
  EXPECT_NEAR(length, 2.0 * std::numbers::pi * 0.7, 1e-2);
  EXPECT_TRUE(marching_squares(xs, ys, f, 5.0).empty());
}

TEST(MarchingSquares, SaddleCellsProduceTwoSegments) {
  const std::vector<double> xs{0.0, 1.0}, ys{0.0, 1.0};
  // Diagonal corners high: x y + (1 - x)(1 - y).
  auto f = [](std::size_t i, std::size_t j) { return (i == j) ? 1.0 : 0.0; };
  EXPECT_EQ(marching_squares(xs, ys, f, 0.4).size(), 2u);
  EXPECT_EQ(marching_squares(xs, ys, f, 0.6).size(), 2u);
}

TEST(Svg, DocumentIsSelfContained) {
  SvgPlot plot(0.0, 1.0, -1.0, 1.0);
  plot.set_title("a < b & c");
  plot.polyline({{0.0, 0.0}, {1.0, 1.0}}, "black", true);
  plot.marker(0.5, 0.5, "red", false);
  const std::string s = plot.str();
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  EXPECT_NE(s.find("a &lt; b &amp; c"), std::string::npos);
  EXPECT_NE(s.find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(s.find("</svg>\n"), std::string::npos);
}
