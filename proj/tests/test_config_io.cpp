#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cavityfock/config.hpp"
#include "cavityfock/dynamics.hpp"
#include "cavityfock/io.hpp"

using namespace cavityfock;

TEST_CASE("minimal config gives the documented defaults") {
  const ExperimentConfig c = parse_config("# nothing but a comment\n\n");
  CHECK(c.g == 1.0);
  CHECK(c.alpha_init == Complex{0.0, 0.0});
  CHECK(c.scheme == Scheme::elastic_ee);
  CHECK(c.timing.tau_mean == 1.0);
  CHECK(c.timing.spread == 0.0);
  CHECK(c.timing.length_ratio == 1.0);
  CHECK(c.timing.distribution == SpreadDistribution::uniform);
  CHECK(c.n_atoms == 1);
  CHECK(c.n_max == 0);
  CHECK(c.seed == 1);
  CHECK(c.selection == Selection::forced_postselect);
  CHECK(c.correlation == Correlation::correlated);
  CHECK(c.tail_threshold == 1e-12);
}

TEST_CASE("full config round-trips through format_config") {
  const ExperimentConfig c = preset_config("fig2-large");
  const std::string text = format_config(c);
  const ExperimentConfig again = parse_config(text);
  CHECK(format_config(again) == text);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_config("g = 1\nmystery = 4\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("mystery") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("g\n"), ParseError);
  CHECK_THROWS_AS(parse_config("g = \n"), ParseError);
  CHECK_THROWS_AS(parse_config("g = fast\n"), ParseError);
  CHECK_THROWS_AS(parse_config("scheme = psychic\n"), ParseError);
}

TEST_CASE("invariant violations become validation errors") {
  CHECK_THROWS_AS(parse_config("spread = -1\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("n_atoms = 0\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("tau_mean = 2\nspread = 2\n"), ValidationError);
}

TEST_CASE("complex values parse as re,im") {
  const ExperimentConfig c = parse_config("alpha_init = 1.5, -0.25\n");
  CHECK(c.alpha_init == Complex{1.5, -0.25});
  const ExperimentConfig r = parse_config("alpha_init = 3\n");
  CHECK(r.alpha_init == Complex{3.0, 0.0});
}

TEST_CASE("fig2-large preset carries the documented experiment") {
  const ExperimentConfig c = preset_config("fig2-large");
  CHECK(c.scheme == Scheme::interference_epg);
  CHECK(c.alpha_init.real() == doctest::Approx(std::sqrt(21.0)).epsilon(1e-15));
  CHECK(c.n_target == 21);
  CHECK(c.timing.spread == doctest::Approx(2.0 * critical_spread(1.0, 20)).epsilon(1e-15));
  CHECK(c.final_pulse_phase == doctest::Approx(-std::numbers::pi / 2).epsilon(1e-15));
  CHECK(c.n_atoms == 2000);
  const ExperimentConfig small = preset_config("fig2-small");
  CHECK(small.timing.spread == doctest::Approx(critical_spread(1.0, 20) / 10.0).epsilon(1e-15));
  CHECK(preset_config("fig2-fixed").timing.spread == 0.0);
  const ExperimentConfig fig1 = preset_config("fig1");
  CHECK(fig1.scheme == Scheme::elastic_ee);
  CHECK(fig1.alpha_init == Complex{3.0, 0.0});
  CHECK(fig1.timing.spread == doctest::Approx(critical_spread(1.0, 9)).epsilon(1e-15));
  CHECK_THROWS_AS(preset_config("fig3"), ValidationError);
}

TEST_CASE("overrides apply and re-validate") {
  ExperimentConfig c = preset_config("fig2-small");
  apply_override(c, "n_atoms=50");
  CHECK(c.n_atoms == 50);
  apply_override(c, "correlation=uncorrelated");
  CHECK(c.correlation == Correlation::uncorrelated);
  CHECK_THROWS_AS(apply_override(c, "spread=-3"), ValidationError);
  CHECK_THROWS_AS(apply_override(c, "nonsense"), ValidationError);
}

TEST_CASE("csv outputs are byte-deterministic") {
  ExperimentConfig c = preset_config("fig2-small");
  c.n_atoms = 120;
  const TrajectoryResult a = run_trajectory(c);
  const TrajectoryResult b = run_trajectory(c);
  CHECK(trajectory_csv(a) == trajectory_csv(b));
  CHECK(final_pn_csv(a.final_pn) == final_pn_csv(b.final_pn));
  const EnsembleSummary ea = run_ensemble(c, 4);
  const EnsembleSummary eb = run_ensemble(c, 4);
  CHECK(summary_csv(ea) == summary_csv(eb));
}

TEST_CASE("csv headers and shape") {
  ExperimentConfig c = preset_config("fig2-fixed");
  c.n_atoms = 5;
  const TrajectoryResult r = run_trajectory(c);
  const std::string csv = trajectory_csv(r);
  CHECK(csv.rfind("k,mean_n,delta_n,p_k,cum_log_success,tau_k\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  const std::string pn_csv = final_pn_csv(r.final_pn);
  CHECK(pn_csv.rfind("n,p\n", 0) == 0);
    double sum = 0.0;
  for (double p : r.final_pn) sum += p;
  CHECK(std::abs(sum - 1.0) < 1e-9);
}

TEST_CASE("float formatting is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(21.0) == "21");
  CHECK(format_double(1e-12) == "1e-12");
  const double pi = std::numbers::pi;
  CHECK(std::stod(format_double(pi)) == pi);
}
