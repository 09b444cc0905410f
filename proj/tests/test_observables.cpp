#include <doctest.h>

#include "tbdrive/observables.hpp"
#include "tbdrive/propagators.hpp"

#include <cmath>
#include <filesystem>

using namespace tbdrive;

TEST_CASE("occupations, mean and width") {
  PropagationResult r;
  r.basis_offset = -1;
  StateVector psi(3);
  psi << std::sqrt(0.5), 0.0, std::complex<double>(0.0, std::sqrt(0.5));
  r.times = {0.0};
  r.states = {psi};
  const auto obs = occupations(r);
  CHECK(obs.occupations(0, 0) == doctest::Approx(0.5));
  CHECK(obs.occupations(0, 2) == doctest::Approx(0.5));
  CHECK(obs.mean_position[0] == doctest::Approx(0.0));
  CHECK(obs.width[0] == doctest::Approx(1.0));
  CHECK(obs.norm[0] == doctest::Approx(1.0));
}

TEST_CASE("states CSV round trip is exact") {
  const auto spec = LatticeSpec::infinite_window(2, 0.4);
  const auto res = oracle_propagate(spec, DriveProfile::sinusoid(1.0, 2.0), site_state(spec, -1), 0.5, 1e-2, 7);
  const auto text = states_csv(res);
  CHECK(text.rfind("t,re_-2,im_-2,re_-1,im_-1,", 0) == 0);
  const auto table = parse_states_csv(text);
  CHECK(table.basis_offset == -2);
  REQUIRE(table.states.size() == res.states.size());
  for (std::size_t i = 0; i < res.states.size(); ++i) {
    CHECK(table.times[i] == res.times[i]);
    CHECK(table.states[i] == res.states[i]);
  }
  CHECK_THROWS(parse_states_csv("x,y\n1,2\n"));
  CHECK_THROWS(parse_states_csv(""));
}

TEST_CASE("observables CSV layout") {
  const auto spec = LatticeSpec::dirichlet(2, 0.4);
  const auto res = oracle_propagate(spec, DriveProfile::constant(0.0), site_state(spec, 1), 0.02, 1e-2);
  auto obs = occupations(res);
  CHECK(observables_csv(obs).rfind("t,p_1,p_2,mean_n,width,norm\n", 0) == 0);
  obs.fidelity_vs = std::vector<double>(obs.times.size(), 1.0);
  const auto text = observables_csv(obs);
  CHECK(text.rfind("t,p_1,p_2,mean_n,width,norm,fidelity\n0,1,0,1,0,1,1\n", 0) == 0);
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("dominant period of sampled sinusoids") {
  for (double period : {1.0, 2.7, 6.283185307179586}) {
    std::vector<double> x;
    const double dt = 0.01;
    for (int i = 0; i < static_cast<int>(5 * period / dt); ++i) x.push_back(3.0 + std::cos(2 * M_PI * i * dt / period + 0.4));
    const auto est = dominant_period(x, dt);
    CHECK(est.oscillating);
    CHECK(est.period == doctest::Approx(period).epsilon(5e-3));
  }
}

TEST_CASE("period estimator edge cases") {
  const std::vector<double> flat(100, 2.0);
  CHECK_FALSE(dominant_period(flat, 0.1).oscillating);
  std::vector<double> short_span;
  for (int i = 0; i < 100; ++i) short_span.push_back(std::sin(2 * M_PI * i / 80.0));
  CHECK_THROWS_AS(dominant_period(short_span, 0.1), InsufficientSpan);
  CHECK_THROWS_AS(dominant_period(flat, 0.0), std::invalid_argument);
}

TEST_CASE("Bloch period of an off-centre packet") {
  const auto spec = LatticeSpec::infinite_window(30, 0.5);
  // a two-site superposition has a moving mean position
  StateVector psi0 = (site_state(spec, 0) + site_state(spec, 1)) / std::sqrt(2.0);
  const auto res = oracle_propagate(spec, DriveProfile::constant(1.0), psi0, 30.0, 1e-2, 5);
  const auto est = bloch_period_estimate(occupations(res));
  CHECK(est.signal == PeriodSignal::MeanPosition);
  CHECK(est.period == doctest::Approx(2 * M_PI).epsilon(0.01));
}

TEST_CASE("single-site packet falls back to the breathing width") {
  const auto spec = LatticeSpec::infinite_window(30, 0.5);
  const auto res = oracle_propagate(spec, DriveProfile::constant(2.0), site_state(spec, 0), 15.0, 1e-2, 5);
  const auto obs = occupations(res);
  const auto est = bloch_period_estimate(obs);
  CHECK(est.signal == PeriodSignal::Width);
  CHECK(est.period == doctest::Approx(M_PI).epsilon(0.01));
  CHECK_FALSE(bloch_period_estimate(obs, PeriodSignal::MeanPosition).oscillating);
}

TEST_CASE("text files") {
  const auto dir = std::filesystem::temp_directory_path() / "tbdrive_test_obs" / "nested";
  write_text_file(dir / "a.txt", "x\ny\n");
  CHECK(read_text_file(dir / "a.txt") == "x\ny\n");
  CHECK_THROWS(read_text_file(dir / "missing.txt"));
  std::filesystem::remove_all(dir.parent_path());
}
