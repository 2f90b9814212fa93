#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "phaselab/errors.hpp"
#include "phaselab/phase_dynamics.hpp"
#include "phaselab/rate_compare.hpp"

using namespace phaselab;
using namespace phaselab::rates;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("crossover thresholds", "[compare]") {
  CHECK(crossover_epsilon(PhaseShift::named(NamedAngle::Pi)) == 0.6);
  CHECK(crossover_epsilon(PhaseShift::named(NamedAngle::PiOver2)) == 1.0 / 3);
  CHECK(crossover_epsilon(PhaseShift::named(NamedAngle::TwoPiOver3)) == 0.5);
  CHECK_THROWS_AS(crossover_epsilon(PhaseShift::named(NamedAngle::PiOver3)), DomainError);
  CHECK_THROWS_AS(crossover_epsilon(make_phase(0.4)), DomainError);
  for (double t = 1.05; t <= kPi; t += 0.05) {
    const double thr = crossover_epsilon(make_phase(t));
    CHECK((thr > 0.0 && thr < 1.0));
  }
}

TEST_CASE("pi against pi/3 from 0.99999", "[compare]") {
  const auto trace = compare(PhaseShift::named(NamedAngle::Pi), 0.99999, 5);
  CHECK_THAT(trace.eps_pi3[5], WithinRel(std::pow(0.99999, 243), 1e-12));
  CHECK_THAT(trace.eps_pi3[5], WithinAbs(0.99757, 5e-6));
  CHECK_THAT(trace.eps_theta[5], WithinRel(0.51696015720507782, 1e-10));
  CHECK(trace.eps_theta[5] < trace.eps_pi3[5]);
  // eps_5 = 0.517 is the first value below 3/5, so the crossover is beyond this trace
  CHECK_FALSE(trace.crossover_step.has_value());
  CHECK(compare(PhaseShift::named(NamedAngle::Pi), 0.99999, 6).crossover_step == 6u);
  CHECK(trace.ordering_consistent);
}

TEST_CASE("small phases never beat pi/3", "[compare]") {
  const auto trace = compare(make_phase(kPi / 6), 0.9, 3);
  for (double delta : trace.deltas) CHECK(delta >= 0.0);
  CHECK(trace.ordering_consistent);
  CHECK_FALSE(trace.threshold.has_value());
  CHECK_FALSE(trace.crossover_step.has_value());
}

TEST_CASE("trace bookkeeping", "[compare]") {
  const auto trace = compare(make_phase(2.2), 0.97, 12);
  REQUIRE(trace.eps_theta.size() == 13);
  REQUIRE(trace.eps_pi3.size() == 13);
  for (std::size_t i = 0; i <= 12; ++i) {
    CHECK(trace.deltas[i] == trace.eps_theta[i] - trace.eps_pi3[i]);
    if (i) CHECK(trace.eps_pi3[i] == trace.eps_pi3[i - 1] * trace.eps_pi3[i - 1] * trace.eps_pi3[i - 1]);
  }
  CHECK(trace.eps_theta == dynamics::orbit(make_phase(2.2), 0.97, 12).epsilons);
  CHECK_THROWS_AS(compare(make_phase(2.2), 0.0, 3), DomainError);
  CHECK_THROWS_AS(compare(make_phase(2.2), 0.5, 0), DomainError);
}

TEST_CASE("a tie at the threshold counts as below", "[compare]") {
  const auto p = PhaseShift::named(NamedAngle::TwoPiOver3);
  const auto trace = compare(p, 0.5, 3);
  CHECK(trace.crossover_step == 1u);
}

TEST_CASE("factored difference identity", "[compare][property]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> theta_dist(0.01, kPi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto p = make_phase(theta_dist(rng));
    const double x = unit(rng), y = unit(rng);
    worst = std::max(worst, std::abs(factored_difference(p, x, y) -
                                     (dynamics::iterate_once(p, x) - y * y * y)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("at the threshold only the cubic difference is left", "[compare]") {
  for (double t : {1.2, kPi / 2, 2.5, kPi}) {
    const auto p = make_phase(t);
    const double x = crossover_epsilon(p);
    const double y = 0.9;
    CHECK_THAT(factored_difference(p, x, y), WithinAbs(x * x * x - y * y * y, 1e-15));
    CHECK_THAT(dynamics::iterate_once(p, x), WithinAbs(x * x * x, 1e-15));
  }
}

TEST_CASE("case 1: a step above the threshold keeps the larger phase ahead", "[compare][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> theta_dist(kPi / 3 + 1e-3, kPi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const auto p = make_phase(theta_dist(rng));
    const double thr = crossover_epsilon(p);
    const double x = thr + (1 - thr) * unit(rng);
    const double y = x + (1 - x) * unit(rng);
    REQUIRE(dynamics::iterate_once(p, x) <= y * y * y + 1e-15);
  }
}

TEST_CASE("case 1 on paired orbits before the crossover", "[compare][property]") {
  for (double t : {kPi / 2 + 0.1, 2 * kPi / 3, kPi, 1.3, 2.8}) {
    for (double eps0 : {0.999, 0.99, 0.9, 0.75}) {
      const auto trace = compare(make_phase(t), eps0, 40);
      INFO("theta " << t << " eps0 " << eps0);
      CHECK(trace.ordering_consistent);
      CHECK(trace.crossover_step.has_value());
    }
  }
}

TEST_CASE("case 2: phases below pi/3 stay behind for 20 steps", "[compare][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> eps_dist(1e-3, 1 - 1e-3);
  for (double t : {kPi / 6, kPi / 4, 0.3, 0.9}) {
    for (int i = 0; i < 200; ++i) {
      const auto trace = compare(make_phase(t), eps_dist(rng), 20);
      REQUIRE(trace.ordering_consistent);
      for (double delta : trace.deltas) REQUIRE(delta >= 0.0);
    }
  }
}
