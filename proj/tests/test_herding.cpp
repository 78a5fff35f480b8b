#include <cmath>
#include <random>

#include "doctest.h"
#include "evcg/herding.hpp"

using namespace evcg;

namespace {

HerdingTemplate reference_template() {
  HerdingTemplate tpl;
  tpl.periods = 4;
  tpl.offpeak_periods = 2;
  tpl.capacity = 2.0;
  const DissatisfactionFn f = DissatisfactionFn::linear(1.0, 1.0);
  tpl.player = Player{0, 2, 1.0, 0.3, 0.2, f, f};
  return tpl;
}

}  // namespace

TEST_CASE("herding congestion indicator") {
  CHECK(herding_x(3, 2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(herding_x(2, 2.0) == 1.0);  // load equals capacity: uncongested
  CHECK(herding_x(10, 2.0) == doctest::Approx(0.2));
  CHECK_THROWS_AS(herding_x(0, 2.0), std::invalid_argument);
}

TEST_CASE("linear threshold") {
  const ThresholdResult t = linear_threshold(1.0, 1.0, 0.3, 0.2);
  REQUIRE(t.kind == ThresholdKind::Threshold);
  CHECK(t.x_hat == doctest::Approx(0.875).epsilon(1e-15));
  CHECK(t.f_at_0 == 1.0);
  CHECK(t.f_at_1 == 0.0);
  CHECK(t.rhs_at_0 == doctest::Approx(0.3));
  CHECK(t.rhs_at_1 == doctest::Approx(0.1));

  CHECK(linear_threshold(0.2, 0.2, 0.3, 0.1).kind ==
        ThresholdKind::AlwaysStable);
  // alpha equal to the peak price degenerates the crossing to 0
  CHECK(linear_threshold(1.0, 1.0, 1.0, 0.2).kind ==
        ThresholdKind::AlwaysStable);
  // crossing at or beyond 1 leaves all of (0,1) deviated
  CHECK(linear_threshold(5.0, 0.6, 1.0, 0.5).kind ==
        ThresholdKind::AlwaysDeviated);

  CHECK_THROWS_AS(linear_threshold(1.0, 0.0, 0.3, 0.2),
                  std::invalid_argument);
  CHECK_THROWS_AS(linear_threshold(1.0, 1.0, 0.2, 0.3),
                  std::invalid_argument);
}

TEST_CASE("logistic threshold") {
  const ThresholdResult t = logistic_threshold(1.5, 5.0, 0.4, 0.3);
  REQUIRE(t.kind == ThresholdKind::Threshold);
  CHECK(t.x_hat == doctest::Approx(0.6915582158342454).epsilon(1e-8));
  // the bracket that guarantees the root
  CHECK(t.f_at_0 > 0.4);
  CHECK(t.f_at_1 < 0.1);
  // root-defining property
  const DissatisfactionFn f = DissatisfactionFn::logistic(1.5, 5.0);
  CHECK(std::abs(f(t.x_hat) - (0.4 - 0.3 * t.x_hat)) <= 1e-9);

  CHECK(logistic_threshold(0.3, 5.0, 0.4, 0.1).kind ==
        ThresholdKind::AlwaysStable);
  CHECK_THROWS_AS(logistic_threshold(1.5, 5.0, 0.1, 0.3),
                  std::invalid_argument);
}

TEST_CASE("deviation test") {
  // a monotone curve for which herding never stabilizes
  const auto parabola = [](double x) { return 4.0 - x * x; };
  for (int i = 1; i < 1000; ++i)
    CHECK(deviation_test(parabola, i / 1000.0, 4.0, 2.0));

  const DissatisfactionFn lin = DissatisfactionFn::linear(1.0, 1.0);
  CHECK(!deviation_test(lin, 0.9, 0.3, 0.2));  // above the 0.875 threshold
  CHECK(deviation_test(lin, 0.5, 0.3, 0.2));
  CHECK(!deviation_test(lin, 1.0, 0.3, 0.2));  // f(1) = 0 < bD - bN
  CHECK_THROWS_AS(deviation_test(lin, 0.0, 0.3, 0.2),
                  std::invalid_argument);
}

TEST_CASE("threshold consistency near the crossing") {
  const ThresholdResult lin = linear_threshold(1.0, 1.0, 0.3, 0.2);
  const DissatisfactionFn f_lin = DissatisfactionFn::linear(1.0, 1.0);
  CHECK(deviation_test(f_lin, lin.x_hat - 10 * kRootTol, 0.3, 0.2));
  CHECK(!deviation_test(f_lin, lin.x_hat + 10 * kRootTol, 0.3, 0.2));

  const ThresholdResult log = logistic_threshold(1.5, 5.0, 0.4, 0.3);
  const DissatisfactionFn f_log = DissatisfactionFn::logistic(1.5, 5.0);
  CHECK(deviation_test(f_log, log.x_hat - 10 * kRootTol, 0.4, 0.3));
  CHECK(!deviation_test(f_log, log.x_hat + 10 * kRootTol, 0.4, 0.3));
}

TEST_CASE("scan agrees with the closed forms") {
  const DissatisfactionFn lin = DissatisfactionFn::linear(1.0, 1.0);
  const auto regions = scan_deviation_region(
      [&lin](double x) { return lin(x); }, 0.3, 0.2);
  REQUIRE(regions.size() == 1);
  CHECK(regions[0].lo == 0.0);
  CHECK(regions[0].hi == doctest::Approx(0.875).epsilon(1e-9));

  const auto always = scan_deviation_region(
      [](double x) { return 4.0 - x * x; }, 4.0, 2.0);
  REQUIRE(always.size() == 1);
  CHECK(always[0].lo == 0.0);
  CHECK(always[0].hi == 1.0);

  const auto never = scan_deviation_region(
      [](double) { return 0.0; }, 0.3, 0.2);
  CHECK(never.empty());
}

TEST_CASE("generic bisection reproduces the linear closed form") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int iter = 0; iter < 50; ++iter) {
    const double bN = 0.5 * u(rng);
    const double bD = bN + 0.05 + 0.5 * u(rng);
    const double alpha = bD + 0.05 + u(rng);
    const double beta = bN + (alpha - bD) * (1.05 + 4.0 * u(rng));
    const double closed = (alpha - bD) / (beta - bN);
    const DissatisfactionFn f = DissatisfactionFn::linear(alpha, beta);
    const auto regions = scan_deviation_region(
        [&f](double x) { return f(x); }, bD, bN);
    REQUIRE(regions.size() == 1);
    CHECK(regions[0].hi == doctest::Approx(closed).epsilon(1e-9));
    CHECK(linear_threshold(alpha, beta, bD, bN).x_hat ==
          doctest::Approx(closed));
  }
}

TEST_CASE("logistic gap crosses zero exactly once") {
  // bracketed draws: positive at 0, negative at 1, a single interval
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int iter = 0; iter < 40; ++iter) {
    const double bN = 0.05 * u(rng);
    const double bD = bN + 0.15 + 0.45 * u(rng);
    const double beta = 5.0 + 7.0 * u(rng);
    const double alpha =
        (bD + 0.05 + 1.15 * u(rng)) * (1.0 + std::exp(-beta));
    const DissatisfactionFn f = DissatisfactionFn::logistic(alpha, beta);
    const auto regions = scan_deviation_region(
        [&f](double x) { return f(x); }, bD, bN);
    REQUIRE(regions.size() == 1);
    CHECK(regions[0].lo == 0.0);
    CHECK(regions[0].hi ==
          doctest::Approx(logistic_threshold(alpha, beta, bD, bN).x_hat)
              .epsilon(1e-8));
  }
}

TEST_CASE("herding sweep flips once at the threshold") {
  const auto rows = herding_sweep(reference_template(), 2, 8);
  REQUIRE(rows.size() == 7);

  CHECK(rows[0].x == 1.0);
  CHECK(rows[0].herding_is_nash);  // n = 2: uncongested
  CHECK(rows[1].x == doctest::Approx(2.0 / 3.0));
  CHECK(!rows[1].herding_is_nash);  // n = 3: below the 0.875 threshold

  bool seen_deviated = false;
  for (const SweepRow& row : rows) {
    CHECK(row.herding_is_nash == row.threshold_prediction);
    if (seen_deviated) CHECK(!row.herding_is_nash);  // monotone in n
    seen_deviated = !row.herding_is_nash;
  }
}

TEST_CASE("sweep oracle matches the deviation test") {
  // logistic variant of the homogeneous template
  HerdingTemplate tpl = reference_template();
  tpl.player.f_peak = tpl.player.f_offpeak =
      DissatisfactionFn::logistic(1.5, 5.0);
  tpl.player.price_peak = 0.4;
  tpl.player.price_offpeak = 0.3;
  for (const SweepRow& row : herding_sweep(tpl, 2, 10))
    CHECK(row.herding_is_nash == row.threshold_prediction);
}

TEST_CASE("template preconditions") {
  HerdingTemplate tpl = reference_template();
  tpl.player.demand = 1;  // demand must equal the off-peak period count
  CHECK_THROWS_AS(homogeneous_instance(tpl, 3), std::invalid_argument);
}
