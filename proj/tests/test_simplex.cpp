#include <doctest.h>

#include <cmath>

#include "olsc/simplex.hpp"
#include "test_util.hpp"

using namespace olsc;

TEST_CASE("simplex point validation and renormalization") {
  CHECK_THROWS_AS(SimplexPoint({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(SimplexPoint({1.5, -0.5}), std::invalid_argument);
  const SimplexPoint z({0.5 + 4e-10, 0.5});
  CHECK(std::abs(z[0] + z[1] - 1.0) < 1e-15);
  const SimplexPoint u = SimplexPoint::uniform(4);
  CHECK(u[3] == doctest::Approx(0.25));
}

TEST_CASE("tv distance definition and the two positive-part formulas") {
  const SimplexPoint a({0.5, 0.5});
  CHECK(tv_distance(a, a) == 0.0);
  CHECK(tv_distance(a, SimplexPoint({0.2, 0.8})) == doctest::Approx(0.3));
  CHECK_THROWS_AS(tv_distance(a, SimplexPoint::uniform(3)), std::invalid_argument);

  Rng rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    const SimplexPoint z = testutil::random_simplex(rng, 5);
    const SimplexPoint z2 = testutil::random_simplex(rng, 5);
    double fwd = 0.0, back = 0.0, half_l1 = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      fwd += std::max(z2[i] - z[i], 0.0);
      back += std::max(z[i] - z2[i], 0.0);
      half_l1 += std::abs(z2[i] - z[i]) / 2.0;
    }
    const double tv = tv_distance(z, z2);
    CHECK(tv == doctest::Approx(fwd).epsilon(1e-12));
    CHECK(tv == doctest::Approx(back).epsilon(1e-12));
    CHECK(tv == doctest::Approx(half_l1).epsilon(1e-12));
  }
}

TEST_CASE("tv distance is a metric on random triples") {
  Rng rng(11);
  for (int rep = 0; rep < 300; ++rep) {
    const SimplexPoint x = testutil::random_simplex(rng, 4);
    const SimplexPoint y = testutil::random_simplex(rng, 4);
    const SimplexPoint w = testutil::random_simplex(rng, 4);
    CHECK(tv_distance(x, y) == tv_distance(y, x));
    CHECK(tv_distance(x, w) <= tv_distance(x, y) + tv_distance(y, w) + 1e-12);
  }
}

TEST_CASE("coupling matches the closed form on pinned examples") {
  SUBCASE("identical marginals put all mass on the diagonal") {
    const SimplexPoint z({0.3, 0.2, 0.5});
    const CouplingPlan plan = build_coupling(z, z);
    CHECK(plan.switch_prob == 0.0);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        CHECK(plan.at(i, j) == doctest::Approx(i == j ? z[i] : 0.0));
  }
  SUBCASE("two point example") {
    const CouplingPlan plan = build_coupling(SimplexPoint({0.6, 0.4}), SimplexPoint({0.4, 0.6}));
    CHECK(plan.at(0, 0) == doctest::Approx(0.4));
    CHECK(plan.at(0, 1) == doctest::Approx(0.2));
    CHECK(plan.at(1, 0) == doctest::Approx(0.0));
    CHECK(plan.at(1, 1) == doctest::Approx(0.4));
    CHECK(plan.switch_prob == doctest::Approx(0.2));
  }
  SUBCASE("disjoint supports always switch") {
    const CouplingPlan plan = build_coupling(SimplexPoint({1.0, 0.0}), SimplexPoint({0.0, 1.0}));
    CHECK(plan.switch_prob == doctest::Approx(1.0));
  }
}

TEST_CASE("coupling marginals and trace identity on 1000 random pairs") {
  Rng rng(2024);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 2 + uniform_index(rng, 5);  // N <= 6
    const SimplexPoint z = testutil::random_simplex(rng, n);
    const SimplexPoint z2 = testutil::random_simplex(rng, n);
    const CouplingPlan plan = build_coupling(z, z2);
    double total = 0.0, trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        REQUIRE(plan.at(i, j) >= 0.0);
        row += plan.at(i, j);
        col += plan.at(j, i);
        total += plan.at(i, j);
      }
      trace += plan.at(i, i);
      REQUIRE(std::abs(row - z[i]) <= 1e-9);
      REQUIRE(std::abs(col - z2[i]) <= 1e-9);
    }
    REQUIRE(std::abs(total - 1.0) <= 1e-9);
    REQUIRE(std::abs((1.0 - trace) - plan.switch_prob) <= 1e-9);
    REQUIRE(std::abs(plan.switch_prob - tv_distance(z, z2)) <= 1e-9);
  }
}

TEST_CASE("transition sampling degenerate cases") {
  Rng rng(5);
  const SimplexPoint z({0.5, 0.5});
  CHECK(transition_sample(1, z, z, rng) == 1);
  CHECK(transition_sample(0, SimplexPoint({1.0, 0.0}), SimplexPoint({0.0, 1.0}), rng) == 1);
  CHECK_THROWS_AS(transition_sample(1, SimplexPoint({1.0, 0.0}), z, rng), std::invalid_argument);
}

TEST_CASE("transition sampling switch rate matches the coupling") {
  Rng rng(42);
  const SimplexPoint z({0.6, 0.4});
  const SimplexPoint z2({0.4, 0.6});
  const int trials = 100000;
  int switches = 0;
  for (int rep = 0; rep < trials; ++rep) {
    const std::size_t start = uniform01(rng) < z[0] ? 0 : 1;
    if (transition_sample(start, z, z2, rng) != start) ++switches;
  }
  const double rate = static_cast<double>(switches) / trials;
  CHECK(std::abs(rate - 0.2) < 0.01);
}

TEST_CASE("chained transitions preserve the marginal at every step") {
  Rng rng(333);
  const std::size_t n = 5;
  const int steps = 4;
  std::vector<SimplexPoint> chain;
  Rng setup(9);
  for (int s = 0; s <= steps; ++s) chain.push_back(testutil::random_simplex(setup, n));
  const int samples = 100000;
  std::vector<std::vector<long>> counts(steps + 1, std::vector<long>(n, 0));
  for (int rep = 0; rep < samples; ++rep) {
    std::size_t a = sample_weighted(chain[0].weights(), 1.0, rng);
    ++counts[0][a];
    for (int s = 1; s <= steps; ++s) {
      a = transition_sample(a, chain[s - 1], chain[s], rng);
      ++counts[s][a];
    }
  }
  for (int s = 0; s <= steps; ++s) {
    double stat = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double expected = samples * chain[s][i];
      stat += (counts[s][i] - expected) * (counts[s][i] - expected) / expected;
    }
    CHECK(stat < testutil::chisq_crit_999(static_cast<int>(n) - 1));
  }
}

TEST_CASE("rollout realizes the fractional loss") {
  Rng rng(77);
  SUBCASE("constant point-mass play never switches") {
    std::vector<SimplexPoint> plays(20, SimplexPoint::point_mass(3, 0));
    std::vector<LossVector> losses;
    double expert0 = 0.0;
    for (int t = 0; t < 20; ++t) {
      losses.push_back(testutil::random_loss(rng, 3));
      expert0 += losses.back()[0];
    }
    const RolloutResult r = rollout(plays, losses, 2.0, rng);
    CHECK(r.switches == 0);
    CHECK(r.total_loss == doctest::Approx(expert0));
  }
  SUBCASE("single round has no switching term") {
    std::vector<SimplexPoint> plays{SimplexPoint({0.25, 0.75})};
    std::vector<LossVector> losses{LossVector({0.4, 0.9})};
    const RolloutResult r = rollout(plays, losses, 100.0, rng);
    CHECK(r.total_loss == doctest::Approx(losses[0][r.actions[0]]));
  }
  SUBCASE("length mismatch is rejected") {
    std::vector<SimplexPoint> plays{SimplexPoint::uniform(2)};
    std::vector<LossVector> losses;
    CHECK_THROWS_AS(rollout(plays, losses, 1.0, rng), std::invalid_argument);
  }
  SUBCASE("Monte-Carlo mean matches the closed-form fractional loss") {
    const std::size_t n = 3;
    const int horizon = 50;
    const double d = 2.0;
    Rng setup(4);
    std::vector<SimplexPoint> plays;
    std::vector<LossVector> losses;
    for (int t = 0; t < horizon; ++t) {
      plays.push_back(testutil::random_simplex(setup, n));
      losses.push_back(testutil::random_loss(setup, n));
    }
    double fractional = dot(losses[0], plays[0]);
    for (int t = 1; t < horizon; ++t)
      fractional += dot(losses[t], plays[t]) + d * tv_distance(plays[t - 1], plays[t]);
    const int reps = 10000;
    double sum = 0.0, sum_sq = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
      const double loss = rollout(plays, losses, d, rng).total_loss;
      sum += loss;
      sum_sq += loss * loss;
    }
    const double mean = sum / reps;
    const double var = (sum_sq - reps * mean * mean) / (reps - 1);
    const double se = std::sqrt(var / reps);
    CHECK(std::abs(mean - fractional) <= 2.0 * se + 1e-9);
  }
}
