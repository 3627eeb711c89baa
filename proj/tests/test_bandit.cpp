#include <doctest.h>

#include <cmath>

#include "freeride/bandit.hpp"
#include "freeride/errors.hpp"
#include "freeride/theory.hpp"

using namespace freeride;

TEST_CASE("gap over the ten-armed Bernoulli ladder") {
  std::vector<RewardDistribution> arms;
  for (int i = 0; i < 10; ++i) arms.push_back(RewardDistribution::bernoulli(0.1 * i));
  const StochasticBandit b(std::move(arms));
  CHECK(b.best_arm() == 9);  // player-facing arm 10
  CHECK(b.gap() == doctest::Approx(0.1));
  CHECK(b.deltas()[9] == doctest::Approx(0.0));
  CHECK(b.deltas()[0] == doctest::Approx(0.9));
}

TEST_CASE("gap on a two-point extreme") {
  const StochasticBandit b({RewardDistribution::point_mass(1.0),
                            RewardDistribution::point_mass(-1.0)});
  CHECK(b.best_arm() == 0);
  CHECK(b.gap() == doctest::Approx(2.0));
}

TEST_CASE("tied optimum is rejected at construction") {
  CHECK_THROWS_AS(StochasticBandit({RewardDistribution::point_mass(0.5),
                                    RewardDistribution::point_mass(0.5)}),
                  TiedOptimum);
  const std::vector<double> means = {0.5, 0.5};
  CHECK_THROWS_AS(gap_of(means), TiedOptimum);
}

TEST_CASE("induced views of the needrewards construction") {
  const NeedRewardsPair pair = build_needrewards_pair();
  const double r6 = std::sqrt(2.0) / 6.0;

  const InducedView p1 = induced_stochastic(pair.f, 0);
  REQUIRE(p1.means.size() == 4);
  CHECK(p1.means[0] == doctest::Approx(1.0 / 3.0));
  CHECK(p1.means[1] == doctest::Approx(r6));
  CHECK(p1.means[2] == doctest::Approx(r6));
  CHECK(p1.means[3] == doctest::Approx(0.0));
  CHECK_FALSE(p1.tied_optimum);
  CHECK(p1.best_arm == 0);

  const InducedView p2 = induced_stochastic(pair.f, 1);
  CHECK(p2.means[0] == doctest::Approx(r6));
  CHECK(p2.means[1] == doctest::Approx(1.0 / 3.0));
  CHECK(p2.means[2] == doctest::Approx(0.0));
  CHECK(p2.means[3] == doctest::Approx(0.0));

  // Under the primed profile player 1's arms 2 and 3 tie at sqrt(2)/6; the
  // view flags the tie and the simulation may proceed.
  const InducedView p1p = induced_stochastic(pair.f_prime, 0);
  CHECK(p1p.means[0] == doctest::Approx(-1.0 / 3.0));
  CHECK(p1p.tied_optimum);
  CHECK(p1p.best_arm == 1);
  CHECK(p1p.deltas[2] == doctest::Approx(0.0));
}

TEST_CASE("induced views of the needcontexts construction") {
  const NeedContextsPair pair = build_needcontexts_pair();
  const InducedView a1 = pair.a.induced(0);
  CHECK(a1.means[0] == doctest::Approx(0.0));
  CHECK(a1.means[1] == doctest::Approx(-1.0 / 3.0));
  const InducedView b1 = pair.b.induced(0);
  CHECK(b1.means[1] == doctest::Approx(1.0 / 3.0));
  const InducedView a2 = pair.a.induced(1);
  const InducedView b2 = pair.b.induced(1);
  CHECK(a2.means[1] == doctest::Approx(-1.0 / 3.0));
  CHECK(b2.means[1] == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("zero context induces all-zero means") {
  const FeatureDistribution f1(PointMassFeature{{0.5, 0.0}});
  const FeatureDistribution f2(PointMassFeature{{0.0, 0.5}});
  const ContextualBandit cb({f1, f2}, {{0.0, 0.0}, {1.0, 0.0}});
  const InducedView v = cb.induced(0);
  CHECK(v.means[0] == doctest::Approx(0.0));
  CHECK(v.means[1] == doctest::Approx(0.0));
  CHECK(v.tied_optimum);
}

TEST_CASE("contextual construction checks dimensions") {
  const FeatureDistribution f1(PointMassFeature{{0.5, 0.0}});
  const FeatureDistribution f2(PointMassFeature{{0.5}});
  CHECK_THROWS_AS(ContextualBandit({f1, f2}, {{1.0, 0.0}}), DimensionMismatch);
  const FeatureDistribution f3(PointMassFeature{{0.0, 0.5}});
  CHECK_THROWS_AS(ContextualBandit({f1, f3}, {{1.0}}), DimensionMismatch);
}
