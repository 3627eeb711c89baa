#include <doctest.h>

#include <cmath>

#include "freeride/distributions.hpp"
#include "freeride/errors.hpp"

using namespace freeride;

namespace {
KeyedRng test_rng(std::uint64_t salt) {
  return KeyedRng(0xD15717u, StreamKey{salt, 0, 0, 0, Draw::Scenario});
}
}  // namespace

TEST_CASE("dist_mean closed forms") {
  CHECK(dist_mean(RewardDistribution::point_mass(0.3)) == doctest::Approx(0.3));
  CHECK(dist_mean(RewardDistribution::bernoulli(0.9)) == doctest::Approx(0.9));
  const auto base = RewardDistribution::discrete({0.0, 1.0}, {0.5, 0.5});  // mean 0.5
  CHECK(dist_mean(shift_toward_one(base, 0.1)) == doctest::Approx(0.95));
  CHECK(dist_mean(RewardDistribution::discrete({-1.0, 1.0}, {0.25, 0.75})) ==
        doctest::Approx(0.5));
}

TEST_CASE("shift_toward_one contract") {
  const auto b = RewardDistribution::bernoulli(0.5);
  // keep_prob = 1 leaves the law unchanged.
  const auto same = shift_toward_one(b, 1.0);
  CHECK(dist_mean(same) == doctest::Approx(0.5));
  KeyedRng r1 = test_rng(1), r2 = test_rng(1);
  for (int i = 0; i < 1000; ++i) {
    r2.next_double();  // the mixture consumes its keep/shift coin first
    CHECK(same.sample(r1) == b.sample(r2));
  }

  CHECK(dist_mean(shift_toward_one(RewardDistribution::bernoulli(0.5), 0.1)) ==
        doctest::Approx(0.95));

  const auto sym = shift_toward_one(RewardDistribution::point_mass(-1.0), 0.5);
  CHECK(dist_mean(sym) == doctest::Approx(0.0));
  const DiscretePoints flat = to_discrete(sym);
  REQUIRE(flat.values.size() == 2);
  CHECK(flat.values[0] == doctest::Approx(-1.0));
  CHECK(flat.values[1] == doctest::Approx(1.0));
  CHECK(flat.probs[0] == doctest::Approx(0.5));

  CHECK_THROWS_AS(shift_toward_one(b, 0.0), BadProbability);
  CHECK_THROWS_AS(shift_toward_one(b, 1.5), BadProbability);
  CHECK_THROWS_AS(shift_toward_one(b, -0.1), BadProbability);
}

TEST_CASE("shift sampling keeps the base with probability keep_prob") {
  // Base support excludes 1, so a draw of 1 is unambiguously the shift branch.
  const auto base = RewardDistribution::point_mass(-0.5);
  const double p = 0.37;
  const auto shifted = shift_toward_one(base, p);
  const int n = 100000;
  int kept = 0;
  KeyedRng rng = test_rng(2);
  for (int i = 0; i < n; ++i)
    if (shifted.sample(rng) == -0.5) ++kept;
  const double sigma = std::sqrt(p * (1.0 - p) / n);
  CHECK(std::abs(static_cast<double>(kept) / n - p) <= 3.0 * sigma);
}

TEST_CASE("empirical means match dist_mean within 4*range/sqrt(n)") {
  const int n = 100000;
  const double tol = 4.0 * 2.0 / std::sqrt(static_cast<double>(n));
  const RewardDistribution dists[] = {
      RewardDistribution::bernoulli(0.73),
      RewardDistribution::point_mass(0.21),
      RewardDistribution::discrete({-0.8, 0.1, 0.9}, {0.2, 0.5, 0.3}),
      shift_toward_one(RewardDistribution::discrete({-1.0, 0.0}, {0.5, 0.5}), 0.4),
  };
  std::uint64_t salt = 10;
  for (const auto& d : dists) {
    KeyedRng rng = test_rng(salt++);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = d.sample(rng);
      CHECK(x >= -1.0);
      CHECK(x <= 1.0);
      sum += x;
    }
    CHECK(std::abs(sum / n - dist_mean(d)) <= tol);
  }
}

TEST_CASE("reward distribution validation") {
  CHECK_THROWS_AS(RewardDistribution::bernoulli(1.2), BadProbability);
  CHECK_THROWS_AS(RewardDistribution::point_mass(1.5), BadProbability);
  CHECK_THROWS_AS(RewardDistribution::discrete({0.0, 2.0}, {0.5, 0.5}), BadProbability);
  CHECK_THROWS_AS(RewardDistribution::discrete({0.0, 0.5}, {0.6, 0.6}), BadProbability);
  CHECK_THROWS_AS(RewardDistribution::discrete({0.0}, {0.5, 0.5}), BadProbability);
}

TEST_CASE("contextual_mean inner products") {
  const double h = std::sqrt(2.0) / 2.0;
  const std::vector<double> x1 = {h, h};

  CHECK(contextual_mean(FeatureDistribution(PointMassFeature{{0.0, 0.0}}), x1) ==
        doctest::Approx(0.0));

  std::vector<double> neg = {-h, -h};
  const FeatureDistribution two(DiscreteFeature{{x1, neg}, {2.0 / 3.0, 1.0 / 3.0}});
  CHECK(contextual_mean(two, x1) == doctest::Approx(1.0 / 3.0));

  const FeatureDistribution e1(
      DiscreteFeature{{{1.0, 0.0}, {-1.0, 0.0}}, {2.0 / 3.0, 1.0 / 3.0}});
  CHECK(contextual_mean(e1, x1) == doctest::Approx(std::sqrt(2.0) / 6.0));

  CHECK_THROWS_AS(contextual_mean(two, std::vector<double>{1.0, 0.0, 0.0}), DimensionMismatch);
}

TEST_CASE("feature samples stay in the unit ball") {
  const FeatureDistribution g(SphericalGaussian{{0.4, -0.3, 0.2}, 0.1});
  KeyedRng rng = test_rng(20);
  for (int i = 0; i < 20000; ++i) {
    const auto theta = g.sample(rng);
    CHECK(norm2(theta) <= 1.0 + 1e-12);
  }
}

TEST_CASE("zero-mean gaussian features have near-zero empirical mean") {
  const FeatureDistribution g(SphericalGaussian{{0.0, 0.0}, 0.1});
  KeyedRng rng = test_rng(21);
  const int n = 100000;
  double s0 = 0.0, s1 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto theta = g.sample(rng);
    s0 += theta[0];
    s1 += theta[1];
  }
  const double tol = 4.0 * 2.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(s0 / n) <= tol);
  CHECK(std::abs(s1 / n) <= tol);
}

TEST_CASE("feature validation rejects out-of-ball support") {
  CHECK_THROWS_AS(FeatureDistribution(PointMassFeature{{1.2, 0.0}}), BadProbability);
  CHECK_THROWS_AS(FeatureDistribution(DiscreteFeature{{{0.9, 0.9}}, {1.0}}), BadProbability);
  CHECK_THROWS_AS(FeatureDistribution(SphericalGaussian{{0.0}, -0.1}), BadProbability);
}
