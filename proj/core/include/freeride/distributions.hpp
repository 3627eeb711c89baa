#pragma once

#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "freeride/rng.hpp"

namespace freeride {

// ---------------------------------------------------------------------------
// Scalar reward laws, supported on [-1, 1].
// ---------------------------------------------------------------------------

struct Bernoulli {
  double p = 0.0;  // P(reward = 1); reward is 0 otherwise
};

// Finite support; sampled by CDF inversion over the points in listed order.
struct DiscretePoints {
  std::vector<double> values;
  std::vector<double> probs;
};

struct PointMass {
  double v = 0.0;
};

class RewardDistribution;

// keep_prob * base + (1 - keep_prob) * point mass at 1.
struct ShiftedMixture {
  std::shared_ptr<const RewardDistribution> base;
  double keep_prob = 1.0;
};

class RewardDistribution {
 public:
  using Node = std::variant<Bernoulli, DiscretePoints, PointMass, ShiftedMixture>;

  RewardDistribution(Bernoulli b);           // NOLINT(google-explicit-constructor)
  RewardDistribution(DiscretePoints d);      // NOLINT
  RewardDistribution(PointMass m);           // NOLINT
  RewardDistribution(ShiftedMixture s);      // NOLINT

  static RewardDistribution bernoulli(double p);
  static RewardDistribution point_mass(double v);
  static RewardDistribution discrete(std::vector<double> values, std::vector<double> probs);

  double mean() const;
  double sample(KeyedRng& rng) const;
  const Node& node() const { return node_; }

 private:
  Node node_;
};

double dist_mean(const RewardDistribution& d);

// With probability keep_prob sample d, otherwise return 1.
// Throws BadProbability unless keep_prob is in (0, 1].
RewardDistribution shift_toward_one(const RewardDistribution& d, double keep_prob);

// Flattens any reward distribution to canonical discrete form: support sorted
// ascending, duplicate values merged, zero-probability points dropped.
DiscretePoints to_discrete(const RewardDistribution& d);

// ---------------------------------------------------------------------------
// Feature laws on the d-dimensional closed unit ball.
// ---------------------------------------------------------------------------

struct DiscreteFeature {
  std::vector<std::vector<double>> points;
  std::vector<double> probs;
};

struct PointMassFeature {
  std::vector<double> v;
};

// N(mean, variance * I), rejection-resampled into the unit ball.
struct SphericalGaussian {
  std::vector<double> mean;
  double variance = 0.0;
};

class FeatureDistribution {
 public:
  using Node = std::variant<DiscreteFeature, PointMassFeature, SphericalGaussian>;

  FeatureDistribution(DiscreteFeature d);    // NOLINT
  FeatureDistribution(PointMassFeature m);   // NOLINT
  FeatureDistribution(SphericalGaussian g);  // NOLINT

  std::size_t dimension() const;
  std::vector<double> mean() const;
  std::vector<double> sample(KeyedRng& rng) const;
  const Node& node() const { return node_; }

 private:
  Node node_;
};

// <E[theta], x>. Throws DimensionMismatch if sizes differ.
double contextual_mean(const FeatureDistribution& f, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);

}  // namespace freeride
