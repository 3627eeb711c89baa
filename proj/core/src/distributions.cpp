#include "freeride/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "freeride/errors.hpp"

namespace freeride {

namespace {

constexpr double kSimplexTol = 1e-12;
constexpr double kSupportTol = 1e-12;

void check_simplex(const std::vector<double>& probs) {
  if (probs.empty()) throw BadProbability("empty probability vector");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw BadProbability("negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexTol)
    throw BadProbability("probabilities do not sum to 1");
}

void check_reward_support(double v) {
  if (!(v >= -1.0 - kSupportTol && v <= 1.0 + kSupportTol))
    throw BadProbability("reward support point outside [-1, 1]");
}

std::size_t pick_index(const std::vector<double>& probs, double u) {
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return i;
  }
  return probs.size() - 1;
}

}  // namespace

RewardDistribution::RewardDistribution(Bernoulli b) : node_(b) {
  if (!(b.p >= 0.0 && b.p <= 1.0)) throw BadProbability("Bernoulli parameter outside [0, 1]");
}

RewardDistribution::RewardDistribution(DiscretePoints d) : node_(std::move(d)) {
  const auto& dp = std::get<DiscretePoints>(node_);
  if (dp.values.size() != dp.probs.size())
    throw BadProbability("discrete values/probs length mismatch");
  check_simplex(dp.probs);
  for (double v : dp.values) check_reward_support(v);
}

RewardDistribution::RewardDistribution(PointMass m) : node_(m) {
  check_reward_support(m.v);
}

RewardDistribution::RewardDistribution(ShiftedMixture s) : node_(std::move(s)) {
  const auto& sm = std::get<ShiftedMixture>(node_);
  if (!sm.base) throw BadProbability("shifted mixture without base");
  if (!(sm.keep_prob > 0.0 && sm.keep_prob <= 1.0))
    throw BadProbability("keep_prob outside (0, 1]");
}

RewardDistribution RewardDistribution::bernoulli(double p) { return RewardDistribution(Bernoulli{p}); }

RewardDistribution RewardDistribution::point_mass(double v) { return RewardDistribution(PointMass{v}); }

RewardDistribution RewardDistribution::discrete(std::vector<double> values, std::vector<double> probs) {
  return RewardDistribution(DiscretePoints{std::move(values), std::move(probs)});
}

double RewardDistribution::mean() const {
  struct Visitor {
    double operator()(const Bernoulli& b) const { return b.p; }
    double operator()(const DiscretePoints& d) const {
      double m = 0.0;
      for (std::size_t i = 0; i < d.values.size(); ++i) m += d.values[i] * d.probs[i];
      return m;
    }
    double operator()(const PointMass& m) const { return m.v; }
    double operator()(const ShiftedMixture& s) const {
      return s.keep_prob * s.base->mean() + (1.0 - s.keep_prob);
    }
  };
  return std::visit(Visitor{}, node_);
}

double RewardDistribution::sample(KeyedRng& rng) const {
  struct Visitor {
    KeyedRng& rng;
    double operator()(const Bernoulli& b) const { return rng.next_double() < b.p ? 1.0 : 0.0; }
    double operator()(const DiscretePoints& d) const {
      return d.values[pick_index(d.probs, rng.next_double())];
    }
    double operator()(const PointMass& m) const { return m.v; }
    double operator()(const ShiftedMixture& s) const {
      if (rng.next_double() < s.keep_prob) return s.base->sample(rng);
      return 1.0;
    }
  };
  return std::visit(Visitor{rng}, node_);
}

double dist_mean(const RewardDistribution& d) { return d.mean(); }

RewardDistribution shift_toward_one(const RewardDistribution& d, double keep_prob) {
  return RewardDistribution(
      ShiftedMixture{std::make_shared<const RewardDistribution>(d), keep_prob});
}

namespace {

void flatten(const RewardDistribution& d, double scale, std::map<double, double>& acc) {
  struct Visitor {
    double scale;
    std::map<double, double>& acc;
    void operator()(const Bernoulli& b) const {
      acc[0.0] += scale * (1.0 - b.p);
      acc[1.0] += scale * b.p;
    }
    void operator()(const DiscretePoints& d) const {
      for (std::size_t i = 0; i < d.values.size(); ++i) acc[d.values[i]] += scale * d.probs[i];
    }
    void operator()(const PointMass& m) const { acc[m.v] += scale; }
    void operator()(const ShiftedMixture& s) const {
      flatten(*s.base, scale * s.keep_prob, acc);
      acc[1.0] += scale * (1.0 - s.keep_prob);
    }
  };
  std::visit(Visitor{scale, acc}, d.node());
}

}  // namespace

DiscretePoints to_discrete(const RewardDistribution& d) {
  std::map<double, double> acc;
  flatten(d, 1.0, acc);
  DiscretePoints out;
  for (const auto& [v, p] : acc) {
    if (p <= 0.0) continue;
    out.values.push_back(v);
    out.probs.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ in dot product");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

namespace {

void check_ball(const std::vector<double>& v) {
  if (norm2(v) > 1.0 + 1e-9) throw BadProbability("feature support point outside the unit ball");
}

}  // namespace

FeatureDistribution::FeatureDistribution(DiscreteFeature d) : node_(std::move(d)) {
  const auto& df = std::get<DiscreteFeature>(node_);
  if (df.points.size() != df.probs.size())
    throw BadProbability("discrete feature points/probs length mismatch");
  check_simplex(df.probs);
  if (df.points.empty()) throw BadProbability("discrete feature without points");
  const std::size_t d0 = df.points.front().size();
  for (const auto& p : df.points) {
    if (p.size() != d0) throw DimensionMismatch("discrete feature points of mixed dimension");
    check_ball(p);
  }
}

FeatureDistribution::FeatureDistribution(PointMassFeature m) : node_(std::move(m)) {
  check_ball(std::get<PointMassFeature>(node_).v);
}

FeatureDistribution::FeatureDistribution(SphericalGaussian g) : node_(std::move(g)) {
  const auto& sg = std::get<SphericalGaussian>(node_);
  if (!(sg.variance >= 0.0)) throw BadProbability("negative Gaussian variance");
  check_ball(sg.mean);
}

std::size_t FeatureDistribution::dimension() const {
  struct Visitor {
    std::size_t operator()(const DiscreteFeature& d) const { return d.points.front().size(); }
    std::size_t operator()(const PointMassFeature& m) const { return m.v.size(); }
    std::size_t operator()(const SphericalGaussian& g) const { return g.mean.size(); }
  };
  return std::visit(Visitor{}, node_);
}

std::vector<double> FeatureDistribution::mean() const {
  struct Visitor {
    std::vector<double> operator()(const DiscreteFeature& d) const {
      std::vector<double> m(d.points.front().size(), 0.0);
      for (std::size_t i = 0; i < d.points.size(); ++i)
        for (std::size_t c = 0; c < m.size(); ++c) m[c] += d.probs[i] * d.points[i][c];
      return m;
    }
    std::vector<double> operator()(const PointMassFeature& m) const { return m.v; }
    std::vector<double> operator()(const SphericalGaussian& g) const { return g.mean; }
  };
  return std::visit(Visitor{}, node_);
}

std::vector<double> FeatureDistribution::sample(KeyedRng& rng) const {
  struct Visitor {
    KeyedRng& rng;
    std::vector<double> operator()(const DiscreteFeature& d) const {
      return d.points[pick_index(d.probs, rng.next_double())];
    }
    std::vector<double> operator()(const PointMassFeature& m) const { return m.v; }
    std::vector<double> operator()(const SphericalGaussian& g) const {
      const double sd = std::sqrt(g.variance);
      std::vector<double> theta(g.mean.size());
      // Samples outside the unit ball are rejected and redrawn.
      for (;;) {
        double n2 = 0.0;
        for (std::size_t c = 0; c < theta.size(); ++c) {
          theta[c] = g.mean[c] + sd * rng.next_gaussian();
          n2 += theta[c] * theta[c];
        }
        if (n2 <= 1.0) return theta;
      }
    }
  };
  return std::visit(Visitor{rng}, node_);
}

double contextual_mean(const FeatureDistribution& f, std::span<const double> x) {
  const std::vector<double> m = f.mean();
  if (m.size() != x.size()) throw DimensionMismatch("context dimension mismatch");
  return dot(m, x);
}

}  // namespace freeride
