#include "freeride/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "freeride/errors.hpp"
#include "freeride/policies.hpp"
#include "freeride/rng.hpp"

namespace freeride {

double gamma_threshold_stochastic(double delta) {
  if (!(delta > 0.0 && delta <= 2.0)) throw BadGap("gap must be in (0, 2]");
  return 2.0 * std::log(2.0) / (delta * delta);
}

double gamma_threshold_contextual(std::span<const double> c, double delta) {
  if (!(delta > 0.0)) throw BadGap("gap must be positive");
  double cc = 0.0;
  for (double v : c) cc += v * v;
  return 8.0 * cc * std::log(2.0) / (delta * delta);
}

ShiftConstants shift_constants(double mu_star, double mu_i) {
  if (!(mu_star < 1.0)) throw DegenerateOptimum("mu_star must be < 1");
  if (!(mu_i <= mu_star)) throw BadGap("mu_i must not exceed mu_star");
  ShiftConstants out;
  out.p_i = (1.0 - mu_star) / (2.0 * (1.0 - mu_i));
  out.c_i = std::log(out.p_i);
  out.shifted_mean = (1.0 + mu_star) / 2.0;
  return out;
}

double ucb_count_floor(double alpha, double eta, std::size_t k, double t) {
  if (!(eta > 2.0)) throw BadEta("eta must exceed 2");
  return alpha * std::log(t) /
         (2.0 * eta * eta * static_cast<double>(k) * static_cast<double>(k));
}

double kl_discrete(const DiscretePoints& P, const DiscretePoints& Q) {
  std::map<double, double> p, q;
  for (std::size_t i = 0; i < P.values.size(); ++i) p[P.values[i]] += P.probs[i];
  for (std::size_t i = 0; i < Q.values.size(); ++i) q[Q.values[i]] += Q.probs[i];
  double kl = 0.0;
  for (const auto& [x, px] : p) {
    if (px <= 0.0) continue;
    const auto it = q.find(x);
    if (it == q.end() || it->second <= 0.0)
      throw SupportMismatch("Q assigns zero mass to a point in P's support");
    kl += px * std::log(px / it->second);
  }
  return kl;
}

double bh_lower_bound(double T) { return (std::log(T / 12.0) + 1.0) / 2.0; }

NeedContextsPair build_needcontexts_pair() {
  // F1: point mass at 0. F2 takes +1 w.p. 1/3 and -1 w.p. 2/3; the primed F2
  // takes +1 w.p. 2/3. Contexts (1, 1) and (1, -1).
  FeatureDistribution f1{PointMassFeature{{0.0}}};
  FeatureDistribution f2{DiscreteFeature{{{1.0}, {-1.0}}, {1.0 / 3.0, 2.0 / 3.0}}};
  // Support listed negated so the same uniform draw lands on the opposite
  // sign, which keeps player 2's reward stream identical across the pair.
  FeatureDistribution f2p{DiscreteFeature{{{-1.0}, {1.0}}, {1.0 / 3.0, 2.0 / 3.0}}};
  ContextualBandit a({f1, f2}, {{1.0}, {1.0}});
  ContextualBandit b({f1, f2p}, {{1.0}, {-1.0}});
  return NeedContextsPair{std::move(a), std::move(b)};
}

NeedRewardsPair build_needrewards_pair() {
  const double h = std::sqrt(2.0) / 2.0;
  const std::vector<std::vector<double>> xs = {{h, h}, {1.0, 0.0}, {0.0, 1.0}};
  auto two_point = [](const std::vector<double>& x, double p_plus) {
    std::vector<double> neg(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) neg[c] = -x[c];
    return FeatureDistribution(DiscreteFeature{{x, neg}, {p_plus, 1.0 - p_plus}});
  };
  std::vector<FeatureDistribution> arms;
  for (const auto& x : xs) arms.push_back(two_point(x, 2.0 / 3.0));
  arms.push_back(FeatureDistribution(PointMassFeature{{0.0, 0.0}}));
  std::vector<FeatureDistribution> arms_prime = arms;
  arms_prime[0] = two_point(xs[0], 1.0 / 3.0);
  ContextualBandit f(std::move(arms), xs);
  ContextualBandit fp(std::move(arms_prime), xs);
  return NeedRewardsPair{std::move(f), std::move(fp)};
}

FloorReport verify_ucb_count_floor(const StochasticBandit& bandit, double alpha, double eta,
                                   std::uint64_t t0, std::uint64_t T, std::uint64_t seeds,
                                   std::uint64_t root_seed) {
  const std::size_t k = bandit.num_arms();
  FloorReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < seeds; ++s) {
    AlphaUcb policy(k, alpha);
    for (std::uint64_t t = 1; t <= T; ++t) {
      if (t >= t0) {
        const auto counts = policy.counts();
        const std::uint64_t min_count = *std::min_element(counts.begin(), counts.end());
        const double floor = ucb_count_floor(alpha, eta, k, static_cast<double>(t));
        const double margin = static_cast<double>(min_count) - floor;
        report.worst_margin = std::min(report.worst_margin, margin);
        if (margin < 0.0) report.violations += 1;
      }
      KeyedRng policy_rng(root_seed, StreamKey{s, 1, t, 0, Draw::Policy});
      const std::size_t arm = policy.choose(t, policy_rng);
      KeyedRng reward_rng(root_seed, StreamKey{s, 1, t, arm + 1, Draw::Reward});
      policy.observe(arm, bandit.sample(arm, reward_rng));
    }
  }
  return report;
}

}  // namespace freeride
