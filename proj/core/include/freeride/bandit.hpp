#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "freeride/distributions.hpp"

namespace freeride {

struct GapInfo {
  std::size_t best_arm = 0;      // 0-based index of the unique optimum
  double gap = 0.0;              // best mean minus second-best mean
  std::vector<double> deltas;    // per-arm suboptimality, deltas[best_arm] == 0
};

// Throws TiedOptimum when the argmax of means is not a singleton.
GapInfo gap_of(std::span<const double> means);

class StochasticBandit {
 public:
  // Requires k >= 2 and a unique optimal arm (TiedOptimum otherwise).
  explicit StochasticBandit(std::vector<RewardDistribution> arms);

  std::size_t num_arms() const { return arms_.size(); }
  const RewardDistribution& arm(std::size_t i) const { return arms_[i]; }
  const std::vector<double>& means() const { return means_; }
  std::size_t best_arm() const { return gap_.best_arm; }
  double gap() const { return gap_.gap; }
  const std::vector<double>& deltas() const { return gap_.deltas; }

  double sample(std::size_t arm, KeyedRng& rng) const { return arms_[arm].sample(rng); }

 private:
  std::vector<RewardDistribution> arms_;
  std::vector<double> means_;
  GapInfo gap_;
};

// Per-player view of a contextual bandit: the induced means, the optimum,
// and suboptimality gaps. A tie for the optimum is flagged, not fatal; the
// scalar gap is then taken against the best strictly suboptimal arm.
struct InducedView {
  std::vector<double> means;
  std::size_t best_arm = 0;  // lowest-index maximizer
  double gap = 0.0;
  std::vector<double> deltas;
  bool tied_optimum = false;
};

class ContextualBandit {
 public:
  ContextualBandit(std::vector<FeatureDistribution> arms,
                   std::vector<std::vector<double>> contexts);

  std::size_t num_arms() const { return arms_.size(); }
  std::size_t num_players() const { return contexts_.size(); }
  std::size_t dimension() const { return dimension_; }
  const FeatureDistribution& arm(std::size_t i) const { return arms_[i]; }
  const std::vector<std::vector<double>>& contexts() const { return contexts_; }
  const std::vector<double>& context(std::size_t player) const { return contexts_[player]; }

  std::vector<double> induced_means(std::size_t player) const;
  InducedView induced(std::size_t player) const;

  // theta ~ F_arm drawn fresh for this player, reward = <theta, x_player>.
  double sample(std::size_t player, std::size_t arm, KeyedRng& rng) const;

 private:
  std::vector<FeatureDistribution> arms_;
  std::vector<std::vector<double>> contexts_;
  std::size_t dimension_ = 0;
};

InducedView induced_stochastic(const ContextualBandit& cb, std::size_t player);

}  // namespace freeride
