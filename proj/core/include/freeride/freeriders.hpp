#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "freeride/epochs.hpp"
#include "freeride/observation.hpp"
#include "freeride/policies.hpp"
#include "freeride/rng.hpp"

namespace freeride {

// A policy that may read (a filtered view of) other players' histories in
// addition to its own. Wired as player 1 by the engine.
class FreeRiderPolicy {
 public:
  virtual ~FreeRiderPolicy() = default;
  virtual Visibility required_visibility() const = 0;
  virtual std::size_t choose(std::uint64_t t, const ObservationView& others, KeyedRng& rng) = 0;
  virtual void observe_own(std::size_t arm, double reward) = 0;
};

// Always pulls the arm the target player has pulled most often so far
// (ties to the lowest index). Needs actions only.
class CountGreedy final : public FreeRiderPolicy {
 public:
  CountGreedy(std::size_t num_arms, std::size_t target_player);

  Visibility required_visibility() const override { return Visibility::ActionsOnly; }
  std::size_t choose(std::uint64_t t, const ObservationView& others, KeyedRng& rng) override;
  void observe_own(std::size_t arm, double reward) override {
    (void)arm;
    (void)reward;
  }

 private:
  std::size_t target_;
  std::vector<std::uint64_t> target_counts_;
  std::uint64_t scanned_ = 0;
};

// Doubling epochs; in epoch j it wants s_j = ceil(gamma * j) samples of every
// arm. Arms the target has already sampled s_j times use the mean of the
// target's first s_j samples; under-sampled arms are topped up with the free
// rider's own pulls before committing to the best estimate for the rest of
// the epoch. If the epoch ends mid-augmentation the partial estimates are
// discarded. Needs actions and rewards.
class SampleAugmentingMeanGreedy final : public FreeRiderPolicy {
 public:
  SampleAugmentingMeanGreedy(std::size_t num_arms, std::size_t target_player, double gamma);

  Visibility required_visibility() const override { return Visibility::ActionsRewards; }
  std::size_t choose(std::uint64_t t, const ObservationView& others, KeyedRng& rng) override;
  void observe_own(std::size_t arm, double reward) override;

  // Finalized estimates of the current epoch (for inspection/tests).
  const std::vector<double>& estimates() const { return nu_; }
  bool augmenting() const { return aug_arm_ < k_; }

 private:
  void sync(const ObservationView& others);
  void plan_epoch(std::uint64_t j);

  std::size_t k_;
  std::size_t target_;
  double gamma_;

  // Prefix sums of the target's rewards per arm, in the target's
  // chronological order; prefix_[i][n] = sum of the first n samples.
  std::vector<std::vector<double>> prefix_;
  std::uint64_t scanned_ = 0;

  std::optional<std::uint64_t> epoch_;
  std::uint64_t s_j_ = 0;
  std::vector<double> nu_;
  std::vector<std::uint64_t> needed_;  // own pulls still owed per arm
  std::size_t aug_arm_ = 0;            // == k_ when augmentation is done
  std::optional<std::size_t> committed_;
};

// Full-information contextual free riding: if every other player has sampled
// every arm at least gamma*j times before epoch j, pull the argmax of the
// c-weighted combination of their per-arm sample means (first ceil(gamma*j)
// samples each); otherwise play 2-UCB over its own actions and rewards from
// the current epoch only.
class UcbMeanGreedy final : public FreeRiderPolicy {
 public:
  // coefficients[p-2] weights player p's estimates (players 2..n).
  UcbMeanGreedy(std::size_t num_arms, std::size_t num_players, double gamma,
                std::vector<double> coefficients);

  Visibility required_visibility() const override { return Visibility::Full; }
  std::size_t choose(std::uint64_t t, const ObservationView& others, KeyedRng& rng) override;
  void observe_own(std::size_t arm, double reward) override;

  const std::vector<double>& coefficients() const { return coeffs_; }
  bool estimates_active() const { return s_holds_; }

  // c-weighted combination of the other players' first-s-sample means.
  std::vector<double> combined_estimates(std::uint64_t s) const;

 private:
  void sync(const ObservationView& others);

  std::size_t k_;
  std::size_t n_;
  double gamma_;
  std::vector<double> coeffs_;

  std::vector<std::vector<std::vector<double>>> prefix_;  // [player][arm] prefix sums
  std::vector<std::uint64_t> scanned_;

  std::optional<std::uint64_t> epoch_;
  bool s_holds_ = false;
  std::size_t committed_ = 0;
  // Fallback 2-UCB state, reset at every epoch start.
  std::vector<std::uint64_t> epoch_counts_;
  std::vector<double> epoch_sums_;
  std::uint64_t epoch_rounds_ = 0;
};

}  // namespace freeride
