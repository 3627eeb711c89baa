#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "freeride/rng.hpp"

namespace freeride {

// mean + sqrt(alpha * ln(t + 1) / (2 * count)), where t is the number of
// rounds observed so far. Throws ZeroCount when count == 0; unpulled arms are
// handled by the chooser, not here.
double ucb_index(double mean, std::uint64_t count, std::uint64_t t, double alpha);

// If any arm is unpulled, returns the lowest-indexed such arm; otherwise the
// ucb_index argmax, ties to the lowest index.
std::size_t alpha_ucb_choose(std::span<const std::uint64_t> counts,
                             std::span<const double> means,
                             std::uint64_t t, double alpha);

// argmax/argmin over sample means with the shared conventions: an unpulled
// arm counts as mean 0, ties break to the lowest index.
std::size_t argmax_mean(std::span<const std::uint64_t> counts, std::span<const double> sums);
std::size_t argmin_mean(std::span<const std::uint64_t> counts, std::span<const double> sums);

// A policy that reads only its own player's past actions and rewards.
// choose() is called once per round (t is 1-based) before the reward of that
// round exists; observe() delivers the resulting (arm, reward) pair.
class SelfReliantPolicy {
 public:
  virtual ~SelfReliantPolicy() = default;
  virtual std::size_t choose(std::uint64_t t, KeyedRng& rng) = 0;
  virtual void observe(std::size_t arm, double reward) = 0;

  virtual std::span<const std::uint64_t> counts() const = 0;
};

class AlphaUcb final : public SelfReliantPolicy {
 public:
  AlphaUcb(std::size_t num_arms, double alpha);

  std::size_t choose(std::uint64_t t, KeyedRng& rng) override;
  void observe(std::size_t arm, double reward) override;
  std::span<const std::uint64_t> counts() const override { return counts_; }

  std::vector<double> sample_means() const;

 private:
  double alpha_;
  std::vector<std::uint64_t> counts_;
  std::vector<double> sums_;
  std::uint64_t rounds_ = 0;
};

// Doubling epochs; at the start of epoch j (rounds 2^j .. 2^{j+1}-1) each arm
// is given ceil(gamma * (j + 2)) pulls in index order (truncated if the epoch
// ends first), then the arm with the best epoch sample mean is pulled for the
// remainder. Epoch statistics reset every epoch.
class EpochExploreThenCommit final : public SelfReliantPolicy {
 public:
  EpochExploreThenCommit(std::size_t num_arms, double gamma);

  std::size_t choose(std::uint64_t t, KeyedRng& rng) override;
  void observe(std::size_t arm, double reward) override;
  std::span<const std::uint64_t> counts() const override { return counts_; }

 private:
  void start_epoch(std::uint64_t j);

  double gamma_;
  std::size_t k_;
  std::vector<std::uint64_t> counts_;  // cumulative, all rounds

  std::optional<std::uint64_t> epoch_;
  std::uint64_t quota_ = 0;
  std::size_t explore_arm_ = 0;        // == k_ once exploration is done
  std::uint64_t explore_done_ = 0;     // pulls of explore_arm_ this epoch
  std::vector<std::uint64_t> epoch_counts_;
  std::vector<double> epoch_sums_;
  std::optional<std::size_t> committed_;
};

// Tripling epochs. At round 3^j the player gives up with probability 3^-j
// (epoch 0 always gives up) and then pulls the arm with the lowest sample
// mean for the whole epoch; otherwise it plays alpha-UCB for the epoch. All
// observed samples feed the shared sample means, and the UCB statistics
// persist across epochs.
class GiveUpUcb final : public SelfReliantPolicy {
 public:
  GiveUpUcb(std::size_t num_arms, double alpha);

  std::size_t choose(std::uint64_t t, KeyedRng& rng) override;
  void observe(std::size_t arm, double reward) override;
  std::span<const std::uint64_t> counts() const override { return counts_; }

  bool giving_up() const { return giving_up_; }

 private:
  double alpha_;
  std::vector<std::uint64_t> counts_;
  std::vector<double> sums_;
  std::uint64_t rounds_ = 0;

  std::uint64_t epoch_index_ = 0;
  std::uint64_t next_boundary_ = 1;  // 3^epoch_index_
  bool giving_up_ = false;
  std::size_t giveup_arm_ = 0;
};

}  // namespace freeride
