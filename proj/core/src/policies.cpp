#include "freeride/policies.hpp"

#include <algorithm>
#include <cmath>

#include "freeride/epochs.hpp"
#include "freeride/errors.hpp"

namespace freeride {

double ucb_index(double mean, std::uint64_t count, std::uint64_t t, double alpha) {
  if (count == 0) throw ZeroCount("ucb_index needs count >= 1");
  return mean + std::sqrt(alpha * std::log(static_cast<double>(t) + 1.0) /
                          (2.0 * static_cast<double>(count)));
}

std::size_t alpha_ucb_choose(std::span<const std::uint64_t> counts,
                             std::span<const double> means,
                             std::uint64_t t, double alpha) {
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] == 0) return i;
  std::size_t best = 0;
  double best_index = ucb_index(means[0], counts[0], t, alpha);
  for (std::size_t i = 1; i < counts.size(); ++i) {
    const double idx = ucb_index(means[i], counts[i], t, alpha);
    if (idx > best_index) {
      best_index = idx;
      best = i;
    }
  }
  return best;
}

namespace {
double mean_or_zero(std::uint64_t count, double sum) {
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}
}  // namespace

std::size_t argmax_mean(std::span<const std::uint64_t> counts, std::span<const double> sums) {
  std::size_t best = 0;
  double best_mean = mean_or_zero(counts[0], sums[0]);
  for (std::size_t i = 1; i < counts.size(); ++i) {
    const double m = mean_or_zero(counts[i], sums[i]);
    if (m > best_mean) {
      best_mean = m;
      best = i;
    }
  }
  return best;
}

std::size_t argmin_mean(std::span<const std::uint64_t> counts, std::span<const double> sums) {
  std::size_t best = 0;
  double best_mean = mean_or_zero(counts[0], sums[0]);
  for (std::size_t i = 1; i < counts.size(); ++i) {
    const double m = mean_or_zero(counts[i], sums[i]);
    if (m < best_mean) {
      best_mean = m;
      best = i;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

AlphaUcb::AlphaUcb(std::size_t num_arms, double alpha)
    : alpha_(alpha), counts_(num_arms, 0), sums_(num_arms, 0.0) {}

std::size_t AlphaUcb::choose(std::uint64_t /*t*/, KeyedRng& /*rng*/) {
  return alpha_ucb_choose(counts_, sample_means(), rounds_, alpha_);
}

void AlphaUcb::observe(std::size_t arm, double reward) {
  counts_[arm] += 1;
  sums_[arm] += reward;
  rounds_ += 1;
}

std::vector<double> AlphaUcb::sample_means() const {
  std::vector<double> m(counts_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = mean_or_zero(counts_[i], sums_[i]);
  return m;
}

// ---------------------------------------------------------------------------

EpochExploreThenCommit::EpochExploreThenCommit(std::size_t num_arms, double gamma)
    : gamma_(gamma), k_(num_arms), counts_(num_arms, 0),
      epoch_counts_(num_arms, 0), epoch_sums_(num_arms, 0.0) {}

void EpochExploreThenCommit::start_epoch(std::uint64_t j) {
  epoch_ = j;
  quota_ = static_cast<std::uint64_t>(
      std::ceil(gamma_ * (static_cast<double>(j) + 2.0)));
  if (quota_ == 0) quota_ = 1;
  explore_arm_ = 0;
  explore_done_ = 0;
  std::fill(epoch_counts_.begin(), epoch_counts_.end(), 0);
  std::fill(epoch_sums_.begin(), epoch_sums_.end(), 0.0);
  committed_.reset();
}

std::size_t EpochExploreThenCommit::choose(std::uint64_t t, KeyedRng& /*rng*/) {
  const std::uint64_t j = epoch_of(t);
  if (!epoch_ || *epoch_ != j) start_epoch(j);
  if (explore_arm_ < k_) return explore_arm_;
  if (!committed_) committed_ = argmax_mean(epoch_counts_, epoch_sums_);
  return *committed_;
}

void EpochExploreThenCommit::observe(std::size_t arm, double reward) {
  counts_[arm] += 1;
  if (explore_arm_ < k_ && arm == explore_arm_) {
    epoch_counts_[arm] += 1;
    epoch_sums_[arm] += reward;
    if (++explore_done_ >= quota_) {
      explore_arm_ += 1;
      explore_done_ = 0;
    }
  }
}

// ---------------------------------------------------------------------------

GiveUpUcb::GiveUpUcb(std::size_t num_arms, double alpha)
    : alpha_(alpha), counts_(num_arms, 0), sums_(num_arms, 0.0) {}

std::size_t GiveUpUcb::choose(std::uint64_t t, KeyedRng& rng) {
  if (t == next_boundary_) {
    const double u = rng.next_double();
    giving_up_ = u < std::pow(3.0, -static_cast<double>(epoch_index_));
    if (giving_up_) giveup_arm_ = argmin_mean(counts_, sums_);
    next_boundary_ *= 3;
    epoch_index_ += 1;
  }
  if (giving_up_) return giveup_arm_;
  std::vector<double> means(counts_.size());
  for (std::size_t i = 0; i < means.size(); ++i) means[i] = mean_or_zero(counts_[i], sums_[i]);
  return alpha_ucb_choose(counts_, means, rounds_, alpha_);
}

void GiveUpUcb::observe(std::size_t arm, double reward) {
  counts_[arm] += 1;
  sums_[arm] += reward;
  rounds_ += 1;
}

}  // namespace freeride
