#include "freeride/freeriders.hpp"

#include <algorithm>
#include <cmath>

#include "freeride/errors.hpp"

namespace freeride {

const char* to_string(Visibility v) {
  switch (v) {
    case Visibility::None: return "none";
    case Visibility::ActionsOnly: return "actions_only";
    case Visibility::ActionsRewards: return "actions_rewards";
    case Visibility::Full: return "full";
  }
  return "?";
}

ObservedHistory filter_history(const History& h, Visibility level,
                               const std::vector<std::vector<double>>* contexts) {
  ObservedHistory out;
  out.level = level;
  if (level == Visibility::None) return out;
  out.per_player.resize(h.num_players());
  for (std::size_t p = 0; p < h.num_players(); ++p) {
    out.per_player[p].reserve(h.rounds(p));
    for (std::uint64_t t = 1; t <= h.rounds(p); ++t) {
      const RoundRecord& rec = h.record(p, t);
      ObservedRecord o;
      o.arm = rec.arm;
      if (visibility_at_least(level, Visibility::ActionsRewards)) o.reward = rec.reward;
      out.per_player[p].push_back(o);
    }
  }
  if (level == Visibility::Full && contexts) out.contexts = *contexts;
  return out;
}

// ---------------------------------------------------------------------------

CountGreedy::CountGreedy(std::size_t num_arms, std::size_t target_player)
    : target_(target_player), target_counts_(num_arms, 0) {}

std::size_t CountGreedy::choose(std::uint64_t /*t*/, const ObservationView& others,
                                KeyedRng& /*rng*/) {
  const std::uint64_t upto = others.rounds(target_);
  while (scanned_ < upto) {
    scanned_ += 1;
    target_counts_[others.action(target_, scanned_)] += 1;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < target_counts_.size(); ++i)
    if (target_counts_[i] > target_counts_[best]) best = i;
  return best;
}

// ---------------------------------------------------------------------------

SampleAugmentingMeanGreedy::SampleAugmentingMeanGreedy(std::size_t num_arms,
                                                       std::size_t target_player,
                                                       double gamma)
    : k_(num_arms), target_(target_player), gamma_(gamma),
      prefix_(num_arms, std::vector<double>{0.0}),
      nu_(num_arms, 0.0), needed_(num_arms, 0), aug_arm_(num_arms) {}

void SampleAugmentingMeanGreedy::sync(const ObservationView& others) {
  const std::uint64_t upto = others.rounds(target_);
  while (scanned_ < upto) {
    scanned_ += 1;
    const std::uint32_t arm = others.action(target_, scanned_);
    const double r = others.reward(target_, scanned_);
    prefix_[arm].push_back(prefix_[arm].back() + r);
  }
}

void SampleAugmentingMeanGreedy::plan_epoch(std::uint64_t j) {
  epoch_ = j;
  s_j_ = static_cast<std::uint64_t>(std::ceil(gamma_ * static_cast<double>(j)));
  committed_.reset();
  aug_arm_ = k_;
  for (std::size_t i = 0; i < k_; ++i) {
    const std::uint64_t have = prefix_[i].size() - 1;  // target's sample count
    if (s_j_ == 0) {
      nu_[i] = 0.0;  // empty mean
      needed_[i] = 0;
    } else if (have >= s_j_) {
      nu_[i] = prefix_[i][s_j_] / static_cast<double>(s_j_);
      needed_[i] = 0;
    } else {
      nu_[i] = prefix_[i][have] / static_cast<double>(s_j_);
      needed_[i] = s_j_ - have;
      if (aug_arm_ == k_) aug_arm_ = i;
    }
  }
}

std::size_t SampleAugmentingMeanGreedy::choose(std::uint64_t t, const ObservationView& others,
                                               KeyedRng& /*rng*/) {
  sync(others);
  const std::uint64_t j = epoch_of(t);
  if (!epoch_ || *epoch_ != j) plan_epoch(j);
  if (aug_arm_ < k_) return aug_arm_;
  if (!committed_) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < k_; ++i)
      if (nu_[i] > nu_[best]) best = i;
    committed_ = best;
  }
  return *committed_;
}

void SampleAugmentingMeanGreedy::observe_own(std::size_t arm, double reward) {
  if (aug_arm_ < k_ && arm == aug_arm_) {
    nu_[arm] += reward / static_cast<double>(s_j_);
    if (--needed_[arm] == 0) {
      while (aug_arm_ < k_ && needed_[aug_arm_] == 0) ++aug_arm_;
    }
  }
}

// ---------------------------------------------------------------------------

UcbMeanGreedy::UcbMeanGreedy(std::size_t num_arms, std::size_t num_players, double gamma,
                             std::vector<double> coefficients)
    : k_(num_arms), n_(num_players), gamma_(gamma), coeffs_(std::move(coefficients)),
      epoch_counts_(num_arms, 0), epoch_sums_(num_arms, 0.0) {
  if (coeffs_.size() != n_ - 1)
    throw CoefficientMismatch("need one coefficient per player 2..n");
  prefix_.resize(n_);
  scanned_.assign(n_, 0);
  for (std::size_t p = 1; p < n_; ++p)
    prefix_[p].assign(k_, std::vector<double>{0.0});
}

void UcbMeanGreedy::sync(const ObservationView& others) {
  for (std::size_t p = 1; p < n_; ++p) {
    const std::uint64_t upto = others.rounds(p);
    while (scanned_[p] < upto) {
      scanned_[p] += 1;
      const std::uint32_t arm = others.action(p, scanned_[p]);
      const double r = others.reward(p, scanned_[p]);
      prefix_[p][arm].push_back(prefix_[p][arm].back() + r);
    }
  }
}

std::vector<double> UcbMeanGreedy::combined_estimates(std::uint64_t s) const {
  std::vector<double> est(k_, 0.0);
  if (s == 0) return est;
  for (std::size_t p = 1; p < n_; ++p)
    for (std::size_t i = 0; i < k_; ++i)
      est[i] += coeffs_[p - 1] * prefix_[p][i][s] / static_cast<double>(s);
  return est;
}

std::size_t UcbMeanGreedy::choose(std::uint64_t t, const ObservationView& others,
                                  KeyedRng& /*rng*/) {
  sync(others);
  const std::uint64_t j = epoch_of(t);
  if (!epoch_ || *epoch_ != j) {
    epoch_ = j;
    const double need = gamma_ * static_cast<double>(j);
    s_holds_ = true;
    for (std::size_t p = 1; p < n_ && s_holds_; ++p)
      for (std::size_t i = 0; i < k_; ++i) {
        const auto have = static_cast<double>(prefix_[p][i].size() - 1);
        if (have < need) {
          s_holds_ = false;
          break;
        }
      }
    if (s_holds_) {
      const auto s = static_cast<std::uint64_t>(std::ceil(need));
      const std::vector<double> est = combined_estimates(s);
      std::size_t best = 0;
      for (std::size_t i = 1; i < k_; ++i)
        if (est[i] > est[best]) best = i;
      committed_ = best;
    } else {
      // Start a fresh 2-UCB run over this epoch's own history only.
      std::fill(epoch_counts_.begin(), epoch_counts_.end(), 0);
      std::fill(epoch_sums_.begin(), epoch_sums_.end(), 0.0);
      epoch_rounds_ = 0;
    }
  }
  if (s_holds_) return committed_;
  std::vector<double> means(k_);
  for (std::size_t i = 0; i < k_; ++i)
    means[i] = epoch_counts_[i] == 0 ? 0.0 : epoch_sums_[i] / static_cast<double>(epoch_counts_[i]);
  return alpha_ucb_choose(epoch_counts_, means, epoch_rounds_, 2.0);
}

void UcbMeanGreedy::observe_own(std::size_t arm, double reward) {
  if (s_holds_) return;
  epoch_counts_[arm] += 1;
  epoch_sums_[arm] += reward;
  epoch_rounds_ += 1;
}

}  // namespace freeride
