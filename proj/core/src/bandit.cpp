#include "freeride/bandit.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "freeride/errors.hpp"

namespace freeride {

GapInfo gap_of(std::span<const double> means) {
  if (means.size() < 2) throw TiedOptimum("need at least two arms to define a gap");
  std::size_t best = 0;
  for (std::size_t i = 1; i < means.size(); ++i)
    if (means[i] > means[best]) best = i;
  double second = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (i == best) continue;
    if (means[i] == means[best]) throw TiedOptimum("optimal arm is not unique");
    second = std::max(second, means[i]);
  }
  GapInfo info;
  info.best_arm = best;
  info.gap = means[best] - second;
  info.deltas.resize(means.size());
  for (std::size_t i = 0; i < means.size(); ++i) info.deltas[i] = means[best] - means[i];
  return info;
}

StochasticBandit::StochasticBandit(std::vector<RewardDistribution> arms)
    : arms_(std::move(arms)) {
  if (arms_.size() < 2) throw TiedOptimum("a stochastic bandit needs k >= 2 arms");
  means_.reserve(arms_.size());
  for (const auto& a : arms_) means_.push_back(a.mean());
  gap_ = gap_of(means_);
}

ContextualBandit::ContextualBandit(std::vector<FeatureDistribution> arms,
                                   std::vector<std::vector<double>> contexts)
    : arms_(std::move(arms)), contexts_(std::move(contexts)) {
  if (arms_.size() < 2) throw TiedOptimum("a contextual bandit needs k >= 2 arms");
  if (contexts_.empty()) throw DimensionMismatch("contextual bandit needs at least one context");
  dimension_ = arms_.front().dimension();
  for (const auto& a : arms_)
    if (a.dimension() != dimension_) throw DimensionMismatch("arms of mixed dimension");
  for (const auto& x : contexts_)
    if (x.size() != dimension_) throw DimensionMismatch("context dimension mismatch");
}

std::vector<double> ContextualBandit::induced_means(std::size_t player) const {
  std::vector<double> m;
  m.reserve(arms_.size());
  for (const auto& a : arms_) m.push_back(contextual_mean(a, contexts_[player]));
  return m;
}

InducedView ContextualBandit::induced(std::size_t player) const {
  InducedView view;
  view.means = induced_means(player);
  std::size_t best = 0;
  for (std::size_t i = 1; i < view.means.size(); ++i)
    if (view.means[i] > view.means[best]) best = i;
  view.best_arm = best;
  view.deltas.resize(view.means.size());
  double second = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < view.means.size(); ++i) {
    view.deltas[i] = view.means[best] - view.means[i];
    if (i == best) continue;
    if (view.means[i] == view.means[best]) view.tied_optimum = true;
    else second = std::max(second, view.means[i]);
  }
  // With a tie the gap is taken against the best strictly suboptimal arm.
  view.gap = std::isfinite(second) ? view.means[best] - second : 0.0;
  return view;
}

double ContextualBandit::sample(std::size_t player, std::size_t arm, KeyedRng& rng) const {
  const std::vector<double> theta = arms_[arm].sample(rng);
  const std::vector<double>& x = contexts_[player];
  double r = 0.0;
  for (std::size_t c = 0; c < theta.size(); ++c) r += theta[c] * x[c];
  return r;
}

InducedView induced_stochastic(const ContextualBandit& cb, std::size_t player) {
  return cb.induced(player);
}

}  // namespace freeride
