#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freeride/bandit.hpp"
#include "freeride/distributions.hpp"

namespace freeride {

// A named closed-form quantity together with the inputs it was computed from.
struct ThresholdReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
};

// 2 ln 2 / delta^2. Throws BadGap unless delta is in (0, 2].
double gamma_threshold_stochastic(double delta);

// 8 <c, c> ln 2 / delta^2. Throws BadGap unless delta > 0.
double gamma_threshold_contextual(std::span<const double> c, double delta);

struct ShiftConstants {
  double p_i = 0.0;          // (1 - mu_star) / (2 (1 - mu_i))
  double c_i = 0.0;          // ln p_i
  double shifted_mean = 0.0; // (1 + mu_star) / 2
};
// Requires mu_star < 1 (DegenerateOptimum otherwise) and mu_i <= mu_star.
ShiftConstants shift_constants(double mu_star, double mu_i);

// alpha * ln t / (2 eta^2 k^2). Throws BadEta unless eta > 2.
double ucb_count_floor(double alpha, double eta, std::size_t k, double t);

// KL divergence between discrete laws, natural log. Throws SupportMismatch
// when Q gives zero mass to a point P charges.
double kl_discrete(const DiscretePoints& P, const DiscretePoints& Q);

// (ln(T / 12) + 1) / 2.
double bh_lower_bound(double T);

// Two two-player, two-arm, one-dimensional environments whose player-2 reward
// laws coincide while player 1's arm-2 mean flips sign. The primed profile's
// support is listed so that the same uniform draw yields opposite feature
// signs, making the player-2 reward streams identical under common random
// numbers.
struct NeedContextsPair {
  ContextualBandit a;
  ContextualBandit b;
};
NeedContextsPair build_needcontexts_pair();

// The three-player, four-arm, d=2 pair: F_i puts 2/3 on x_i and 1/3 on -x_i
// for i in {1,2,3}, F_4 is a point mass at the origin; the primed profile
// flips arm 1's probabilities. Player 1's optimum under the primed profile is
// tied between arms 2 and 3 (flagged by the induced view).
struct NeedRewardsPair {
  ContextualBandit f;
  ContextualBandit f_prime;
};
NeedRewardsPair build_needrewards_pair();

// Runs single alpha-UCB agents on `bandit` for `seeds` seeds and checks
// min_i N_i^{t-1} >= ucb_count_floor(alpha, eta, k, t) for every t in
// [t0, T].
struct FloorReport {
  std::uint64_t violations = 0;
  double worst_margin = 0.0;  // min over checks of (count - floor)
};
FloorReport verify_ucb_count_floor(const StochasticBandit& bandit, double alpha, double eta,
                                   std::uint64_t t0, std::uint64_t T, std::uint64_t seeds,
                                   std::uint64_t root_seed);

}  // namespace freeride
