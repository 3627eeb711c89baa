#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "freeride/bandit.hpp"
#include "freeride/freeriders.hpp"
#include "freeride/observation.hpp"
#include "freeride/policies.hpp"

namespace freeride {

using BanditModel = std::variant<StochasticBandit, ContextualBandit>;

std::size_t num_arms(const BanditModel& m);
bool is_contextual(const BanditModel& m);

enum class PolicyKind {
  AlphaUcb,
  Eetc,
  GiveUpUcb,
  CountGreedy,
  Samg,
  UcbMeanGreedy,
};

bool is_free_riding(PolicyKind k);
const char* to_string(PolicyKind k);

struct PolicySpec {
  PolicyKind kind = PolicyKind::AlphaUcb;
  double alpha = 2.0;                 // AlphaUcb, GiveUpUcb
  double gamma = 1.0;                 // Eetc, Samg, UcbMeanGreedy
  std::size_t target = 2;             // 1-based player number (CountGreedy, Samg)
  std::vector<double> coefficients;   // UcbMeanGreedy, one per player 2..n
  std::optional<Visibility> granted;  // defaults to the policy's requirement
};

Visibility required_visibility(const PolicySpec& spec);
Visibility granted_visibility(const PolicySpec& spec);

struct MetricsOptions {
  bool counterfactuals = true;
  double checkpoint_base = 1.1;                  // log-spaced checkpoint growth
  std::vector<std::uint64_t> extra_checkpoints;  // merged into the schedule
  bool retain_history = false;                   // keep raw history + tables (tests)
};

struct SimulationConfig {
  // Placeholder default; real configs overwrite it before use.
  BanditModel bandit{StochasticBandit({RewardDistribution::point_mass(0.0),
                                       RewardDistribution::point_mass(0.5)})};
  std::vector<PolicySpec> players;  // players[0] is player 1, the optional free rider
  std::uint64_t horizon = 1;
  std::uint64_t replicas = 1;
  std::uint64_t root_seed = 0;
  MetricsOptions metrics;
};

// Throws ValidationError / InsufficientVisibility / CoefficientMismatch on a
// config the engine would refuse to wire.
void validate(const SimulationConfig& config);

// Sorted, deduplicated checkpoints: powers of `base` (rounded) up to the
// horizon, merged with the extras and the horizon itself.
std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t horizon, const MetricsOptions& opts);

// Sum over arms of counts[i] * deltas[i].
double pseudo_regret(std::span<const std::uint64_t> counts, std::span<const double> deltas);

// max_i sum_t table[t][i] - sum_t own reward. table[t] holds the
// counterfactual rewards for every arm in round t+1. Throws MissingTable when
// the table does not cover the history.
double realized_regret(const std::vector<RoundRecord>& own,
                       const std::vector<std::vector<double>>& table);

struct CheckpointRow {
  std::uint64_t t = 0;
  double pseudo = 0.0;
  double realized = 0.0;  // NaN when counterfactuals are disabled
  std::vector<std::uint64_t> counts;
};

struct ReplicaOutput {
  // rows[player][checkpoint_index]
  std::vector<std::vector<CheckpointRow>> rows;
  std::vector<std::uint64_t> checkpoints;
  // Populated only when metrics.retain_history is set.
  std::optional<History> history;
  // tables[player][t-1][arm]; populated when retained and counterfactuals on.
  std::vector<std::vector<std::vector<double>>> tables;
};

ReplicaOutput run_replica(const SimulationConfig& config, std::uint64_t replica);

// Aggregated metric series across replicas (pointwise mean and sample
// standard deviation at each checkpoint).
struct MetricsSeries {
  std::uint64_t replicas = 0;
  std::size_t num_players = 0;
  std::size_t num_arms = 0;
  std::vector<std::uint64_t> checkpoints;

  // Indexed [checkpoint][player].
  std::vector<std::vector<double>> pseudo_mean, pseudo_std;
  std::vector<std::vector<double>> realized_mean, realized_std;
  // Indexed [checkpoint][player][arm].
  std::vector<std::vector<std::vector<double>>> count_mean;

  std::size_t checkpoint_index(std::uint64_t t) const;  // throws Error if absent
};

// Deterministic given the config; replicas run independently (parallelism
// capped by FREERIDE_THREADS when set).
MetricsSeries run_replicas(const SimulationConfig& config);

// Per-player suboptimality gaps used for pseudo-regret. For contextual
// bandits a tied optimum is flagged in `tied` (one entry per player).
struct PlayerGaps {
  std::vector<std::vector<double>> deltas;  // [player][arm]
  std::vector<double> gaps;                 // [player]
  std::vector<bool> tied;
};
PlayerGaps player_gaps(const BanditModel& m, std::size_t num_players);

}  // namespace freeride
