#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "freeride/errors.hpp"

namespace freeride {

// What a free rider is allowed to see of other players' histories.
enum class Visibility { None = 0, ActionsOnly = 1, ActionsRewards = 2, Full = 3 };

inline bool visibility_at_least(Visibility have, Visibility need) {
  return static_cast<int>(have) >= static_cast<int>(need);
}

const char* to_string(Visibility v);

struct RoundRecord {
  std::uint32_t arm = 0;
  double reward = 0.0;
};

// Ground-truth record of every player's (arm, reward) per round.
class History {
 public:
  explicit History(std::size_t num_players) : per_player_(num_players) {}

  std::size_t num_players() const { return per_player_.size(); }
  std::uint64_t rounds(std::size_t player) const { return per_player_[player].size(); }
  const RoundRecord& record(std::size_t player, std::uint64_t t) const {
    return per_player_[player][t - 1];  // t is 1-based
  }
  const std::vector<RoundRecord>& player(std::size_t p) const { return per_player_[p]; }
  void push(std::size_t player, RoundRecord rec) { per_player_[player].push_back(rec); }
  void reserve(std::uint64_t horizon) {
    for (auto& v : per_player_) v.reserve(horizon);
  }

 private:
  std::vector<std::vector<RoundRecord>> per_player_;
};

// Filtered, read-only view over a history. Accessors throw
// InsufficientVisibility when the granted level does not cover them.
class ObservationView {
 public:
  ObservationView(const History& h, Visibility level,
                  const std::vector<std::vector<double>>* contexts = nullptr)
      : h_(&h), level_(level), contexts_(contexts) {}

  Visibility level() const { return level_; }
  std::size_t num_players() const { return h_->num_players(); }
  std::uint64_t rounds(std::size_t player) const {
    return level_ == Visibility::None ? 0 : h_->rounds(player);
  }

  std::uint32_t action(std::size_t player, std::uint64_t t) const {
    require(Visibility::ActionsOnly, "actions");
    return h_->record(player, t).arm;
  }
  double reward(std::size_t player, std::uint64_t t) const {
    require(Visibility::ActionsRewards, "rewards");
    return h_->record(player, t).reward;
  }
  const std::vector<double>& context(std::size_t player) const {
    require(Visibility::Full, "contexts");
    if (!contexts_) throw InsufficientVisibility("no contexts in this environment");
    return (*contexts_)[player];
  }

 private:
  void require(Visibility need, const char* what) const {
    if (!visibility_at_least(level_, need))
      throw InsufficientVisibility(std::string("visibility level does not expose ") + what);
  }

  const History* h_;
  Visibility level_;
  const std::vector<std::vector<double>>* contexts_;
};

// Materialized filtered history, mainly for inspection and tests.
struct ObservedRecord {
  std::uint32_t arm = 0;
  std::optional<double> reward;
};

struct ObservedHistory {
  Visibility level = Visibility::None;
  std::vector<std::vector<ObservedRecord>> per_player;
  std::optional<std::vector<std::vector<double>>> contexts;
};

ObservedHistory filter_history(const History& h, Visibility level,
                               const std::vector<std::vector<double>>* contexts = nullptr);

}  // namespace freeride
