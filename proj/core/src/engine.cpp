#include "freeride/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <thread>

#include "freeride/errors.hpp"

namespace freeride {

std::size_t num_arms(const BanditModel& m) {
  return std::visit([](const auto& b) { return b.num_arms(); }, m);
}

bool is_contextual(const BanditModel& m) {
  return std::holds_alternative<ContextualBandit>(m);
}

bool is_free_riding(PolicyKind k) {
  switch (k) {
    case PolicyKind::CountGreedy:
    case PolicyKind::Samg:
    case PolicyKind::UcbMeanGreedy:
      return true;
    default:
      return false;
  }
}

const char* to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::AlphaUcb: return "alpha_ucb";
    case PolicyKind::Eetc: return "eetc";
    case PolicyKind::GiveUpUcb: return "giveup_ucb";
    case PolicyKind::CountGreedy: return "count_greedy";
    case PolicyKind::Samg: return "samg";
    case PolicyKind::UcbMeanGreedy: return "ucb_mean_greedy";
  }
  return "?";
}

Visibility required_visibility(const PolicySpec& spec) {
  switch (spec.kind) {
    case PolicyKind::CountGreedy: return Visibility::ActionsOnly;
    case PolicyKind::Samg: return Visibility::ActionsRewards;
    case PolicyKind::UcbMeanGreedy: return Visibility::Full;
    default: return Visibility::None;
  }
}

Visibility granted_visibility(const PolicySpec& spec) {
  return spec.granted.value_or(required_visibility(spec));
}

void validate(const SimulationConfig& config) {
  if (config.horizon < 1) throw ValidationError("horizon must be >= 1");
  if (config.replicas < 1) throw ValidationError("replicas must be >= 1");
  if (config.players.empty()) throw ValidationError("players must be non-empty");
  const std::size_t n = config.players.size();
  const std::size_t k = num_arms(config.bandit);

  for (std::size_t p = 0; p < n; ++p) {
    const PolicySpec& spec = config.players[p];
    if (p > 0 && is_free_riding(spec.kind))
      throw ValidationError("players[" + std::to_string(p) +
                            "]: a free-riding policy is only allowed for player 1");
    if (is_free_riding(spec.kind)) {
      if (!visibility_at_least(granted_visibility(spec), required_visibility(spec)))
        throw InsufficientVisibility(
            std::string("players[0].visibility: ") + to_string(spec.kind) + " requires " +
            to_string(required_visibility(spec)) + " but was granted " +
            to_string(granted_visibility(spec)));
      if (n < 2) throw ValidationError("a free rider needs at least one other player");
    }
    if (spec.kind == PolicyKind::CountGreedy || spec.kind == PolicyKind::Samg) {
      if (spec.target < 2 || spec.target > n)
        throw ValidationError("players[0].target: must name a player in 2..n");
    }
    if (spec.kind == PolicyKind::AlphaUcb || spec.kind == PolicyKind::GiveUpUcb) {
      if (!(spec.alpha >= 0.0)) throw ValidationError("alpha must be >= 0");
    }
    if (spec.kind == PolicyKind::Eetc || spec.kind == PolicyKind::Samg ||
        spec.kind == PolicyKind::UcbMeanGreedy) {
      if (!(spec.gamma > 0.0)) throw ValidationError("gamma must be > 0");
    }
    if (spec.kind == PolicyKind::UcbMeanGreedy) {
      if (!is_contextual(config.bandit))
        throw ValidationError("ucb_mean_greedy requires a contextual bandit");
      if (spec.coefficients.size() != n - 1)
        throw CoefficientMismatch("coefficients must have one entry per player 2..n");
      const auto& cb = std::get<ContextualBandit>(config.bandit);
      // The scenario must satisfy x_1 = sum_p c_p x_p.
      for (std::size_t c = 0; c < cb.dimension(); ++c) {
        double combo = 0.0;
        for (std::size_t p = 1; p < n; ++p)
          combo += spec.coefficients[p - 1] * cb.context(p)[c];
        if (std::abs(combo - cb.context(0)[c]) > 1e-9)
          throw CoefficientMismatch(
              "coefficients do not reproduce player 1's context (coordinate " +
              std::to_string(c) + ")");
      }
    }
  }

  if (is_contextual(config.bandit)) {
    const auto& cb = std::get<ContextualBandit>(config.bandit);
    if (cb.num_players() != n)
      throw ValidationError("contexts: need one context per player");
    // Contexts inside the unit ball keep every reward in [-1, 1].
    for (std::size_t p = 0; p < n; ++p)
      if (norm2(cb.context(p)) > 1.0 + 1e-9)
        throw ValidationError("bandit.contexts[" + std::to_string(p) +
                              "]: context norm exceeds 1");
  }
  if (k < 2) throw ValidationError("bandit must have k >= 2 arms");
}

std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t horizon,
                                               const MetricsOptions& opts) {
  std::vector<std::uint64_t> cps;
  double v = 1.0;
  while (true) {
    const auto t = static_cast<std::uint64_t>(std::llround(v));
    if (t >= horizon) break;
    if (t >= 1) cps.push_back(t);
    v *= opts.checkpoint_base;
  }
  for (std::uint64_t t : opts.extra_checkpoints)
    if (t >= 1 && t <= horizon) cps.push_back(t);
  cps.push_back(horizon);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

double pseudo_regret(std::span<const std::uint64_t> counts, std::span<const double> deltas) {
  double r = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    r += static_cast<double>(counts[i]) * deltas[i];
  return r;
}

double realized_regret(const std::vector<RoundRecord>& own,
                       const std::vector<std::vector<double>>& table) {
  if (table.size() < own.size())
    throw MissingTable("counterfactual table does not cover the history");
  if (own.empty()) return 0.0;
  const std::size_t k = table.front().size();
  std::vector<double> arm_sums(k, 0.0);
  double own_sum = 0.0;
  for (std::size_t t = 0; t < own.size(); ++t) {
    for (std::size_t i = 0; i < k; ++i) arm_sums[i] += table[t][i];
    own_sum += own[t].reward;
  }
  return *std::max_element(arm_sums.begin(), arm_sums.end()) - own_sum;
}

PlayerGaps player_gaps(const BanditModel& m, std::size_t num_players) {
  PlayerGaps g;
  g.deltas.resize(num_players);
  g.gaps.resize(num_players);
  g.tied.assign(num_players, false);
  if (const auto* sb = std::get_if<StochasticBandit>(&m)) {
    for (std::size_t p = 0; p < num_players; ++p) {
      g.deltas[p] = sb->deltas();
      g.gaps[p] = sb->gap();
    }
  } else {
    const auto& cb = std::get<ContextualBandit>(m);
    for (std::size_t p = 0; p < num_players; ++p) {
      InducedView view = cb.induced(p);
      g.deltas[p] = view.deltas;
      g.gaps[p] = view.gap;
      g.tied[p] = view.tied_optimum;
    }
  }
  return g;
}

namespace {

std::unique_ptr<SelfReliantPolicy> make_self_reliant(const PolicySpec& spec, std::size_t k) {
  switch (spec.kind) {
    case PolicyKind::AlphaUcb: return std::make_unique<AlphaUcb>(k, spec.alpha);
    case PolicyKind::Eetc: return std::make_unique<EpochExploreThenCommit>(k, spec.gamma);
    case PolicyKind::GiveUpUcb: return std::make_unique<GiveUpUcb>(k, spec.alpha);
    default: throw ValidationError("not a self-reliant policy");
  }
}

std::unique_ptr<FreeRiderPolicy> make_free_rider(const PolicySpec& spec, std::size_t k,
                                                 std::size_t n) {
  switch (spec.kind) {
    case PolicyKind::CountGreedy:
      return std::make_unique<CountGreedy>(k, spec.target - 1);
    case PolicyKind::Samg:
      return std::make_unique<SampleAugmentingMeanGreedy>(k, spec.target - 1, spec.gamma);
    case PolicyKind::UcbMeanGreedy:
      return std::make_unique<UcbMeanGreedy>(k, n, spec.gamma, spec.coefficients);
    default: throw ValidationError("not a free-riding policy");
  }
}

double draw_reward(const BanditModel& m, std::size_t player, std::size_t arm,
                   std::uint64_t root_seed, std::uint64_t replica, std::uint64_t t) {
  KeyedRng rng(root_seed, StreamKey{replica, player + 1, t, arm + 1, Draw::Reward});
  if (const auto* sb = std::get_if<StochasticBandit>(&m)) return sb->sample(arm, rng);
  return std::get<ContextualBandit>(m).sample(player, arm, rng);
}

unsigned thread_budget(std::uint64_t replicas) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("FREERIDE_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v >= 1) hw = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::min<std::uint64_t>(hw, replicas));
}

}  // namespace

ReplicaOutput run_replica(const SimulationConfig& config, std::uint64_t replica) {
  validate(config);
  const std::size_t n = config.players.size();
  const std::size_t k = num_arms(config.bandit);
  const PlayerGaps gaps = player_gaps(config.bandit, n);
  const bool cf = config.metrics.counterfactuals;
  const bool retain = config.metrics.retain_history;

  std::unique_ptr<FreeRiderPolicy> rider;
  Visibility rider_view_level = Visibility::None;
  std::vector<std::unique_ptr<SelfReliantPolicy>> policies(n);
  for (std::size_t p = 0; p < n; ++p) {
    const PolicySpec& spec = config.players[p];
    if (p == 0 && is_free_riding(spec.kind)) {
      rider = make_free_rider(spec, k, n);
      rider_view_level = granted_visibility(spec);
    } else {
      policies[p] = make_self_reliant(spec, k);
    }
  }

  const std::vector<std::vector<double>>* contexts = nullptr;
  if (const auto* cb = std::get_if<ContextualBandit>(&config.bandit)) contexts = &cb->contexts();

  History history(n);
  if (retain) history.reserve(config.horizon);
  ObservationView rider_view(history, rider_view_level, contexts);

  // Streaming metric state.
  std::vector<std::vector<std::uint64_t>> counts(n, std::vector<std::uint64_t>(k, 0));
  std::vector<double> own_cum(n, 0.0);
  std::vector<std::vector<double>> cf_cum(n, std::vector<double>(k, 0.0));

  ReplicaOutput out;
  out.checkpoints = checkpoint_schedule(config.horizon, config.metrics);
  out.rows.assign(n, {});
  for (auto& rows : out.rows) rows.reserve(out.checkpoints.size());
  if (retain) {
    out.tables.assign(cf ? n : 0, {});
    for (auto& t : out.tables) t.reserve(config.horizon);
  }
  std::size_t next_cp = 0;

  std::vector<std::size_t> chosen(n, 0);
  std::vector<double> row(k, 0.0);
  for (std::uint64_t t = 1; t <= config.horizon; ++t) {
    // All players decide against the previous round's snapshot.
    for (std::size_t p = 0; p < n; ++p) {
      KeyedRng rng(config.root_seed, StreamKey{replica, p + 1, t, 0, Draw::Policy});
      chosen[p] = rider && p == 0 ? rider->choose(t, rider_view, rng)
                                  : policies[p]->choose(t, rng);
    }
    for (std::size_t p = 0; p < n; ++p) {
      double reward;
      if (cf) {
        for (std::size_t i = 0; i < k; ++i) {
          row[i] = draw_reward(config.bandit, p, i, config.root_seed, replica, t);
          cf_cum[p][i] += row[i];
        }
        reward = row[chosen[p]];
        if (retain && !out.tables.empty()) out.tables[p].push_back(row);
      } else {
        reward = draw_reward(config.bandit, p, chosen[p], config.root_seed, replica, t);
      }
      counts[p][chosen[p]] += 1;
      own_cum[p] += reward;
      history.push(p, RoundRecord{static_cast<std::uint32_t>(chosen[p]), reward});
      if (rider && p == 0) rider->observe_own(chosen[p], reward);
      else policies[p]->observe(chosen[p], reward);
    }
    if (next_cp < out.checkpoints.size() && t == out.checkpoints[next_cp]) {
      for (std::size_t p = 0; p < n; ++p) {
        CheckpointRow cr;
        cr.t = t;
        cr.pseudo = pseudo_regret(counts[p], gaps.deltas[p]);
        if (cf) {
          const double best = *std::max_element(cf_cum[p].begin(), cf_cum[p].end());
          cr.realized = best - own_cum[p];
        } else {
          cr.realized = std::numeric_limits<double>::quiet_NaN();
        }
        cr.counts = counts[p];
        out.rows[p].push_back(std::move(cr));
      }
      next_cp += 1;
    }
  }

  if (retain) out.history = std::move(history);
  return out;
}

std::size_t MetricsSeries::checkpoint_index(std::uint64_t t) const {
  const auto it = std::lower_bound(checkpoints.begin(), checkpoints.end(), t);
  if (it == checkpoints.end() || *it != t)
    throw Error("no checkpoint at t=" + std::to_string(t));
  return static_cast<std::size_t>(it - checkpoints.begin());
}

MetricsSeries run_replicas(const SimulationConfig& config) {
  validate(config);
  const std::size_t n = config.players.size();
  const std::size_t k = num_arms(config.bandit);

  {  // Warn once about degenerate contextual ties; simulations proceed.
    const PlayerGaps gaps = player_gaps(config.bandit, n);
    for (std::size_t p = 0; p < n; ++p)
      if (gaps.tied[p])
        std::cerr << "freeride: warning: player " << (p + 1)
                  << " has a tied optimal arm; gap computed against the best "
                     "strictly suboptimal arm\n";
  }

  std::vector<ReplicaOutput> results(config.replicas);
  std::vector<std::exception_ptr> errors(config.replicas);
  const unsigned threads = thread_budget(config.replicas);
  auto run_one = [&](std::uint64_t r) {
    try {
      results[r] = run_replica(config, r);
    } catch (...) {
      errors[r] = std::current_exception();
    }
  };
  if (threads <= 1) {
    for (std::uint64_t r = 0; r < config.replicas; ++r) run_one(r);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t r = w; r < config.replicas; r += threads) run_one(r);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (std::uint64_t r = 0; r < config.replicas; ++r) {
    if (!errors[r]) continue;
    try {
      std::rethrow_exception(errors[r]);
    } catch (const std::exception& e) {
      throw Error("replica " + std::to_string(r) + ": " + e.what());
    }
  }

  MetricsSeries series;
  series.replicas = config.replicas;
  series.num_players = n;
  series.num_arms = k;
  series.checkpoints = results.front().checkpoints;
  const std::size_t nc = series.checkpoints.size();
  series.pseudo_mean.assign(nc, std::vector<double>(n, 0.0));
  series.pseudo_std.assign(nc, std::vector<double>(n, 0.0));
  series.realized_mean.assign(nc, std::vector<double>(n, 0.0));
  series.realized_std.assign(nc, std::vector<double>(n, 0.0));
  series.count_mean.assign(nc, std::vector<std::vector<double>>(n, std::vector<double>(k, 0.0)));

  const double R = static_cast<double>(config.replicas);
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t p = 0; p < n; ++p) {
      double ps = 0.0, rs = 0.0;
      for (const auto& rep : results) {
        ps += rep.rows[p][c].pseudo;
        rs += rep.rows[p][c].realized;
        for (std::size_t i = 0; i < k; ++i)
          series.count_mean[c][p][i] += static_cast<double>(rep.rows[p][c].counts[i]);
      }
      const double pm = ps / R, rm = rs / R;
      series.pseudo_mean[c][p] = pm;
      series.realized_mean[c][p] = rm;
      for (std::size_t i = 0; i < k; ++i) series.count_mean[c][p][i] /= R;
      if (config.replicas > 1) {
        double pv = 0.0, rv = 0.0;
        for (const auto& rep : results) {
          const double dp = rep.rows[p][c].pseudo - pm;
          const double dr = rep.rows[p][c].realized - rm;
          pv += dp * dp;
          rv += dr * dr;
        }
        series.pseudo_std[c][p] = std::sqrt(pv / (R - 1.0));
        series.realized_std[c][p] = std::sqrt(rv / (R - 1.0));
      }
    }
  }
  return series;
}

}  // namespace freeride
