#include "freeride/presets.hpp"

#include <cmath>
#include <utility>

#include "freeride/errors.hpp"
#include "freeride/theory.hpp"

namespace freeride {

namespace {

PolicySpec alpha_ucb(double alpha) {
  PolicySpec s;
  s.kind = PolicyKind::AlphaUcb;
  s.alpha = alpha;
  return s;
}

PolicySpec count_greedy(std::size_t target) {
  PolicySpec s;
  s.kind = PolicyKind::CountGreedy;
  s.target = target;
  s.granted = Visibility::ActionsOnly;
  return s;
}

SimulationConfig fig1(std::uint64_t seed) {
  std::vector<RewardDistribution> arms;
  for (int i = 0; i < 10; ++i)
    arms.push_back(RewardDistribution::bernoulli(0.1 * i));
  SimulationConfig cfg;
  cfg.bandit = StochasticBandit(std::move(arms));
  cfg.players = {count_greedy(2), alpha_ucb(2.0)};
  cfg.horizon = 100000;
  cfg.replicas = 100;
  cfg.root_seed = seed;
  cfg.metrics.extra_checkpoints = {10000, 50000};
  return cfg;
}

SimulationConfig countgreedy_fail(std::uint64_t seed) {
  // A narrow gap keeps the opponent's most-pulled arm volatile through the
  // tripling checkpoints, on top of the give-up epochs, so the rider's
  // pseudo-regret keeps growing linearly across 3^5..3^8.
  std::vector<RewardDistribution> arms = {RewardDistribution::bernoulli(0.495),
                                          RewardDistribution::bernoulli(0.505)};
  SimulationConfig cfg;
  cfg.bandit = StochasticBandit(std::move(arms));
  PolicySpec giveup;
  giveup.kind = PolicyKind::GiveUpUcb;
  giveup.alpha = 2.0;
  cfg.players = {count_greedy(2), giveup};
  cfg.horizon = 6561;  // 3^8
  cfg.replicas = 50;
  cfg.root_seed = seed;
  cfg.metrics.extra_checkpoints = {243, 729, 2187, 6561};
  return cfg;
}

SimulationConfig samg_vs_giveup(std::uint64_t seed) {
  // A wide gap keeps the per-epoch sample quota small enough that the
  // opponent's own exploration covers it at the late epochs.
  std::vector<RewardDistribution> arms = {
      RewardDistribution::discrete({-1.0, 1.0}, {0.95, 0.05}),   // mean -0.9
      RewardDistribution::discrete({-1.0, 1.0}, {0.05, 0.95})};  // mean +0.9
  SimulationConfig cfg;
  cfg.bandit = StochasticBandit(std::move(arms));
  PolicySpec rider;
  rider.kind = PolicyKind::Samg;
  rider.target = 2;
  rider.gamma = 0.5;  // above gamma_threshold_stochastic(1.8) = 0.4279
  rider.granted = Visibility::ActionsRewards;
  PolicySpec giveup;
  giveup.kind = PolicyKind::GiveUpUcb;
  giveup.alpha = 2.0;
  cfg.players = {rider, giveup};
  cfg.horizon = 6561;
  cfg.replicas = 50;
  cfg.root_seed = seed;
  cfg.metrics.extra_checkpoints = {243, 729, 2187, 6561};
  return cfg;
}

SimulationConfig needcontexts_coupling(std::uint64_t seed) {
  NeedContextsPair pair = build_needcontexts_pair();
  SimulationConfig cfg;
  cfg.bandit = std::move(pair.a);
  cfg.players = {count_greedy(2), alpha_ucb(2.0)};
  cfg.horizon = 10000;
  cfg.replicas = 5;
  cfg.root_seed = seed;
  return cfg;
}

SimulationConfig needrewards(std::uint64_t seed) {
  NeedRewardsPair pair = build_needrewards_pair();
  SimulationConfig cfg;
  cfg.bandit = std::move(pair.f);
  PolicySpec eetc;
  eetc.kind = PolicyKind::Eetc;
  eetc.gamma = 4.0;
  cfg.players = {count_greedy(2), eetc, eetc};
  cfg.horizon = 100000;
  cfg.replicas = 5;
  cfg.root_seed = seed;
  return cfg;
}

// Designed full-information contextual scenario: player 1's context is the
// average of the others', all suboptimal arms sit one unit below the optimum
// for every player, and the feature noise is a small symmetric two-point
// spread, so the 10-UCB players' per-arm counts clear gamma*j at the late
// epochs with a deterministic margin.
SimulationConfig contextual_threshold(std::uint64_t seed) {
  auto two_point = [](double cx, double cy, double zx, double zy) {
    return FeatureDistribution(DiscreteFeature{
        {{cx + zx, cy + zy}, {cx - zx, cy - zy}}, {0.5, 0.5}});
  };
  std::vector<FeatureDistribution> arms = {
      two_point(0.5, 0.5, 0.010, -0.008),
      two_point(-0.5, -0.5, 0.010, 0.006),
      two_point(-0.5, -0.5, 0.008, -0.010),
      two_point(-0.5, -0.5, -0.012, 0.004),
      two_point(-0.5, -0.5, 0.006, 0.012),
  };
  std::vector<std::vector<double>> contexts = {{0.5, 0.5}, {1.0, 0.0}, {0.0, 1.0}};
  ContextualBandit bandit(std::move(arms), std::move(contexts));
  const double gap = bandit.induced(0).gap;  // 1.0 by construction

  PolicySpec rider;
  rider.kind = PolicyKind::UcbMeanGreedy;
  rider.coefficients = {0.5, 0.5};
  rider.gamma = 1.1 * gamma_threshold_contextual(rider.coefficients, gap);
  rider.granted = Visibility::Full;

  SimulationConfig cfg;
  cfg.bandit = std::move(bandit);
  cfg.players = {rider, alpha_ucb(10.0), alpha_ucb(10.0)};
  cfg.horizon = 100000;
  cfg.replicas = 20;
  cfg.root_seed = seed;
  cfg.metrics.extra_checkpoints = {50000};
  return cfg;
}

SimulationConfig fig2_scaled(std::uint64_t seed, bool full_scale) {
  const std::size_t n = full_scale ? 50 : 10;
  const std::size_t k = full_scale ? 30 : 10;
  const std::size_t d = full_scale ? 10 : 5;

  // Regenerate with a perturbed stream until the induced optima are unique
  // and player 1 has a workable gap; deterministic given the seed.
  for (std::uint64_t attempt = 0;; ++attempt) {
    KeyedRng rng(seed, StreamKey{attempt, 0, 0, 0, Draw::Scenario});
    auto uniform_vec = [&rng](std::size_t dim) {
      std::vector<double> v(dim);
      for (auto& x : v) x = 2.0 * rng.next_double() - 1.0;
      return v;
    };

    std::vector<std::vector<double>> contexts(n);
    for (std::size_t p = 1; p < n; ++p) {
      contexts[p] = uniform_vec(d);
      const double nrm = norm2(contexts[p]);
      if (nrm < 1e-6) {
        contexts[p].assign(d, 0.0);
        contexts[p][0] = 1.0;
        continue;
      }
      for (auto& x : contexts[p]) x /= nrm;
    }
    std::vector<double> c(n - 1);
    for (auto& x : c) x = 2.0 * rng.next_double() - 1.0;
    contexts[0].assign(d, 0.0);
    for (std::size_t p = 1; p < n; ++p)
      for (std::size_t j = 0; j < d; ++j) contexts[0][j] += c[p - 1] * contexts[p][j];
    // Rescale the whole profile into the unit ball; x1 = sum c_p x_p is
    // preserved because every context shrinks by the same factor.
    double max_norm = 0.0;
    for (const auto& x : contexts) max_norm = std::max(max_norm, norm2(x));
    if (max_norm > 1.0)
      for (auto& x : contexts)
        for (auto& v : x) v /= max_norm;

    std::vector<FeatureDistribution> arms;
    arms.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<double> m = uniform_vec(d);
      const double nrm = norm2(m);
      const double target = 0.5;  // keeps every expected reward inside [-1,1]
      if (nrm > 1e-9)
        for (auto& x : m) x *= target / nrm;
      arms.push_back(FeatureDistribution(SphericalGaussian{std::move(m), 0.1}));
    }

    ContextualBandit bandit(std::move(arms), std::move(contexts));
    bool ok = true;
    for (std::size_t p = 0; p < n && ok; ++p)
      if (bandit.induced(p).tied_optimum) ok = false;
    const double gap = bandit.induced(0).gap;
    if (!ok || gap < 1e-3) continue;

    PolicySpec rider;
    rider.kind = PolicyKind::UcbMeanGreedy;
    rider.coefficients = std::move(c);
    rider.gamma = 1.1 * gamma_threshold_contextual(rider.coefficients, gap);
    rider.granted = Visibility::Full;

    SimulationConfig cfg;
    cfg.bandit = std::move(bandit);
    cfg.players.push_back(rider);
    for (std::size_t p = 1; p < n; ++p) cfg.players.push_back(alpha_ucb(10.0));
    cfg.horizon = 100000;
    cfg.replicas = 10;
    cfg.root_seed = seed;
    return cfg;
  }
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1",        "fig2_scaled",          "countgreedy_fail",
          "samg_vs_giveup", "needcontexts_coupling", "needrewards",
          "contextual_threshold"};
}

SimulationConfig make_preset(const std::string& name, std::optional<std::uint64_t> seed,
                             bool full_scale) {
  SimulationConfig cfg;
  if (name == "fig1") cfg = fig1(seed.value_or(101));
  else if (name == "fig2_scaled") cfg = fig2_scaled(seed.value_or(202), full_scale);
  else if (name == "countgreedy_fail") cfg = countgreedy_fail(seed.value_or(303));
  else if (name == "samg_vs_giveup") cfg = samg_vs_giveup(seed.value_or(404));
  else if (name == "needcontexts_coupling") cfg = needcontexts_coupling(seed.value_or(505));
  else if (name == "needrewards") cfg = needrewards(seed.value_or(606));
  else if (name == "contextual_threshold") cfg = contextual_threshold(seed.value_or(707));
  else throw ValidationError("unknown preset '" + name + "'");
  validate(cfg);
  return cfg;
}

}  // namespace freeride
