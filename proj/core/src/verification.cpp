#include "freeride/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "freeride/epochs.hpp"
#include "freeride/errors.hpp"
#include "freeride/policies.hpp"

namespace freeride {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

DiscretePoints random_discrete(KeyedRng& rng, std::size_t min_support = 2,
                               std::size_t max_support = 6) {
  const std::size_t m = min_support + rng.next_u64() % (max_support - min_support + 1);
  DiscretePoints d;
  d.values.resize(m);
  d.probs.resize(m);
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    d.values[i] = 2.0 * rng.next_double() - 1.0;
    d.probs[i] = rng.next_double() + 1e-3;
    sum += d.probs[i];
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    d.probs[i] /= sum;
    acc += d.probs[i];
  }
  d.probs[m - 1] = 1.0 - acc;  // exact simplex
  return d;
}

}  // namespace

std::vector<CheckResult> run_kl_suite(std::uint64_t seed, std::size_t trials) {
  std::vector<CheckResult> out;

  {  // KL(D, shift(D, p)) <= ln(1/p).
    CheckResult r{"kl_shift_bound", true, ""};
    double worst = -1e300;
    for (std::size_t i = 0; i < trials; ++i) {
      KeyedRng rng(seed, StreamKey{i, 0, 0, 0, Draw::Scenario});
      const RewardDistribution d{random_discrete(rng)};
      const double p = 1e-3 + (1.0 - 2e-3) * rng.next_double();
      const double kl = kl_discrete(to_discrete(d), to_discrete(shift_toward_one(d, p)));
      const double excess = kl - std::log(1.0 / p);
      worst = std::max(worst, excess);
      if (excess > 1e-12) r.passed = false;
    }
    r.detail = "worst excess over ln(1/p): " + fmt(worst) + " (tolerance 1e-12, " +
               std::to_string(trials) + " trials)";
    out.push_back(std::move(r));
  }

  {  // Exact KL between the needcontexts arm-2 laws.
    CheckResult r{"kl_needcontexts_pair", true, ""};
    const DiscretePoints p{{1.0, -1.0}, {1.0 / 3.0, 2.0 / 3.0}};
    const DiscretePoints q{{1.0, -1.0}, {2.0 / 3.0, 1.0 / 3.0}};
    const double kl = kl_discrete(p, q);
    const double expected = std::log(2.0) / 3.0;
    r.passed = std::abs(kl - expected) <= 1e-9;
    r.detail = "kl = " + fmt(kl) + ", expected ln(2)/3 = " + fmt(expected);
    out.push_back(std::move(r));
  }

  {  // Bretagnolle-Huber: P(A) + Q(A^c) >= exp(-KL(P, Q)) / 2.
    CheckResult r{"bretagnolle_huber", true, ""};
    double worst = 1e300;
    for (std::size_t i = 0; i < trials; ++i) {
      KeyedRng rng(seed, StreamKey{i, 0, 0, 1, Draw::Scenario});
      const std::size_t m = 2 + rng.next_u64() % 5;
      std::vector<double> values(m);
      for (std::size_t v = 0; v < m; ++v) values[v] = 2.0 * rng.next_double() - 1.0;
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      auto probs = [&rng](std::size_t count) {
        std::vector<double> p(count);
        double sum = 0.0;
        for (auto& x : p) {
          x = rng.next_double() + 1e-3;
          sum += x;
        }
        for (auto& x : p) x /= sum;
        return p;
      };
      const DiscretePoints P{values, probs(values.size())};
      const DiscretePoints Q{values, probs(values.size())};
      // Random event A over the shared outcomes (possibly empty or full).
      double pa = 0.0, qac = 0.0;
      for (std::size_t v = 0; v < values.size(); ++v) {
        const bool in_a = rng.next_double() < 0.5;
        if (in_a) pa += P.probs[v];
        else qac += Q.probs[v];
      }
      const double lhs = pa + qac;
      const double rhs = 0.5 * std::exp(-kl_discrete(P, Q));
      worst = std::min(worst, lhs - rhs);
      if (lhs + 1e-12 < rhs) r.passed = false;
    }
    r.detail = "worst slack P(A)+Q(Ac)-bound: " + fmt(worst) + " (" +
               std::to_string(trials) + " trials)";
    out.push_back(std::move(r));
  }

  return out;
}

std::vector<CheckResult> run_ucb_floor_suite(double alpha, double eta, std::size_t k,
                                             std::uint64_t t0, std::uint64_t T,
                                             std::uint64_t seeds, std::uint64_t root_seed) {
  std::vector<RewardDistribution> arms;
  for (std::size_t i = 0; i < k; ++i)
    arms.push_back(RewardDistribution::bernoulli(0.1 * static_cast<double>(i)));
  const StochasticBandit bandit(std::move(arms));
  const FloorReport report = verify_ucb_count_floor(bandit, alpha, eta, t0, T, seeds, root_seed);
  CheckResult r;
  r.name = "ucb_count_floor";
  r.passed = report.violations == 0;
  r.detail = std::to_string(report.violations) + " violations, worst margin " +
             fmt(report.worst_margin) + " (alpha=" + fmt(alpha) + ", eta=" + fmt(eta) +
             ", k=" + std::to_string(k) + ", t0=" + std::to_string(t0) +
             ", T=" + std::to_string(T) + ", seeds=" + std::to_string(seeds) + ")";
  return {r};
}

std::vector<CheckResult> run_coupling_suite(std::uint64_t root_seed, std::uint64_t horizon,
                                            std::uint64_t replicas) {
  NeedContextsPair pair = build_needcontexts_pair();
  auto make_config = [&](ContextualBandit bandit) {
    SimulationConfig cfg;
    cfg.bandit = std::move(bandit);
    PolicySpec rider;
    rider.kind = PolicyKind::CountGreedy;
    rider.target = 2;
    PolicySpec ucb;
    ucb.kind = PolicyKind::AlphaUcb;
    ucb.alpha = 2.0;
    cfg.players = {rider, ucb};
    cfg.horizon = horizon;
    cfg.replicas = replicas;
    cfg.root_seed = root_seed;
    cfg.metrics.retain_history = true;
    cfg.metrics.counterfactuals = false;
    return cfg;
  };
  const SimulationConfig cfg_a = make_config(std::move(pair.a));
  const SimulationConfig cfg_b = make_config(std::move(pair.b));

  CheckResult r;
  r.name = "needcontexts_coupling";
  r.passed = true;
  std::uint64_t mismatches = 0;
  for (std::uint64_t rep = 0; rep < replicas; ++rep) {
    const ReplicaOutput a = run_replica(cfg_a, rep);
    const ReplicaOutput b = run_replica(cfg_b, rep);
    const auto& trace_a = a.history->player(1);
    const auto& trace_b = b.history->player(1);
    if (trace_a.size() != trace_b.size()) {
      mismatches += 1;
      continue;
    }
    // Bitwise comparison of player 2's (arm, reward) records.
    if (std::memcmp(trace_a.data(), trace_b.data(),
                    trace_a.size() * sizeof(RoundRecord)) != 0)
      mismatches += 1;
  }
  r.passed = mismatches == 0;
  r.detail = std::to_string(mismatches) + " mismatched replicas of " +
             std::to_string(replicas) + " (T=" + std::to_string(horizon) + ")";
  return {r};
}

std::vector<CheckResult> run_eetc_floor_suite(double gamma, std::size_t k, std::uint64_t T,
                                              std::uint64_t seeds, std::uint64_t root_seed) {
  // First epoch with room for the full exploration pass.
  std::uint64_t j0 = 0;
  while ((1ULL << j0) <
         k * static_cast<std::uint64_t>(std::ceil(gamma * (static_cast<double>(j0) + 2.0))))
    ++j0;
  const std::uint64_t start = 1ULL << (j0 + 1);

  std::vector<RewardDistribution> arms;
  for (std::size_t i = 0; i < k; ++i)
    arms.push_back(RewardDistribution::bernoulli(0.1 + 0.8 * static_cast<double>(i) /
                                                           static_cast<double>(k - 1)));
  const StochasticBandit bandit(std::move(arms));

  CheckResult r;
  r.name = "eetc_floor_gamma" + fmt(gamma) + "_k" + std::to_string(k);
  r.passed = true;
  std::uint64_t violations = 0;
  double worst = 1e300;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    EpochExploreThenCommit policy(k, gamma);
    for (std::uint64_t t = 1; t <= T; ++t) {
      KeyedRng policy_rng(root_seed, StreamKey{s, 1, t, 0, Draw::Policy});
      const std::size_t arm = policy.choose(t, policy_rng);
      KeyedRng reward_rng(root_seed, StreamKey{s, 1, t, arm + 1, Draw::Reward});
      policy.observe(arm, bandit.sample(arm, reward_rng));
      if (t >= start) {
        const auto counts = policy.counts();
        const std::uint64_t min_count = *std::min_element(counts.begin(), counts.end());
        const double floor = gamma * std::log2(static_cast<double>(t));
        worst = std::min(worst, static_cast<double>(min_count) - floor);
        if (static_cast<double>(min_count) < floor) violations += 1;
      }
    }
  }
  r.passed = violations == 0;
  r.detail = std::to_string(violations) + " violations past round " + std::to_string(start) +
             " (j0=" + std::to_string(j0) + "), worst margin " + fmt(worst);
  return {r};
}

std::vector<CheckResult> run_all_suites(std::uint64_t root_seed) {
  std::vector<CheckResult> out;
  for (auto& r : run_kl_suite(root_seed)) out.push_back(std::move(r));
  for (auto& r : run_ucb_floor_suite(2.0, 2.5, 3, 1000, 100000, 20, root_seed))
    out.push_back(std::move(r));
  for (auto& r : run_coupling_suite(root_seed)) out.push_back(std::move(r));
  for (double gamma : {1.0, 4.0})
    for (std::size_t k : {std::size_t{2}, std::size_t{5}})
      for (auto& r : run_eetc_floor_suite(gamma, k, 100000, 10, root_seed))
        out.push_back(std::move(r));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

}  // namespace freeride
