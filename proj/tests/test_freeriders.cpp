#include <doctest.h>

#include <cmath>

#include "freeride/errors.hpp"
#include "freeride/freeriders.hpp"

using namespace freeride;

namespace {

KeyedRng any_rng(std::uint64_t salt = 0) {
  return KeyedRng(77, StreamKey{salt, 0, 0, 0, Draw::Policy});
}

void push_n(History& h, std::size_t player, std::uint32_t arm, std::size_t n, double reward) {
  for (std::size_t i = 0; i < n; ++i) h.push(player, RoundRecord{arm, reward});
}

}  // namespace

TEST_CASE("epoch_of") {
  CHECK(epoch_of(1) == 0);
  CHECK(epoch_of(7) == 2);
  CHECK(epoch_of(8) == 3);
  CHECK(epoch_of(100000) == 16);
}

TEST_CASE("count_greedy follows the most-pulled arm") {
  auto run_case = [](const std::vector<std::size_t>& counts, std::size_t expected) {
    History h(2);
    for (std::size_t arm = 0; arm < counts.size(); ++arm)
      push_n(h, 1, static_cast<std::uint32_t>(arm), counts[arm], 0.0);
    ObservationView view(h, Visibility::ActionsOnly);
    CountGreedy policy(counts.size(), 1);
    KeyedRng rng = any_rng();
    CHECK(policy.choose(1, view, rng) == expected);
  };
  run_case({5, 3, 2}, 0);
  run_case({2, 2, 1}, 0);  // tie to the lowest index
  run_case({0, 0, 7}, 2);
}

TEST_CASE("count_greedy ignores rewards entirely") {
  History h(2);
  KeyedRng rng = any_rng(1);
  for (int t = 0; t < 200; ++t)
    h.push(1, RoundRecord{static_cast<std::uint32_t>(rng.next_u64() % 3), rng.next_double()});
  CountGreedy with_rewards(3, 1), without(3, 1);
  ObservationView full(h, Visibility::ActionsRewards);
  ObservationView redacted(h, Visibility::ActionsOnly);
  KeyedRng r1 = any_rng(2), r2 = any_rng(2);
  for (std::uint64_t t = 1; t <= 200; ++t)
    CHECK(with_rewards.choose(t, full, r1) == without.choose(t, redacted, r2));
}

TEST_CASE("samg commits without augmentation when the target sampled enough") {
  History h(2);
  push_n(h, 1, 0, 10, 0.2);
  push_n(h, 1, 1, 9, 0.8);
  ObservationView view(h, Visibility::ActionsRewards);
  SampleAugmentingMeanGreedy policy(2, 1, 2.0);  // s_3 = 6
  KeyedRng rng = any_rng();
  for (std::uint64_t t = 8; t <= 15; ++t) {
    CHECK(policy.choose(t, view, rng) == 1);  // committed from the epoch start
    CHECK_FALSE(policy.augmenting());
    policy.observe_own(1, 0.8);
  }
  CHECK(policy.estimates()[0] == doctest::Approx(0.2));
  CHECK(policy.estimates()[1] == doctest::Approx(0.8));
}

TEST_CASE("samg tops up an under-sampled arm and mixes the mean") {
  History h(2);
  push_n(h, 1, 0, 6, 0.1);   // enough
  push_n(h, 1, 1, 4, 0.5);   // 4-sample sum 2.0, two short of s_3 = 6
  ObservationView view(h, Visibility::ActionsRewards);
  SampleAugmentingMeanGreedy policy(2, 1, 2.0);
  KeyedRng rng = any_rng();
  CHECK(policy.choose(8, view, rng) == 1);
  CHECK(policy.augmenting());
  policy.observe_own(1, 0.5);
  CHECK(policy.choose(9, view, rng) == 1);
  policy.observe_own(1, 0.7);
  CHECK_FALSE(policy.augmenting());
  CHECK(policy.estimates()[1] == doctest::Approx((2.0 + 1.2) / 6.0));
  CHECK(policy.choose(10, view, rng) == 1);  // commit to the argmax estimate
  // The finalized estimate is the mean of exactly s_j samples: the target's
  // first four plus the two augmentation draws.
  CHECK(policy.estimates()[1] == doctest::Approx((4 * 0.5 + 0.5 + 0.7) / 6.0));
}

TEST_CASE("samg epoch 0 has an empty quota and commits to arm 1") {
  History h(2);
  ObservationView view(h, Visibility::ActionsRewards);
  SampleAugmentingMeanGreedy policy(3, 1, 2.0);
  KeyedRng rng = any_rng();
  CHECK(policy.choose(1, view, rng) == 0);
  CHECK(policy.estimates()[0] == doctest::Approx(0.0));
}

TEST_CASE("samg requires reward visibility") {
  History h(2);
  push_n(h, 1, 0, 3, 0.5);
  ObservationView view(h, Visibility::ActionsOnly);
  SampleAugmentingMeanGreedy policy(2, 1, 1.0);
  KeyedRng rng = any_rng();
  CHECK_THROWS_AS(policy.choose(4, view, rng), InsufficientVisibility);
}

TEST_CASE("ucb_mean_greedy combines the other players' estimates") {
  SUBCASE("single player passthrough") {
    History h(2);
    push_n(h, 1, 0, 4, 0.2);
    push_n(h, 1, 1, 4, 0.7);
    ObservationView view(h, Visibility::Full);
    UcbMeanGreedy policy(2, 2, 1.0, {1.0});
    KeyedRng rng = any_rng();
    CHECK(policy.choose(8, view, rng) == 1);
    CHECK(policy.estimates_active());
  }
  SUBCASE("weighted sum across two players") {
    History h(3);
    push_n(h, 1, 0, 3, 0.4);
    push_n(h, 1, 1, 3, 0.8);
    push_n(h, 2, 0, 3, 0.6);
    push_n(h, 2, 1, 3, 0.0);
    ObservationView view(h, Visibility::Full);
    UcbMeanGreedy policy(2, 3, 1.0, {0.5, 0.5});
    KeyedRng rng = any_rng();
    CHECK(policy.choose(8, view, rng) == 0);  // combined (0.5, 0.4)
    const auto est = policy.combined_estimates(3);
    CHECK(est[0] == doctest::Approx(0.5));
    CHECK(est[1] == doctest::Approx(0.4));
  }
}

TEST_CASE("ucb_mean_greedy falls back to a fresh 2-UCB run per epoch") {
  History h(2);  // the other player never acts: S_j fails for every j >= 1
  ObservationView view(h, Visibility::Full);
  UcbMeanGreedy policy(3, 2, 1.0, {1.0});
  AlphaUcb mirror(3, 2.0);
  KeyedRng rng = any_rng();
  // Epoch 3 spans rounds 8..15; the fallback must replay a fresh 2-UCB trace.
  for (std::uint64_t t = 8; t <= 15; ++t) {
    const std::size_t got = policy.choose(t, view, rng);
    KeyedRng dummy = any_rng(t);
    const std::size_t want = mirror.choose(t - 7, dummy);
    CHECK(got == want);
    CHECK_FALSE(policy.estimates_active());
    const double reward = (got == 1) ? 0.9 : 0.1;
    policy.observe_own(got, reward);
    mirror.observe(got, reward);
  }
}

TEST_CASE("ucb_mean_greedy estimates are linear in the coefficients") {
  History h(3);
  KeyedRng rng = any_rng(5);
  for (int t = 0; t < 64; ++t) {
    h.push(1, RoundRecord{static_cast<std::uint32_t>(rng.next_u64() % 2), rng.next_double()});
    h.push(2, RoundRecord{static_cast<std::uint32_t>(rng.next_u64() % 2), rng.next_double()});
  }
  ObservationView view(h, Visibility::Full);
  UcbMeanGreedy a(2, 3, 1.0, {0.3, 0.9});
  UcbMeanGreedy b(2, 3, 1.0, {0.6, 1.8});
  KeyedRng r1 = any_rng(6), r2 = any_rng(6);
  a.choose(8, view, r1);
  b.choose(8, view, r2);
  const auto ea = a.combined_estimates(4);
  const auto eb = b.combined_estimates(4);
  for (std::size_t i = 0; i < ea.size(); ++i) CHECK(eb[i] == doctest::Approx(2.0 * ea[i]));
  // Scaling all coefficients preserves the argmax.
  KeyedRng r3 = any_rng(7), r4 = any_rng(7);
  CHECK(a.choose(16, view, r3) == b.choose(16, view, r4));
  // So does adding a constant to every arm's combined estimate.
  std::vector<double> shifted = ea;
  for (double& v : shifted) v += 7.7;
  CHECK(std::max_element(ea.begin(), ea.end()) - ea.begin() ==
        std::max_element(shifted.begin(), shifted.end()) - shifted.begin());
}

TEST_CASE("filter_history projects by visibility level") {
  History h(2);
  h.push(0, RoundRecord{1, 0.5});
  h.push(1, RoundRecord{0, -0.25});
  const std::vector<std::vector<double>> contexts = {{1.0}, {-1.0}};

  const ObservedHistory full = filter_history(h, Visibility::Full, &contexts);
  REQUIRE(full.per_player.size() == 2);
  CHECK(full.per_player[0][0].arm == 1);
  CHECK(full.per_player[0][0].reward == doctest::Approx(0.5));
  REQUIRE(full.contexts.has_value());
  CHECK((*full.contexts)[1][0] == doctest::Approx(-1.0));

  const ObservedHistory actions = filter_history(h, Visibility::ActionsOnly, &contexts);
  CHECK(actions.per_player[1][0].arm == 0);
  CHECK_FALSE(actions.per_player[1][0].reward.has_value());
  CHECK_FALSE(actions.contexts.has_value());

  const ObservedHistory none = filter_history(h, Visibility::None, &contexts);
  CHECK(none.per_player.empty());
}

TEST_CASE("observation view enforces its level") {
  History h(2);
  h.push(1, RoundRecord{0, 0.5});
  ObservationView view(h, Visibility::ActionsOnly);
  CHECK(view.action(1, 1) == 0);
  CHECK_THROWS_AS(view.reward(1, 1), InsufficientVisibility);
  ObservationView none(h, Visibility::None);
  CHECK(none.rounds(1) == 0);
  CHECK_THROWS_AS(none.action(1, 1), InsufficientVisibility);
}
