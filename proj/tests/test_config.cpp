#include <doctest.h>

#include "freeride/config.hpp"
#include "freeride/errors.hpp"
#include "freeride/presets.hpp"

using namespace freeride;

TEST_CASE("minimal config parses with defaults") {
  const std::string text = R"({
    "bandit": {"type": "stochastic",
               "arms": [{"kind": "point_mass", "v": 0.0},
                        {"kind": "point_mass", "v": 0.5}]},
    "players": [{"policy": "alpha_ucb", "alpha": 2.0}],
    "horizon": 10
  })";
  const SimulationConfig cfg = parse_config(text);
  CHECK(cfg.horizon == 10);
  CHECK(cfg.replicas == 1);
  CHECK(cfg.root_seed == 0);
  CHECK(cfg.metrics.counterfactuals);
  CHECK(num_arms(cfg.bandit) == 2);
}

TEST_CASE("visibility grants below a policy's requirement are rejected") {
  const std::string text = R"({
    "bandit": {"type": "stochastic",
               "arms": [{"kind": "bernoulli", "p": 0.1},
                        {"kind": "bernoulli", "p": 0.9}]},
    "players": [{"policy": "samg", "target": 2, "gamma": 3.0,
                 "visibility": "actions_only"},
                {"policy": "alpha_ucb", "alpha": 2.0}],
    "horizon": 100
  })";
  CHECK_THROWS_AS(parse_config(text), InsufficientVisibility);
}

TEST_CASE("parse errors carry positions; validation errors name keys") {
  CHECK_THROWS_AS(parse_config("{ not json"), ParseError);
  try {
    parse_config(R"({"bandit": {"type": "stochastic", "arms": []},
                     "players": [{"policy": "alpha_ucb"}], "horizon": 0})");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("bandit") != std::string::npos);
  }
  try {
    parse_config(R"({"bandit": {"type": "stochastic",
                                "arms": [{"kind": "bernoulli", "p": 0.1},
                                         {"kind": "bernoulli", "p": 0.9}]},
                     "players": [{"policy": "alpha_ucb", "alfa": 2.0}],
                     "horizon": 5})");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("players[0].alfa") != std::string::npos);
  }
  // Wrong-typed values are named too, not passed through as library errors.
  CHECK_THROWS_AS(parse_config(R"({"bandit": {"type": 3, "arms": []},
                                   "players": [], "horizon": 5})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"bandit": {"type": "stochastic",
                                              "arms": [{"kind": 1, "p": 0.5}]},
                                   "players": [], "horizon": 5})"),
                  ValidationError);
}

TEST_CASE("every preset validates and round-trips through serialization") {
  for (const std::string& name : preset_names()) {
    CAPTURE(name);
    const SimulationConfig cfg = make_preset(name);
    const std::string once = serialize_config(cfg);
    const SimulationConfig reparsed = parse_config(once);
    const std::string twice = serialize_config(reparsed);
    CHECK(once == twice);
    CHECK(reparsed.horizon == cfg.horizon);
    CHECK(reparsed.replicas == cfg.replicas);
    CHECK(reparsed.root_seed == cfg.root_seed);
    CHECK(reparsed.players.size() == cfg.players.size());
  }
  CHECK_THROWS_AS(make_preset("nope"), ValidationError);
}

TEST_CASE("contextual configs round-trip") {
  const SimulationConfig cfg = make_preset("contextual_threshold");
  const SimulationConfig reparsed = parse_config(serialize_config(cfg));
  CHECK(is_contextual(reparsed.bandit));
  const auto& a = std::get<ContextualBandit>(cfg.bandit);
  const auto& b = std::get<ContextualBandit>(reparsed.bandit);
  REQUIRE(a.num_arms() == b.num_arms());
  for (std::size_t p = 0; p < a.num_players(); ++p) {
    const auto ma = a.induced_means(p);
    const auto mb = b.induced_means(p);
    for (std::size_t i = 0; i < ma.size(); ++i) CHECK(ma[i] == mb[i]);
  }
}

TEST_CASE("schema text names the config surface") {
  const std::string schema = config_schema_text();
  for (const char* needle :
       {"bandit", "players", "horizon", "replicas", "root_seed", "metrics", "bernoulli",
        "spherical_gaussian", "ucb_mean_greedy", "visibility", "extra_checkpoints"})
    CHECK(schema.find(needle) != std::string::npos);
}
