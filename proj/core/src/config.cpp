#include "freeride/config.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "freeride/errors.hpp"

namespace freeride {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ValidationError(key + ": " + what);
}

void expect_object(const json& j, const std::string& key) {
  if (!j.is_object()) fail(key, "expected an object");
}

void check_keys(const json& j, const std::string& key,
                std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (k == a) {
        ok = true;
        break;
      }
    if (!ok) fail(key + "." + k, "unknown key");
  }
}

double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) fail(key, "expected a number");
  return j.get<double>();
}

std::string get_string(const json& j, const std::string& key) {
  if (!j.is_string()) fail(key, "expected a string");
  return j.get<std::string>();
}

std::uint64_t get_uint(const json& j, const std::string& key) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    fail(key, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::vector<double> get_vector(const json& j, const std::string& key) {
  if (!j.is_array()) fail(key, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_number(j[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

RewardDistribution parse_reward_dist(const json& j, const std::string& key) {
  expect_object(j, key);
  if (!j.contains("kind")) fail(key + ".kind", "missing");
  const std::string kind = get_string(j["kind"], key + ".kind");
  try {
    if (kind == "bernoulli") {
      check_keys(j, key, {"kind", "p"});
      return RewardDistribution::bernoulli(get_number(j.at("p"), key + ".p"));
    }
    if (kind == "point_mass") {
      check_keys(j, key, {"kind", "v"});
      return RewardDistribution::point_mass(get_number(j.at("v"), key + ".v"));
    }
    if (kind == "discrete") {
      check_keys(j, key, {"kind", "values", "probs"});
      return RewardDistribution::discrete(get_vector(j.at("values"), key + ".values"),
                                          get_vector(j.at("probs"), key + ".probs"));
    }
    if (kind == "shifted") {
      check_keys(j, key, {"kind", "base", "keep_prob"});
      return shift_toward_one(parse_reward_dist(j.at("base"), key + ".base"),
                              get_number(j.at("keep_prob"), key + ".keep_prob"));
    }
  } catch (const json::exception& e) {
    fail(key, e.what());
  }
  fail(key + ".kind", "unknown reward distribution kind '" + kind + "'");
}

FeatureDistribution parse_feature_dist(const json& j, const std::string& key) {
  expect_object(j, key);
  if (!j.contains("kind")) fail(key + ".kind", "missing");
  const std::string kind = get_string(j["kind"], key + ".kind");
  try {
    if (kind == "point_mass_feature") {
      check_keys(j, key, {"kind", "v"});
      return FeatureDistribution(PointMassFeature{get_vector(j.at("v"), key + ".v")});
    }
    if (kind == "discrete_feature") {
      check_keys(j, key, {"kind", "points", "probs"});
      const json& pts = j.at("points");
      if (!pts.is_array()) fail(key + ".points", "expected an array of vectors");
      std::vector<std::vector<double>> points;
      for (std::size_t i = 0; i < pts.size(); ++i)
        points.push_back(get_vector(pts[i], key + ".points[" + std::to_string(i) + "]"));
      return FeatureDistribution(
          DiscreteFeature{std::move(points), get_vector(j.at("probs"), key + ".probs")});
    }
    if (kind == "spherical_gaussian") {
      check_keys(j, key, {"kind", "mean", "variance"});
      return FeatureDistribution(SphericalGaussian{
          get_vector(j.at("mean"), key + ".mean"),
          get_number(j.at("variance"), key + ".variance")});
    }
  } catch (const json::exception& e) {
    fail(key, e.what());
  }
  fail(key + ".kind", "unknown feature distribution kind '" + kind + "'");
}

Visibility parse_visibility(const json& j, const std::string& key) {
  const std::string s = get_string(j, key);
  if (s == "none") return Visibility::None;
  if (s == "actions_only") return Visibility::ActionsOnly;
  if (s == "actions_rewards") return Visibility::ActionsRewards;
  if (s == "full") return Visibility::Full;
  fail(key, "unknown visibility '" + s + "'");
}

PolicyKind parse_policy_kind(const json& j, const std::string& key) {
  const std::string s = get_string(j, key);
  if (s == "alpha_ucb") return PolicyKind::AlphaUcb;
  if (s == "eetc") return PolicyKind::Eetc;
  if (s == "giveup_ucb") return PolicyKind::GiveUpUcb;
  if (s == "count_greedy") return PolicyKind::CountGreedy;
  if (s == "samg") return PolicyKind::Samg;
  if (s == "ucb_mean_greedy") return PolicyKind::UcbMeanGreedy;
  fail(key, "unknown policy '" + s + "'");
}

PolicySpec parse_player(const json& j, const std::string& key) {
  expect_object(j, key);
  check_keys(j, key, {"policy", "alpha", "gamma", "target", "coefficients", "visibility"});
  if (!j.contains("policy")) fail(key + ".policy", "missing");
  PolicySpec spec;
  spec.kind = parse_policy_kind(j.at("policy"), key + ".policy");
  if (j.contains("alpha")) spec.alpha = get_number(j.at("alpha"), key + ".alpha");
  if (j.contains("gamma")) spec.gamma = get_number(j.at("gamma"), key + ".gamma");
  if (j.contains("target"))
    spec.target = static_cast<std::size_t>(get_uint(j.at("target"), key + ".target"));
  if (j.contains("coefficients"))
    spec.coefficients = get_vector(j.at("coefficients"), key + ".coefficients");
  if (j.contains("visibility"))
    spec.granted = parse_visibility(j.at("visibility"), key + ".visibility");
  return spec;
}

BanditModel parse_bandit(const json& j) {
  expect_object(j, "bandit");
  if (!j.contains("type")) fail("bandit.type", "missing");
  const std::string type = get_string(j.at("type"), "bandit.type");
  if (type == "stochastic") {
    check_keys(j, "bandit", {"type", "arms"});
    if (!j.contains("arms") || !j.at("arms").is_array()) fail("bandit.arms", "expected an array");
    std::vector<RewardDistribution> arms;
    for (std::size_t i = 0; i < j.at("arms").size(); ++i)
      arms.push_back(parse_reward_dist(j.at("arms")[i], "bandit.arms[" + std::to_string(i) + "]"));
    try {
      return StochasticBandit(std::move(arms));
    } catch (const Error& e) {
      fail("bandit", e.what());
    }
  }
  if (type == "contextual") {
    check_keys(j, "bandit", {"type", "arms", "contexts"});
    if (!j.contains("arms") || !j.at("arms").is_array()) fail("bandit.arms", "expected an array");
    if (!j.contains("contexts") || !j.at("contexts").is_array())
      fail("bandit.contexts", "expected an array of vectors");
    std::vector<FeatureDistribution> arms;
    for (std::size_t i = 0; i < j.at("arms").size(); ++i)
      arms.push_back(parse_feature_dist(j.at("arms")[i], "bandit.arms[" + std::to_string(i) + "]"));
    std::vector<std::vector<double>> contexts;
    for (std::size_t i = 0; i < j.at("contexts").size(); ++i)
      contexts.push_back(get_vector(j.at("contexts")[i], "bandit.contexts[" + std::to_string(i) + "]"));
    try {
      return ContextualBandit(std::move(arms), std::move(contexts));
    } catch (const Error& e) {
      fail("bandit", e.what());
    }
  }
  fail("bandit.type", "unknown bandit type '" + type + "'");
}

json reward_dist_to_json(const RewardDistribution& d) {
  struct Visitor {
    json operator()(const Bernoulli& b) const { return {{"kind", "bernoulli"}, {"p", b.p}}; }
    json operator()(const DiscretePoints& d) const {
      return {{"kind", "discrete"}, {"values", d.values}, {"probs", d.probs}};
    }
    json operator()(const PointMass& m) const { return {{"kind", "point_mass"}, {"v", m.v}}; }
    json operator()(const ShiftedMixture& s) const {
      return {{"kind", "shifted"}, {"base", reward_dist_to_json(*s.base)},
              {"keep_prob", s.keep_prob}};
    }
  };
  return std::visit(Visitor{}, d.node());
}

json feature_dist_to_json(const FeatureDistribution& f) {
  struct Visitor {
    json operator()(const DiscreteFeature& d) const {
      return {{"kind", "discrete_feature"}, {"points", d.points}, {"probs", d.probs}};
    }
    json operator()(const PointMassFeature& m) const {
      return {{"kind", "point_mass_feature"}, {"v", m.v}};
    }
    json operator()(const SphericalGaussian& g) const {
      return {{"kind", "spherical_gaussian"}, {"mean", g.mean}, {"variance", g.variance}};
    }
  };
  return std::visit(Visitor{}, f.node());
}

}  // namespace

SimulationConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  expect_object(j, "config");
  check_keys(j, "config",
             {"bandit", "players", "horizon", "replicas", "root_seed", "metrics"});
  if (!j.contains("bandit")) fail("bandit", "missing");
  if (!j.contains("players")) fail("players", "missing");
  if (!j.contains("horizon")) fail("horizon", "missing");

  SimulationConfig cfg;
  cfg.bandit = parse_bandit(j.at("bandit"));
  if (!j.at("players").is_array()) fail("players", "expected an array");
  for (std::size_t i = 0; i < j.at("players").size(); ++i)
    cfg.players.push_back(parse_player(j.at("players")[i], "players[" + std::to_string(i) + "]"));
  cfg.horizon = get_uint(j.at("horizon"), "horizon");
  if (j.contains("replicas")) cfg.replicas = get_uint(j.at("replicas"), "replicas");
  if (j.contains("root_seed")) cfg.root_seed = get_uint(j.at("root_seed"), "root_seed");
  if (j.contains("metrics")) {
    const json& m = j.at("metrics");
    expect_object(m, "metrics");
    check_keys(m, "metrics",
               {"counterfactuals", "checkpoint_base", "extra_checkpoints", "retain_history"});
    if (m.contains("counterfactuals")) {
      if (!m.at("counterfactuals").is_boolean()) fail("metrics.counterfactuals", "expected a bool");
      cfg.metrics.counterfactuals = m.at("counterfactuals").get<bool>();
    }
    if (m.contains("checkpoint_base")) {
      cfg.metrics.checkpoint_base = get_number(m.at("checkpoint_base"), "metrics.checkpoint_base");
      if (!(cfg.metrics.checkpoint_base > 1.0))
        fail("metrics.checkpoint_base", "must exceed 1");
    }
    if (m.contains("extra_checkpoints")) {
      const json& e = m.at("extra_checkpoints");
      if (!e.is_array()) fail("metrics.extra_checkpoints", "expected an array");
      for (std::size_t i = 0; i < e.size(); ++i)
        cfg.metrics.extra_checkpoints.push_back(
            get_uint(e[i], "metrics.extra_checkpoints[" + std::to_string(i) + "]"));
    }
    if (m.contains("retain_history")) {
      if (!m.at("retain_history").is_boolean()) fail("metrics.retain_history", "expected a bool");
      cfg.metrics.retain_history = m.at("retain_history").get<bool>();
    }
  }
  validate(cfg);
  return cfg;
}

SimulationConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const SimulationConfig& config) {
  json j;
  if (const auto* sb = std::get_if<StochasticBandit>(&config.bandit)) {
    json arms = json::array();
    for (std::size_t i = 0; i < sb->num_arms(); ++i) arms.push_back(reward_dist_to_json(sb->arm(i)));
    j["bandit"] = {{"type", "stochastic"}, {"arms", std::move(arms)}};
  } else {
    const auto& cb = std::get<ContextualBandit>(config.bandit);
    json arms = json::array();
    for (std::size_t i = 0; i < cb.num_arms(); ++i) arms.push_back(feature_dist_to_json(cb.arm(i)));
    j["bandit"] = {{"type", "contextual"}, {"arms", std::move(arms)}, {"contexts", cb.contexts()}};
  }
  json players = json::array();
  for (const PolicySpec& spec : config.players) {
    json p;
    p["policy"] = to_string(spec.kind);
    switch (spec.kind) {
      case PolicyKind::AlphaUcb:
      case PolicyKind::GiveUpUcb:
        p["alpha"] = spec.alpha;
        break;
      case PolicyKind::Eetc:
        p["gamma"] = spec.gamma;
        break;
      case PolicyKind::CountGreedy:
        p["target"] = spec.target;
        break;
      case PolicyKind::Samg:
        p["gamma"] = spec.gamma;
        p["target"] = spec.target;
        break;
      case PolicyKind::UcbMeanGreedy:
        p["gamma"] = spec.gamma;
        p["coefficients"] = spec.coefficients;
        break;
    }
    if (spec.granted) p["visibility"] = to_string(*spec.granted);
    players.push_back(std::move(p));
  }
  j["players"] = std::move(players);
  j["horizon"] = config.horizon;
  j["replicas"] = config.replicas;
  j["root_seed"] = config.root_seed;
  j["metrics"] = {{"counterfactuals", config.metrics.counterfactuals},
                  {"checkpoint_base", config.metrics.checkpoint_base},
                  {"extra_checkpoints", config.metrics.extra_checkpoints},
                  {"retain_history", config.metrics.retain_history}};
  return j.dump(2) + "\n";
}

std::string config_schema_text() {
  return R"(Experiment config (JSON object).

Top-level keys:
  bandit      object, required
  players     array of player objects, required; players[0] is player 1
  horizon     integer >= 1, required
  replicas    integer >= 1, default 1
  root_seed   integer, default 0
  metrics     object, optional

bandit (stochastic):
  { "type": "stochastic", "arms": [ <reward-dist>, ... ] }   # k >= 2 arms
  reward-dist is one of
    { "kind": "bernoulli",  "p": <prob> }                    # values {0,1}
    { "kind": "point_mass", "v": <real in [-1,1]> }
    { "kind": "discrete",   "values": [..], "probs": [..] }  # support in [-1,1]
    { "kind": "shifted",    "base": <reward-dist>, "keep_prob": <(0,1]> }
  The optimal arm must be unique.

bandit (contextual):
  { "type": "contextual", "arms": [ <feature-dist>, ... ],
    "contexts": [ [x_1], [x_2], ... ] }                      # one per player
  feature-dist is one of
    { "kind": "point_mass_feature", "v": [..] }
    { "kind": "discrete_feature", "points": [[..],..], "probs": [..] }
    { "kind": "spherical_gaussian", "mean": [..], "variance": <real >= 0> }
  All support points must lie in the closed unit ball.

player:
  { "policy": "alpha_ucb",  "alpha": <real >= 0> }
  { "policy": "eetc",       "gamma": <real > 0> }
  { "policy": "giveup_ucb", "alpha": <real >= 0> }
  and, for player 1 only (free riders):
  { "policy": "count_greedy", "target": <player 2..n>, "visibility": ... }
  { "policy": "samg", "target": <player 2..n>, "gamma": <real > 0>,
    "visibility": ... }
  { "policy": "ucb_mean_greedy", "gamma": <real > 0>,
    "coefficients": [c_2, ..., c_n], "visibility": "full" }
  visibility is one of "none" | "actions_only" | "actions_rewards" | "full";
  it defaults to the policy's requirement and must not fall below it
  (count_greedy needs actions_only, samg needs actions_rewards,
  ucb_mean_greedy needs full). For ucb_mean_greedy the contexts must satisfy
  x_1 = sum_p c_p x_p to 1e-9 per coordinate.

metrics:
  { "counterfactuals": true,          # per-round per-arm reward tables
    "checkpoint_base": 1.1,           # log-spaced checkpoint growth factor
    "extra_checkpoints": [..],        # merged into the schedule
    "retain_history": false }         # keep raw history in memory (tests)
)";
}

}  // namespace freeride
