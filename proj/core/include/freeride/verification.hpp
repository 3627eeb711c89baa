#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "freeride/engine.hpp"
#include "freeride/theory.hpp"

namespace freeride {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// KL properties: the shift bound KL(D, shift(D, p)) <= ln(1/p), the exact KL
// of the needcontexts arm pair (ln 2 / 3), and the Bretagnolle-Huber
// inequality on random (P, Q, A) triples.
std::vector<CheckResult> run_kl_suite(std::uint64_t seed, std::size_t trials = 1000);

// Deterministic UCB sample-count floor, checked empirically over seeds.
std::vector<CheckResult> run_ucb_floor_suite(double alpha = 2.0, double eta = 2.5,
                                             std::size_t k = 3, std::uint64_t t0 = 1000,
                                             std::uint64_t T = 100000,
                                             std::uint64_t seeds = 20,
                                             std::uint64_t root_seed = 0);

// Player 2's (action, reward) trace must be bit-identical across the two
// needcontexts environments when run with the same root seed.
std::vector<CheckResult> run_coupling_suite(std::uint64_t root_seed = 0,
                                            std::uint64_t horizon = 10000,
                                            std::uint64_t replicas = 5);

// EpochExploreThenCommit sample-count floor: N_i^t >= gamma * log2(t) for all
// t past the first epoch j0 with 2^j0 >= k * ceil(gamma * (j0 + 2)).
std::vector<CheckResult> run_eetc_floor_suite(double gamma, std::size_t k,
                                              std::uint64_t T = 100000,
                                              std::uint64_t seeds = 10,
                                              std::uint64_t root_seed = 0);

// Runs every suite above with its defaults.
std::vector<CheckResult> run_all_suites(std::uint64_t root_seed = 0);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace freeride
