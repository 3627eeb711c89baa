#pragma once

#include <cmath>
#include <cstdint>

namespace freeride {

// splitmix64 finalizer; full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class Draw : std::uint64_t {
  Reward = 1,    // reward/counterfactual draws, keyed per arm
  Policy = 2,    // a policy's own randomization (e.g. give-up coin)
  Scenario = 3,  // preset scenario generation
};

// Substream identity. A (root_seed, key) pair fully determines the draw
// sequence; distinct keys give independent-quality streams.
struct StreamKey {
  std::uint64_t replica = 0;
  std::uint64_t player = 0;
  std::uint64_t round = 0;
  std::uint64_t arm = 0;
  Draw purpose = Draw::Reward;
};

// Counter-based stream: every output is a pure function of
// (root_seed, key, counter), so draws are reproducible regardless of the
// order streams are consumed in.
class KeyedRng {
 public:
  KeyedRng(std::uint64_t root_seed, const StreamKey& key) noexcept {
    std::uint64_t h = mix64(root_seed);
    h = mix64(h ^ key.replica);
    h = mix64(h ^ key.player);
    h = mix64(h ^ key.round);
    h = mix64(h ^ key.arm);
    h = mix64(h ^ static_cast<std::uint64_t>(key.purpose));
    base_ = h;
  }

  std::uint64_t next_u64() noexcept { return mix64(base_ ^ mix64(counter_++)); }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller. Avoids std:: distributions so the byte
  // stream does not depend on the standard library implementation.
  double next_gaussian() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t base_ = 0;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace freeride
