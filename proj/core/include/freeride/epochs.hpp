#pragma once

#include <bit>
#include <cassert>
#include <cstdint>

namespace freeride {

// Doubling-epoch index of round t >= 1: floor(log2(t)). Epoch j covers
// rounds 2^j .. 2^{j+1}-1 inclusive.
inline std::uint64_t epoch_of(std::uint64_t t) {
  assert(t >= 1);
  return 63 - static_cast<std::uint64_t>(std::countl_zero(t));
}

}  // namespace freeride
