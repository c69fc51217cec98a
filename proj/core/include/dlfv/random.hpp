#pragma once

#include <cstdint>
#include <random>

#include "dlfv/bytes.hpp"

namespace dlfv {

// SplitMix64 finalizer; used to derive independent sub-seeds from one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

// Seeded generator with platform-independent output. std::mt19937_64's
// sequence is fixed by the standard; the distributions below are our own so
// results do not depend on the standard library in use.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [0, bound). bound must be positive.
  BigInt below(const BigInt& bound);
  // Uniform integer with exactly `bits` random bits (may have leading zeros).
  BigInt bits(std::size_t bits);

 private:
  std::mt19937_64 engine_;
};

}  // namespace dlfv
