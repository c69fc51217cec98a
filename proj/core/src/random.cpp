#include "dlfv/random.hpp"

#include "dlfv/error.hpp"

namespace dlfv {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) fail(Errc::bad_arguments, "Rng::below(0)");
  // Rejection zone keeps the result exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t v = next();
    if (v < limit) return v % bound;
  }
}

BigInt Rng::bits(std::size_t nbits) {
  BigInt v = 0;
  std::size_t filled = 0;
  while (filled < nbits) {
    std::size_t take = std::min<std::size_t>(64, nbits - filled);
    std::uint64_t word = next();
    if (take < 64) word &= (std::uint64_t{1} << take) - 1;
    v <<= take;
    BigInt w;
    mpz_import(w.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
    v += w;
    filled += take;
  }
  return v;
}

BigInt Rng::below(const BigInt& bound) {
  if (bound <= 0) fail(Errc::bad_arguments, "Rng::below(<=0)");
  if (bound.fits_ulong_p()) {
    return BigInt(below(static_cast<std::uint64_t>(bound.get_ui())));
  }
  const std::size_t n = bit_length(bound);
  for (;;) {
    BigInt v = bits(n);
    if (v < bound) return v;
  }
}

}  // namespace dlfv
