#pragma once

#include <map>
#include <utility>
#include <vector>

#include "dlfv/field.hpp"
#include "dlfv/random.hpp"
#include "dlfv/vault.hpp"

namespace dlfv::testing {

// gen_params is deterministic but not free at 256 bits; share results.
inline const FieldParams& params_for(unsigned bits, std::uint64_t seed = 1) {
  static std::map<std::pair<unsigned, std::uint64_t>, FieldParams> cache;
  auto it = cache.find({bits, seed});
  if (it == cache.end()) it = cache.emplace(std::pair{bits, seed}, gen_params(bits, seed)).first;
  return it->second;
}

inline FieldParams p23() { return {23, 5}; }

inline Bytes random_bytes(Rng& rng, std::size_t len) {
  Bytes out(len);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng.next());
  return out;
}

// t distinct elements in [delta, p-1-delta], pairwise more than 2*delta apart.
inline LockingSet spaced_set(const FieldParams& params, std::size_t t, const BigInt& delta,
                             Rng& rng) {
  LockingSet out;
  const BigInt span = params.p - 2 * delta;
  while (out.size() < t) {
    BigInt v = rng.below(span) + delta;
    bool ok = true;
    for (const FieldElement& e : out) {
      BigInt d = e.value > v ? e.value - v : v - e.value;
      if (d <= 2 * delta) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back({v});
  }
  return out;
}

// Locking polynomial of a lock result, rebuilt from the message and key.
inline Poly locking_poly(ByteView message, const Vault& vault, const KeyFile& key) {
  const DlogCodec codec(PrimeField(vault.params), key.key);
  return {encode_coefficients(message, vault.scheme, codec, vault.seg_bits).coeffs};
}

}  // namespace dlfv::testing
