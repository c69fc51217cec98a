#pragma once

#include <cstdint>
#include <span>

#include "dlfv/bytes.hpp"

namespace dlfv {

// Ambient prime field: modulus p and a primitive root alpha of p.
struct FieldParams {
  BigInt p;
  BigInt alpha;

  std::size_t p_bits() const { return bit_length(p); }
  // Fixed width of one serialized field element.
  std::size_t element_bytes() const { return (p_bits() + 7) / 8; }

  friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

struct FieldElement {
  BigInt value;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend auto operator<=>(const FieldElement& a, const FieldElement& b) {
    return cmp(a.value, b.value) <=> 0;
  }
};

// Arithmetic context for F_p. Elements are plain values; the field carries
// the modulus, in the same way a context object owns the ring.
class PrimeField {
 public:
  using Element = FieldElement;

  explicit PrimeField(FieldParams params);

  const FieldParams& params() const { return params_; }
  const BigInt& modulus() const { return params_.p; }

  // Reduces v into [0, p).
  FieldElement element(const BigInt& v) const;
  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement generator() const { return {params_.alpha}; }

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement pow(const FieldElement& base, const BigInt& exp) const;
  // Throws ZeroInverse for a == 0.
  FieldElement inv(const FieldElement& a) const;

  bool contains(const BigInt& v) const { return v >= 0 && v < params_.p; }

 private:
  FieldParams params_;
};

// Miller-Rabin with `rounds` bases drawn from a fixed-seed generator, so the
// answer is a pure function of n. Exact (trial division) below 2^20.
bool is_probable_prime(const BigInt& n, int rounds = 64);

// True iff candidate^((p-1)/f) != 1 (mod p) for every listed factor f.
// The factor list must be exactly the distinct primes dividing p-1;
// anything else raises BadFactorization.
bool is_primitive_root(const BigInt& candidate, const BigInt& p,
                       std::span<const BigInt> factors_of_p_minus_1);

inline constexpr unsigned kMinParamBits = 5;
inline constexpr unsigned kDefaultParamBits = 1024;

// Safe prime p = 2q+1 of exactly `bits` bits with alpha the smallest
// primitive root >= 2. Deterministic in (bits, seed).
FieldParams gen_params(unsigned bits, std::uint64_t seed);

// u16 len(p) | p | u16 len(alpha) | alpha, all big-endian.
void write_field_params(ByteWriter& out, const FieldParams& params);
FieldParams read_field_params(ByteReader& in);

// Standalone params file: "DLFP" | version u8 | FieldParams block.
Bytes encode_params_file(const FieldParams& params);
FieldParams decode_params_file(ByteView bytes);

}  // namespace dlfv
