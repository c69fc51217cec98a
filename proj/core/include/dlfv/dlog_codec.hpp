#pragma once

#include <cstdint>

#include "dlfv/field.hpp"

namespace dlfv {

enum class KeyKind : std::uint8_t {
  single = 0,  // one kappa for every segment
  parity = 1,  // kappa_even for even 1-based indices, kappa_odd for odd
  none = 2,    // classical vault: no discrete-log layer
};

// Ephemeral exponent(s). Every kappa lies in {1, ..., p-2}.
struct EphemeralKey {
  KeyKind kind = KeyKind::none;
  BigInt kappa;       // single
  BigInt kappa_even;  // parity
  BigInt kappa_odd;   // parity

  static EphemeralKey none() { return {}; }
  static EphemeralKey single(BigInt k) { return {KeyKind::single, std::move(k), 0, 0}; }
  static EphemeralKey parity(BigInt even, BigInt odd) {
    return {KeyKind::parity, 0, std::move(even), std::move(odd)};
  }

  // Exponent applied to the segment at 1-based `index`.
  const BigInt& exponent_for(std::size_t index) const;

  friend bool operator==(const EphemeralKey&, const EphemeralKey&) = default;
};

// Uniform over {1..p-2}; for parity keys, uniform within each parity class.
// Deterministic in (params, kind, seed).
EphemeralKey gen_key(const FieldParams& params, KeyKind kind, std::uint64_t seed);

// Multiplies by alpha^kappa and back. Multipliers and their inverses are
// computed once per codec.
class DlogCodec {
 public:
  DlogCodec(PrimeField field, EphemeralKey key);

  const PrimeField& field() const { return field_; }
  const EphemeralKey& key() const { return key_; }

  // m * alpha^kappa_index (1-based index).
  FieldElement encode_segment(const FieldElement& m, std::size_t index) const;
  FieldElement decode_segment(const FieldElement& beta, std::size_t index) const;

  // Whole framed message as one big-endian integer; MessageTooLarge if >= p.
  FieldElement encode_whole(ByteView framed) const;
  // Inverse of encode_whole; the result is written at `framed_len` bytes.
  // BadLength if the decoded integer does not fit.
  Bytes decode_whole(const FieldElement& beta, std::size_t framed_len) const;

 private:
  struct Multiplier {
    FieldElement forward;
    FieldElement inverse;
  };
  Multiplier make(const BigInt& exponent) const;
  const Multiplier& multiplier_for(std::size_t index) const;

  PrimeField field_;
  EphemeralKey key_;
  Multiplier odd_;   // also used for single and none keys
  Multiplier even_;
};

// Key file: "DLFK" | version u8 | kind u8 | kappa value(s), each u16
// length-prefixed big-endian | u16 framed byte length (whole-message
// scheme only, otherwise 0).
struct KeyFile {
  EphemeralKey key;
  std::uint16_t framed_length = 0;

  friend bool operator==(const KeyFile&, const KeyFile&) = default;
};

Bytes encode_key_file(const KeyFile& key);
KeyFile decode_key_file(ByteView bytes);

}  // namespace dlfv
