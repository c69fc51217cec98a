#include "dlfv/dlog_codec.hpp"

#include "dlfv/error.hpp"
#include "dlfv/random.hpp"

namespace dlfv {
namespace {

constexpr std::uint8_t kKeyVersion = 1;
const BigInt kZero = 0;

}  // namespace

const BigInt& EphemeralKey::exponent_for(std::size_t index) const {
  if (index == 0) fail(Errc::bad_arguments, "segment indices are 1-based");
  switch (kind) {
    case KeyKind::single: return kappa;
    case KeyKind::parity: return index % 2 == 0 ? kappa_even : kappa_odd;
    case KeyKind::none: break;
  }
  return kZero;
}

EphemeralKey gen_key(const FieldParams& params, KeyKind kind, std::uint64_t seed) {
  if (params.p < 5) fail(Errc::bad_arguments, "gen_key needs p >= 5");
  Rng rng(seed);
  switch (kind) {
    case KeyKind::none:
      return EphemeralKey::none();
    case KeyKind::single:
      // {1, ..., p-2}
      return EphemeralKey::single(rng.below(params.p - 2) + 1);
    case KeyKind::parity: {
      // p-2 is odd: evens are 2..p-3 ((p-3)/2 values), odds 1..p-2 ((p-1)/2 values).
      BigInt even = 2 * (rng.below((params.p - 3) / 2) + 1);
      BigInt odd = 2 * rng.below((params.p - 1) / 2) + 1;
      return EphemeralKey::parity(std::move(even), std::move(odd));
    }
  }
  fail(Errc::bad_arguments, "unknown key kind");
}

DlogCodec::DlogCodec(PrimeField field, EphemeralKey key)
    : field_(std::move(field)), key_(std::move(key)) {
  if (key_.kind == KeyKind::parity) {
    odd_ = make(key_.kappa_odd);
    even_ = make(key_.kappa_even);
  } else {
    odd_ = make(key_.exponent_for(1));
    even_ = odd_;
  }
}

DlogCodec::Multiplier DlogCodec::make(const BigInt& exponent) const {
  FieldElement forward = field_.pow(field_.generator(), exponent);
  FieldElement inverse = field_.inv(forward);
  return {std::move(forward), std::move(inverse)};
}

const DlogCodec::Multiplier& DlogCodec::multiplier_for(std::size_t index) const {
  if (index == 0) fail(Errc::bad_arguments, "segment indices are 1-based");
  return index % 2 == 0 ? even_ : odd_;
}

FieldElement DlogCodec::encode_segment(const FieldElement& m, std::size_t index) const {
  return field_.mul(m, multiplier_for(index).forward);
}

FieldElement DlogCodec::decode_segment(const FieldElement& beta, std::size_t index) const {
  return field_.mul(beta, multiplier_for(index).inverse);
}

FieldElement DlogCodec::encode_whole(ByteView framed) const {
  BigInt m = from_bytes(framed);
  if (m >= field_.modulus()) {
    fail(Errc::message_too_large,
         "framed message (" + std::to_string(bit_length(m)) + " bits) must be below p (" +
             std::to_string(field_.params().p_bits()) + " bits)");
  }
  return field_.mul({m}, odd_.forward);
}

Bytes DlogCodec::decode_whole(const FieldElement& beta, std::size_t framed_len) const {
  return to_bytes(field_.mul(beta, odd_.inverse).value, framed_len);
}

Bytes encode_key_file(const KeyFile& file) {
  ByteWriter out;
  out.magic("DLFK");
  out.u8(kKeyVersion);
  out.u8(static_cast<std::uint8_t>(file.key.kind));
  switch (file.key.kind) {
    case KeyKind::single:
      out.prefixed(file.key.kappa);
      break;
    case KeyKind::parity:
      out.prefixed(file.key.kappa_even);
      out.prefixed(file.key.kappa_odd);
      break;
    case KeyKind::none:
      break;
  }
  out.u16(file.framed_length);
  return std::move(out).bytes();
}

KeyFile decode_key_file(ByteView bytes) {
  ByteReader in(bytes);
  in.expect_magic("DLFK");
  if (in.u8() != kKeyVersion) fail(Errc::malformed_file, "unsupported key file version");
  KeyFile file;
  switch (in.u8()) {
    case 0:
      file.key = EphemeralKey::single(in.prefixed());
      break;
    case 1: {
      BigInt even = in.prefixed();
      BigInt odd = in.prefixed();
      file.key = EphemeralKey::parity(std::move(even), std::move(odd));
      break;
    }
    case 2:
      file.key = EphemeralKey::none();
      break;
    default:
      fail(Errc::malformed_file, "unknown key kind");
  }
  file.framed_length = in.u16();
  in.expect_end();
  return file;
}

}  // namespace dlfv
