#include "dlfv/polynomial.hpp"

namespace dlfv {

BitString to_bits(std::uint64_t value, unsigned width) {
  BitString bits(width);
  for (unsigned i = 0; i < width; ++i) bits[i] = (value >> (width - 1 - i)) & 1;
  return bits;
}

BitString to_bits(ByteView bytes) {
  BitString bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes) {
    for (int i = 7; i >= 0; --i) bits.push_back((b >> i) & 1);
  }
  return bits;
}

std::uint16_t crc16_remainder(const BitString& bits, std::uint32_t generator) {
  if (gf2::degree(generator) != 16) fail(Errc::bad_arguments, "CRC generator must have degree 16");
  const std::uint32_t low = generator & 0xFFFF;
  std::uint32_t reg = 0;
  // Shifting the top register bit out and feeding the message bit in is the
  // long division of bits * X^16 with the X^16 term implicit.
  for (bool bit : bits) {
    const bool top = (reg >> 15) & 1;
    reg = (reg << 1) & 0xFFFF;
    if (top != bit) reg ^= low;
  }
  return static_cast<std::uint16_t>(reg);
}

}  // namespace dlfv
