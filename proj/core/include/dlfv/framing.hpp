#pragma once

#include <cstdint>
#include <vector>

#include "dlfv/bytes.hpp"
#include "dlfv/md5.hpp"

namespace dlfv {

inline constexpr unsigned kDefaultSegBits = 256;
inline constexpr std::size_t kFrameHeaderBytes = 8;
inline constexpr std::size_t kFrameOverheadBytes = kFrameHeaderBytes + 16;

// Layout: u64 big-endian length(m) | m | MD5(m) | zero padding up to a
// multiple of seg_bits/8. The signature is always the last 16 bytes before
// the padding.
struct FramedMessage {
  Bytes body;
  Md5Digest signature{};
  std::size_t padding = 0;

  std::size_t size() const { return kFrameOverheadBytes + body.size() + padding; }
  Bytes to_bytes() const;
};

// seg_bits must be a positive multiple of 8.
FramedMessage frame(ByteView message, unsigned seg_bits = kDefaultSegBits);

// Returns the recovered message. MalformedFrame for impossible lengths or
// nonzero padding; SignatureMismatch when the stored digest does not match.
// With seg_bits 0 the padding length is not checked against a segment size.
Bytes deframe(ByteView framed, unsigned seg_bits = 0);

struct SegmentList {
  std::vector<BigInt> segments;
  unsigned seg_bits = kDefaultSegBits;
};

// Big-endian chunking; BadLength unless the size is a seg_bits/8 multiple.
SegmentList segment(ByteView framed, unsigned seg_bits);
// Inverse of segment(). BadLength if a value does not fit in seg_bits.
Bytes reassemble(const SegmentList& segments);

// ceil(l / floor(log2 q)): field elements needed for an l-bit message.
std::uint64_t required_coeff_count(std::uint64_t message_bits, const BigInt& q);

}  // namespace dlfv
