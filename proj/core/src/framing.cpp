#include "dlfv/framing.hpp"

#include <algorithm>
#include <string>

#include "dlfv/error.hpp"

namespace dlfv {
namespace {

std::size_t segment_bytes(unsigned seg_bits) {
  if (seg_bits == 0 || seg_bits % 8 != 0) {
    fail(Errc::bad_arguments, "seg_bits must be a positive multiple of 8");
  }
  return seg_bits / 8;
}

}  // namespace

Bytes FramedMessage::to_bytes() const {
  ByteWriter out;
  out.u64(body.size());
  out.raw(body);
  out.raw(signature);
  for (std::size_t i = 0; i < padding; ++i) out.u8(0);
  return std::move(out).bytes();
}

FramedMessage frame(ByteView message, unsigned seg_bits) {
  const std::size_t chunk = segment_bytes(seg_bits);
  FramedMessage f;
  f.body.assign(message.begin(), message.end());
  f.signature = md5(message);
  const std::size_t used = kFrameOverheadBytes + message.size();
  f.padding = (chunk - used % chunk) % chunk;
  return f;
}

Bytes deframe(ByteView framed, unsigned seg_bits) {
  // seg_bits 0: segment size unknown, any zero padding is accepted.
  const std::size_t chunk = seg_bits == 0 ? 0 : segment_bytes(seg_bits);
  if (framed.size() < kFrameOverheadBytes || (chunk != 0 && framed.size() % chunk != 0)) {
    fail(Errc::malformed_frame, "framed length " + std::to_string(framed.size()) +
                                    " is not a valid frame size");
  }
  ByteReader in(framed);
  const std::uint64_t length = in.u64();
  const std::uint64_t room = framed.size() - kFrameOverheadBytes;
  if (length > room || (chunk != 0 && room - length >= chunk)) {
    fail(Errc::malformed_frame, "header length does not match frame size");
  }
  ByteView body = in.raw(length);
  ByteView stored = in.raw(16);
  ByteView pad = in.raw(in.remaining());
  if (std::any_of(pad.begin(), pad.end(), [](std::uint8_t b) { return b != 0; })) {
    fail(Errc::malformed_frame, "nonzero padding");
  }
  const Md5Digest actual = md5(body);
  if (!std::equal(actual.begin(), actual.end(), stored.begin())) {
    fail(Errc::signature_mismatch, "MD5 of recovered message does not match signature");
  }
  return Bytes(body.begin(), body.end());
}

SegmentList segment(ByteView framed, unsigned seg_bits) {
  const std::size_t chunk = segment_bytes(seg_bits);
  if (framed.size() % chunk != 0) {
    fail(Errc::bad_length, std::to_string(framed.size()) + " bytes is not a multiple of " +
                               std::to_string(chunk));
  }
  SegmentList out{{}, seg_bits};
  out.segments.reserve(framed.size() / chunk);
  for (std::size_t off = 0; off < framed.size(); off += chunk) {
    out.segments.push_back(from_bytes(framed.subspan(off, chunk)));
  }
  return out;
}

Bytes reassemble(const SegmentList& list) {
  const std::size_t chunk = segment_bytes(list.seg_bits);
  Bytes out;
  out.reserve(list.segments.size() * chunk);
  for (const BigInt& s : list.segments) {
    Bytes b = to_bytes(s, chunk);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

std::uint64_t required_coeff_count(std::uint64_t message_bits, const BigInt& q) {
  if (message_bits == 0 || q < 2) fail(Errc::bad_arguments, "need l > 0 and q >= 2");
  const std::uint64_t per_element = bit_length(q) - 1;
  return (message_bits + per_element - 1) / per_element;
}

}  // namespace dlfv
