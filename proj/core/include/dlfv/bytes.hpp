#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace dlfv {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using BigInt = mpz_class;

std::size_t bit_length(const BigInt& v);

// Minimal big-endian encoding; zero encodes as an empty string.
Bytes to_bytes(const BigInt& v);
// Fixed-width big-endian encoding, left-padded with zeros. Throws
// BadLength if v does not fit in `width` bytes.
Bytes to_bytes(const BigInt& v, std::size_t width);
BigInt from_bytes(ByteView bytes);

std::string to_hex(const BigInt& v);
std::string to_hex(ByteView bytes);

// Accepts decimal or 0x-prefixed hexadecimal. Throws BadArguments.
BigInt parse_bigint(std::string_view text);

// Big-endian serializer used by every on-disk format.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void raw(ByteView bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }
  void magic(std::string_view tag);
  // u16 byte-length followed by the minimal big-endian encoding.
  void prefixed(const BigInt& v);

  const Bytes& bytes() const& { return out_; }
  Bytes bytes() && { return std::move(out_); }

 private:
  Bytes out_;
};

// Counterpart of ByteWriter. Every read past the end throws MalformedFile.
class ByteReader {
 public:
  explicit ByteReader(ByteView in) : in_(in) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  ByteView raw(std::size_t n);
  void expect_magic(std::string_view tag);
  BigInt prefixed();

  std::size_t remaining() const { return in_.size() - pos_; }
  void expect_end() const;

 private:
  ByteView in_;
  std::size_t pos_ = 0;
};

}  // namespace dlfv
