#include "dlfv/bytes.hpp"

#include <limits>
#include <string>

#include "dlfv/error.hpp"

namespace dlfv {

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

Bytes to_bytes(const BigInt& v) {
  if (v < 0) fail(Errc::bad_arguments, "negative integer cannot be serialized");
  if (v == 0) return {};
  std::size_t count = (bit_length(v) + 7) / 8;
  Bytes out(count);
  mpz_export(out.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
  out.resize(count);
  return out;
}

Bytes to_bytes(const BigInt& v, std::size_t width) {
  Bytes minimal = to_bytes(v);
  if (minimal.size() > width) {
    fail(Errc::bad_length, "integer needs " + std::to_string(minimal.size()) +
                               " bytes, width is " + std::to_string(width));
  }
  Bytes out(width - minimal.size(), 0);
  out.insert(out.end(), minimal.begin(), minimal.end());
  return out;
}

BigInt from_bytes(ByteView bytes) {
  BigInt v;
  if (!bytes.empty()) {
    mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return v;
}

std::string to_hex(const BigInt& v) { return "0x" + v.get_str(16); }

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xf]);
  }
  return s;
}

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s = s.substr(2);
    base = 16;
  }
  BigInt v;
  if (s.empty() || s[0] == '-' || s[0] == '+' || v.set_str(s, base) != 0) {
    fail(Errc::bad_arguments, "not a non-negative integer: '" + std::string(text) + "'");
  }
  return v;
}

void ByteWriter::u16(std::uint16_t v) {
  u8(static_cast<std::uint8_t>(v >> 8));
  u8(static_cast<std::uint8_t>(v));
}

void ByteWriter::u32(std::uint32_t v) {
  u16(static_cast<std::uint16_t>(v >> 16));
  u16(static_cast<std::uint16_t>(v));
}

void ByteWriter::u64(std::uint64_t v) {
  u32(static_cast<std::uint32_t>(v >> 32));
  u32(static_cast<std::uint32_t>(v));
}

void ByteWriter::magic(std::string_view tag) {
  for (char c : tag) u8(static_cast<std::uint8_t>(c));
}

void ByteWriter::prefixed(const BigInt& v) {
  Bytes b = to_bytes(v);
  if (b.size() > std::numeric_limits<std::uint16_t>::max()) {
    fail(Errc::bad_length, "integer too long for a u16 length prefix");
  }
  u16(static_cast<std::uint16_t>(b.size()));
  raw(b);
}

std::uint8_t ByteReader::u8() { return raw(1)[0]; }

std::uint16_t ByteReader::u16() {
  auto b = raw(2);
  return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
}

std::uint32_t ByteReader::u32() {
  std::uint32_t hi = u16();
  return (hi << 16) | u16();
}

std::uint64_t ByteReader::u64() {
  std::uint64_t hi = u32();
  return (hi << 32) | u32();
}

ByteView ByteReader::raw(std::size_t n) {
  if (n > remaining()) {
    fail(Errc::malformed_file, "truncated input: wanted " + std::to_string(n) +
                                   " bytes at offset " + std::to_string(pos_));
  }
  ByteView out = in_.subspan(pos_, n);
  pos_ += n;
  return out;
}

void ByteReader::expect_magic(std::string_view tag) {
  ByteView got = raw(tag.size());
  for (std::size_t i = 0; i < tag.size(); ++i) {
    if (got[i] != static_cast<std::uint8_t>(tag[i])) {
      fail(Errc::malformed_file, "bad magic, expected " + std::string(tag));
    }
  }
}

BigInt ByteReader::prefixed() {
  std::uint16_t len = u16();
  return from_bytes(raw(len));
}

void ByteReader::expect_end() const {
  if (remaining() != 0) {
    fail(Errc::malformed_file, std::to_string(remaining()) + " trailing bytes");
  }
}

}  // namespace dlfv
