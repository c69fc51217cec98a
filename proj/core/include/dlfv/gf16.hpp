#pragma once

#include <cstdint>

namespace dlfv {

namespace gf2 {

constexpr int degree(std::uint64_t poly) {
  int d = -1;
  while (poly != 0) {
    poly >>= 1;
    ++d;
  }
  return d;
}

// Remainder of a(X) / b(X) over GF(2). b must be nonzero.
constexpr std::uint64_t mod(std::uint64_t a, std::uint64_t b) {
  const int db = degree(b);
  for (int da = degree(a); da >= db; da = degree(a)) a ^= b << (da - db);
  return a;
}

// Irreducible iff no polynomial of degree 1..deg/2 divides it.
constexpr bool is_irreducible(std::uint64_t poly) {
  const int d = degree(poly);
  if (d < 1) return false;
  for (std::uint64_t div = 2; degree(div) <= d / 2; ++div) {
    if (mod(poly, div) == 0) return false;
  }
  return true;
}

constexpr std::uint32_t smallest_irreducible(int deg) {
  for (std::uint64_t c = (std::uint64_t{1} << deg) | 1;; c += 2) {
    if (is_irreducible(c)) return static_cast<std::uint32_t>(c);
  }
}

}  // namespace gf2

// x^16 + x^5 + x^3 + x + 1, resolved at compile time.
inline constexpr std::uint32_t kGf16DefaultModulus = gf2::smallest_irreducible(16);
static_assert(kGf16DefaultModulus == 0x1002B);

struct Gf16Element {
  std::uint16_t value = 0;

  friend bool operator==(Gf16Element, Gf16Element) = default;
  friend auto operator<=>(Gf16Element, Gf16Element) = default;
};

// Carry-less product reduced modulo `modulus` (degree 16).
constexpr Gf16Element gf16_mul(Gf16Element a, Gf16Element b,
                               std::uint32_t modulus = kGf16DefaultModulus) {
  std::uint32_t acc = 0;
  std::uint32_t x = a.value;
  for (std::uint16_t y = b.value; y != 0; y >>= 1) {
    if (y & 1) acc ^= x;
    x <<= 1;
    if (x & 0x10000) x ^= modulus;
  }
  return {static_cast<std::uint16_t>(acc)};
}

class Gf16Field {
 public:
  using Element = Gf16Element;

  constexpr explicit Gf16Field(std::uint32_t modulus = kGf16DefaultModulus)
      : modulus_(modulus) {}

  constexpr std::uint32_t modulus() const { return modulus_; }

  constexpr Gf16Element zero() const { return {0}; }
  constexpr Gf16Element one() const { return {1}; }
  constexpr Gf16Element add(Gf16Element a, Gf16Element b) const {
    return {static_cast<std::uint16_t>(a.value ^ b.value)};
  }
  constexpr Gf16Element sub(Gf16Element a, Gf16Element b) const { return add(a, b); }
  constexpr Gf16Element neg(Gf16Element a) const { return a; }
  constexpr Gf16Element mul(Gf16Element a, Gf16Element b) const {
    return gf16_mul(a, b, modulus_);
  }
  Gf16Element pow(Gf16Element base, std::uint32_t exp) const;
  // a^(2^16 - 2). Throws ZeroInverse for 0.
  Gf16Element inv(Gf16Element a) const;

 private:
  std::uint32_t modulus_;
};

}  // namespace dlfv
