#include <doctest.h>
#include <set>

#include "dlfv/error.hpp"
#include "dlfv/gf16.hpp"
#include "dlfv/random.hpp"

using namespace dlfv;

namespace {

// Full 32-bit carry-less product, then long division by the modulus.
std::uint16_t oracle_mul(std::uint16_t a, std::uint16_t b, std::uint32_t modulus) {
  std::uint64_t prod = 0;
  for (int i = 0; i < 16; ++i) {
    if ((b >> i) & 1) prod ^= std::uint64_t{a} << i;
  }
  for (int bit = 31; bit >= 16; --bit) {
    if ((prod >> bit) & 1) prod ^= std::uint64_t{modulus} << (bit - 16);
  }
  return static_cast<std::uint16_t>(prod);
}

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
  auto deg = [](std::uint32_t v) { return v == 0 ? -1 : 31 - __builtin_clz(v); };
  while (deg(a) >= deg(b)) a ^= b << (deg(a) - deg(b));
  return a;
}

bool oracle_irreducible16(std::uint32_t poly) {
  // No divisor of degree 1..8 (every polynomial in [2, 2^9)).
  for (std::uint32_t d = 2; d < (1u << 9); ++d) {
    if (poly_mod(poly, d) == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("default modulus is the smallest irreducible of degree 16") {
  CHECK(kGf16DefaultModulus == 0x1002B);
  CHECK(oracle_irreducible16(kGf16DefaultModulus));
  // No root in GF(2): constant term 1 and an odd number of terms.
  CHECK((kGf16DefaultModulus & 1) == 1);
  CHECK(__builtin_popcount(kGf16DefaultModulus) % 2 == 1);
  for (std::uint32_t c = 0x10000; c < kGf16DefaultModulus; ++c) CHECK_FALSE(oracle_irreducible16(c));
}

TEST_CASE("gf16_mul identities") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Gf16Element a{static_cast<std::uint16_t>(rng.next())};
    const Gf16Element b{static_cast<std::uint16_t>(rng.next())};
    CHECK(gf16_mul(a, {0}) == Gf16Element{0});
    CHECK(gf16_mul(a, {1}) == a);
    CHECK(gf16_mul(a, b) == gf16_mul(b, a));
    CHECK(gf16_mul(a, b).value == oracle_mul(a.value, b.value, kGf16DefaultModulus));
  }
}

TEST_CASE("field axioms spot checks") {
  const Gf16Field f;
  Rng rng(9);
  for (int i = 0; i < 500; ++i) {
    const Gf16Element a{static_cast<std::uint16_t>(rng.next())};
    const Gf16Element b{static_cast<std::uint16_t>(rng.next())};
    const Gf16Element c{static_cast<std::uint16_t>(rng.next())};
    CHECK(f.add(a, b).value == (a.value ^ b.value));
    CHECK(f.add(a, a) == f.zero());
    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
  }
}

TEST_CASE("every nonzero element is invertible") {
  const Gf16Field f;
  std::size_t failures = 0;
  for (std::uint32_t v = 1; v < 65536; ++v) {
    const Gf16Element a{static_cast<std::uint16_t>(v)};
    if (f.mul(a, f.inv(a)) != f.one()) ++failures;
  }
  CHECK(failures == 0);
  CHECK_THROWS_AS(f.inv({0}), Error);
}
