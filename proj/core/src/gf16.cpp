#include "dlfv/gf16.hpp"

#include "dlfv/error.hpp"

namespace dlfv {

Gf16Element Gf16Field::pow(Gf16Element base, std::uint32_t exp) const {
  Gf16Element r = one();
  while (exp != 0) {
    if (exp & 1) r = mul(r, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return r;
}

Gf16Element Gf16Field::inv(Gf16Element a) const {
  if (a.value == 0) fail(Errc::zero_inverse, "zero in GF(2^16)");
  return pow(a, 0xFFFE);
}

}  // namespace dlfv
