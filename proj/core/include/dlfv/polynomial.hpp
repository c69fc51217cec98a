#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dlfv/error.hpp"
#include "dlfv/field.hpp"
#include "dlfv/gf16.hpp"

namespace dlfv {

// Minimal field interface shared by PrimeField and Gf16Field.
template <class F>
concept Field = requires(const F& f, const typename F::Element& a) {
  { f.zero() } -> std::convertible_to<typename F::Element>;
  { f.one() } -> std::convertible_to<typename F::Element>;
  { f.add(a, a) } -> std::convertible_to<typename F::Element>;
  { f.sub(a, a) } -> std::convertible_to<typename F::Element>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Element>;
  { f.inv(a) } -> std::convertible_to<typename F::Element>;
};

// coeffs[i] is the coefficient of X^i. The length, not the degree, is the
// scheme parameter, so a zero leading coefficient is kept.
template <Field F>
struct Polynomial {
  std::vector<typename F::Element> coeffs;

  std::size_t size() const { return coeffs.size(); }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

template <Field F>
struct BasicPoint {
  typename F::Element x;
  typename F::Element y;

  friend bool operator==(const BasicPoint&, const BasicPoint&) = default;
};

using Poly = Polynomial<PrimeField>;
using Point = BasicPoint<PrimeField>;
using Gf16Poly = Polynomial<Gf16Field>;
using Gf16Point = BasicPoint<Gf16Field>;

// Horner evaluation.
template <Field F>
typename F::Element evaluate(const F& field, const Polynomial<F>& poly,
                             const typename F::Element& x) {
  auto acc = field.zero();
  for (auto it = poly.coeffs.rbegin(); it != poly.coeffs.rend(); ++it) {
    acc = field.add(field.mul(acc, x), *it);
  }
  return acc;
}

// Unique polynomial with `coeff_count` coefficients through the given points.
// Builds M(X) = prod (X - x_j) once, then each basis numerator M(X)/(X - x_j)
// by synthetic division: O(n^2) field operations and n inversions.
template <Field F>
Polynomial<F> lagrange_interpolate(const F& field, std::span<const BasicPoint<F>> points,
                                   std::size_t coeff_count) {
  using E = typename F::Element;
  const std::size_t n = points.size();
  if (n != coeff_count || n == 0) {
    fail(Errc::wrong_count, "interpolation needs exactly " + std::to_string(coeff_count) +
                                " points, got " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i].x == points[j].x) fail(Errc::duplicate_x, "two points share an x");
    }
  }

  // master[k] = coefficient of X^k in prod (X - x_j); degree n.
  std::vector<E> master(n + 1, field.zero());
  master[0] = field.one();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k > 0; --k) {
      master[k] = field.sub(master[k - 1], field.mul(master[k], points[j].x));
    }
    master[0] = field.sub(field.zero(), field.mul(master[0], points[j].x));
  }

  Polynomial<F> out{std::vector<E>(n, field.zero())};
  std::vector<E> basis(n, field.zero());
  for (std::size_t j = 0; j < n; ++j) {
    const E& xj = points[j].x;
    // basis = master / (X - xj)
    E carry = master[n];
    for (std::size_t k = n; k > 0; --k) {
      basis[k - 1] = carry;
      carry = field.add(master[k - 1], field.mul(carry, xj));
    }
    E denom = field.zero();
    for (std::size_t k = n; k > 0; --k) denom = field.add(field.mul(denom, xj), basis[k - 1]);
    const E scale = field.mul(points[j].y, field.inv(denom));
    for (std::size_t k = 0; k < n; ++k) {
      out.coeffs[k] = field.add(out.coeffs[k], field.mul(scale, basis[k]));
    }
  }
  return out;
}

// ---- CRC over GF(2) -------------------------------------------------------

// X^16 + X^15 + X^2 + 1.
inline constexpr std::uint32_t kCrc16Generator = 0x18005;

// Bit string, most significant (first transmitted) bit first.
using BitString = std::vector<bool>;

BitString to_bits(std::uint64_t value, unsigned width);
BitString to_bits(ByteView bytes);

// Remainder of bits(X) * X^16 divided by `generator`: non-reflected,
// zero initial register, no final xor. generator must have degree 16.
std::uint16_t crc16_remainder(const BitString& bits, std::uint32_t generator = kCrc16Generator);

}  // namespace dlfv
