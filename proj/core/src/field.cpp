#include "dlfv/field.hpp"

#include <array>
#include <vector>

#include "dlfv/error.hpp"
#include "dlfv/random.hpp"

namespace dlfv {
namespace {

constexpr std::uint64_t kTrialDivisionLimit = 1u << 20;
constexpr std::uint8_t kParamsVersion = 1;
constexpr std::uint64_t kMillerRabinSeed = 0x6d696c6c65727261ULL;

// Odd primes below 2000, for sieving safe-prime candidates.
const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<std::uint32_t> out;
    std::vector<bool> composite(2000, false);
    for (std::uint32_t i = 3; i < 2000; i += 2) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint32_t j = i * i; j < 2000; j += 2 * i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

bool miller_rabin_round(const BigInt& n, const BigInt& n_minus_1, const BigInt& d,
                        unsigned long s, const BigInt& base) {
  BigInt x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

PrimeField::PrimeField(FieldParams params) : params_(std::move(params)) {
  if (params_.p < 3) fail(Errc::bad_arguments, "field modulus must be an odd prime");
}

FieldElement PrimeField::element(const BigInt& v) const {
  BigInt r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), params_.p.get_mpz_t());
  return {r};
}

FieldElement PrimeField::add(const FieldElement& a, const FieldElement& b) const {
  BigInt r = a.value + b.value;
  if (r >= params_.p) r -= params_.p;
  return {r};
}

FieldElement PrimeField::sub(const FieldElement& a, const FieldElement& b) const {
  BigInt r = a.value - b.value;
  if (r < 0) r += params_.p;
  return {r};
}

FieldElement PrimeField::neg(const FieldElement& a) const {
  if (a.value == 0) return a;
  return {params_.p - a.value};
}

FieldElement PrimeField::mul(const FieldElement& a, const FieldElement& b) const {
  BigInt r = a.value * b.value;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), params_.p.get_mpz_t());
  return {r};
}

FieldElement PrimeField::pow(const FieldElement& base, const BigInt& exp) const {
  if (exp < 0) fail(Errc::bad_arguments, "negative exponent");
  BigInt r;
  mpz_powm(r.get_mpz_t(), base.value.get_mpz_t(), exp.get_mpz_t(), params_.p.get_mpz_t());
  return {r};
}

FieldElement PrimeField::inv(const FieldElement& a) const {
  BigInt r;
  if (a.value % params_.p == 0 ||
      mpz_invert(r.get_mpz_t(), a.value.get_mpz_t(), params_.p.get_mpz_t()) == 0) {
    fail(Errc::zero_inverse, "element has no inverse");
  }
  return {r};
}

bool is_probable_prime(const BigInt& n, int rounds) {
  if (n < 2) return false;
  if (n < kTrialDivisionLimit) return trial_division_prime(n.get_ui());
  for (std::uint32_t sp : small_primes()) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), sp)) return false;
  }
  if (mpz_even_p(n.get_mpz_t())) return false;

  const BigInt n_minus_1 = n - 1;
  BigInt d = n_minus_1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  // Base 2 first: rejects nearly every composite cheaply.
  if (!miller_rabin_round(n, n_minus_1, d, s, 2)) return false;

  Rng rng(kMillerRabinSeed);
  const BigInt span = n - 3;  // bases in [2, n-2]
  for (int i = 1; i < rounds; ++i) {
    BigInt base = rng.below(span) + 2;
    if (!miller_rabin_round(n, n_minus_1, d, s, base)) return false;
  }
  return true;
}

bool is_primitive_root(const BigInt& candidate, const BigInt& p,
                       std::span<const BigInt> factors) {
  if (p < 3) fail(Errc::bad_arguments, "p must be an odd prime");
  if (factors.empty()) fail(Errc::bad_factorization, "empty factor list");

  // The factors must account for all of p-1 (repetition allowed).
  BigInt rest = p - 1;
  for (const BigInt& f : factors) {
    if (f < 2 || !is_probable_prime(f)) {
      fail(Errc::bad_factorization, "factor " + f.get_str() + " is not prime");
    }
    if (!mpz_divisible_p(rest.get_mpz_t(), f.get_mpz_t())) {
      fail(Errc::bad_factorization, "factor " + f.get_str() + " does not divide p-1");
    }
    while (mpz_divisible_p(rest.get_mpz_t(), f.get_mpz_t())) rest /= f;
  }
  if (rest != 1) fail(Errc::bad_factorization, "factors do not cover p-1");

  BigInt c;
  mpz_mod(c.get_mpz_t(), candidate.get_mpz_t(), p.get_mpz_t());
  if (c == 0) return false;
  const BigInt order = p - 1;
  for (const BigInt& f : factors) {
    BigInt e = order / f;
    BigInt r;
    mpz_powm(r.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (r == 1) return false;
  }
  return true;
}

FieldParams gen_params(unsigned bits, std::uint64_t seed) {
  if (bits < kMinParamBits) {
    fail(Errc::bad_arguments, "need at least " + std::to_string(kMinParamBits) + " bits");
  }
  Rng rng(seed);
  const unsigned qbits = bits - 1;
  BigInt q_low = 1;
  q_low <<= (qbits - 1);
  const BigInt q_high = q_low * 2;  // exclusive
  const auto& primes = small_primes();
  const bool sieve = qbits > 16;

  for (;;) {
    // Random odd start in [2^(qbits-1), 2^qbits); walk upward by 2.
    BigInt q = q_low + rng.below(q_low);
    if (mpz_even_p(q.get_mpz_t())) q += 1;

    std::vector<std::uint32_t> residues;
    if (sieve) {
      residues.reserve(primes.size());
      for (std::uint32_t sp : primes) residues.push_back(mpz_fdiv_ui(q.get_mpz_t(), sp));
    }

    for (; q < q_high; q += 2) {
      bool rejected = false;
      if (sieve) {
        for (std::size_t i = 0; i < primes.size(); ++i) {
          std::uint32_t r = residues[i];
          // q divisible by sp, or p = 2q+1 divisible by sp.
          if (r == 0 || (2 * r + 1) % primes[i] == 0) rejected = true;
          residues[i] = (r + 2) % primes[i];
        }
      }
      if (rejected) continue;
      if (!is_probable_prime(q)) continue;
      BigInt p = 2 * q + 1;
      if (!is_probable_prime(p)) continue;

      const std::array<BigInt, 2> factors{BigInt(2), q};
      for (BigInt alpha = 2; alpha < p - 1; ++alpha) {
        if (is_primitive_root(alpha, p, factors)) return {p, alpha};
      }
    }
  }
}

void write_field_params(ByteWriter& out, const FieldParams& params) {
  out.prefixed(params.p);
  out.prefixed(params.alpha);
}

FieldParams read_field_params(ByteReader& in) {
  FieldParams params;
  params.p = in.prefixed();
  params.alpha = in.prefixed();
  if (params.p < 5 || params.alpha < 2 || params.alpha > params.p - 2) {
    fail(Errc::malformed_file, "field parameters out of range");
  }
  return params;
}

Bytes encode_params_file(const FieldParams& params) {
  ByteWriter out;
  out.magic("DLFP");
  out.u8(kParamsVersion);
  write_field_params(out, params);
  return std::move(out).bytes();
}

FieldParams decode_params_file(ByteView bytes) {
  ByteReader in(bytes);
  in.expect_magic("DLFP");
  if (in.u8() != kParamsVersion) fail(Errc::malformed_file, "unsupported params version");
  FieldParams params = read_field_params(in);
  in.expect_end();
  return params;
}

}  // namespace dlfv
