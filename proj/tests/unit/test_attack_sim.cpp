#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dlfv/attack_sim.hpp"
#include "dlfv/error.hpp"
#include "support.hpp"

using namespace dlfv;

namespace {

template <typename F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::bad_arguments;
}

// Counts all-genuine n-subsets of r points whose first t are genuine.
std::pair<std::uint64_t, std::uint64_t> enumerate_subsets(unsigned r, unsigned t, unsigned n) {
  std::uint64_t total = 0, good = 0;
  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    if (static_cast<unsigned>(__builtin_popcount(mask)) != n) continue;
    ++total;
    if ((mask >> t) == 0) ++good;
  }
  return {good, total};
}

// Small vault with n = 3 (empty message, 64-bit segments, 72-bit p).
LockResult small_vault(std::size_t t, std::size_t chaff, Scheme scheme, std::uint64_t seed,
                       std::size_t message_len = 0) {
  const FieldParams& params = testing::params_for(72);
  Rng rng(seed);
  const LockingSet a = testing::spaced_set(params, t, 0, rng);
  return lock(testing::random_bytes(rng, message_len), a, params, {scheme, 64, chaff, 0, seed});
}

}  // namespace

TEST_CASE("(r/(r-t))^n ratio formula") {
  CHECK(paper_poly_prob(10, 5, 3) == 8.0);
  CHECK(paper_poly_prob(10, 5, 0) == 1.0);
  CHECK(paper_poly_prob(100, 20, 8) == 5.9604644775390625);
  CHECK(error_of([] { paper_poly_prob(7, 7, 2); }) == Errc::division_by_zero);
}

TEST_CASE("exact success probability") {
  CHECK(exact_success_prob(10, 5, 3) == mpq_class(1, 12));
  const auto [good, total] = enumerate_subsets(10, 5, 3);
  CHECK(total == 120);
  CHECK(good == 10);
  CHECK(exact_success_prob(10, 5, 0) == 1);
  CHECK(exact_success_prob(6, 6, 6) == 1);
  CHECK(error_of([] { exact_success_prob(5, 6, 1); }) == Errc::bad_arguments);
  CHECK(error_of([] { exact_success_prob(10, 3, 4); }) == Errc::bad_arguments);

  for (unsigned r = 1; r <= 14; ++r) {
    for (unsigned t = 0; t <= r; ++t) {
      for (unsigned n = 0; n <= t; ++n) {
        const auto [g, tot] = enumerate_subsets(r, t, n);
        const mpq_class q = exact_success_prob(r, t, n);
        mpq_class counted(static_cast<unsigned long>(g), static_cast<unsigned long>(tot));
        counted.canonicalize();
        CHECK(q == counted);
        CHECK(q >= 0);
        CHECK(q <= 1);
      }
    }
  }
}

TEST_CASE("Monte Carlo on a real vault agrees with the exact ratio") {
  const LockResult res = small_vault(5, 5, Scheme::alg1, 1);
  REQUIRE(res.vault.coeff_count == 3);
  REQUIRE(res.vault.size() == 10);
  const MonteCarloResult mc = monte_carlo_attack(res.vault, 200000, 42, 4);
  CHECK(mc.trials == 200000);
  const double exact = 1.0 / 12.0;
  CHECK(std::fabs(mc.rate - exact) <= 3 * mc.std_error);
  CHECK(mc.std_error == doctest::Approx(std::sqrt(mc.rate * (1 - mc.rate) / 200000)));
}

TEST_CASE("Monte Carlo edge cases and determinism") {
  const LockResult full = small_vault(6, 0, Scheme::alg1, 2);
  const MonteCarloResult all = monte_carlo_attack(full.vault, 1000, 1);
  CHECK(all.rate == 1.0);
  CHECK(all.std_error == 0.0);

  const LockResult res = small_vault(5, 7, Scheme::alg3, 3);
  const MonteCarloResult a = monte_carlo_attack(res.vault, 20000, 9, 1);
  const MonteCarloResult b = monte_carlo_attack(res.vault, 20000, 9, 1);
  CHECK(a.successes == b.successes);
  for (unsigned w : {2u, 3u, 7u, 16u}) {
    CHECK(monte_carlo_attack(res.vault, 20000, 9, w).successes == a.successes);
  }
  CHECK(monte_carlo_attack(res.vault, 20000, 10, 1).successes != a.successes);

  Vault loaded = decode_vault_file(encode_vault_file(res.vault));
  CHECK(error_of([&] { monte_carlo_attack(loaded, 10, 1); }) == Errc::bad_arguments);
  CHECK(error_of([&] { monte_carlo_attack(res.vault, 0, 1); }) == Errc::bad_arguments);
}

TEST_CASE("Monte Carlo matches the exact ratio across parameters") {
  Rng rng(5);
  for (int i = 0; i < 25; ++i) {
    const std::uint64_t r = 2 + rng.below(30);
    const std::uint64_t t = 1 + rng.below(r);
    const std::uint64_t n = rng.below(std::min<std::uint64_t>(t, 6) + 1);
    const AttackReport rep = make_attack_report(r, t, n, 100000, rng.next(), 4);
    CHECK(rep.within_three_sigma());
  }
}

TEST_CASE("brute-force subset search") {
  // r = 20, t = 6, n = 4: exhaustive search is 4845 subsets.
  const LockResult classical = small_vault(6, 14, Scheme::classical, 11, 8);
  REQUIRE(classical.vault.coeff_count == 4);
  const BruteForceResult c = brute_force_unlock_attack(classical.vault, 10000, nullptr);
  CHECK(c.success);
  CHECK(c.subsets_tried >= 1);
  CHECK(c.subsets_tried <= 4845);

  // Same seed: same x's and scramble, so the first all-genuine subset agrees.
  const LockResult alg1 = small_vault(6, 14, Scheme::alg1, 11, 8);
  const BruteForceResult with_key = brute_force_unlock_attack(alg1.vault, 10000, &alg1.key);
  CHECK(with_key.success);
  CHECK(with_key.subsets_tried == c.subsets_tried);
  CHECK(with_key.message == c.message);

  const BruteForceResult keyless = brute_force_unlock_attack(alg1.vault, 10000, nullptr);
  CHECK_FALSE(keyless.success);
  CHECK(keyless.subsets_tried == 4845);
}

TEST_CASE("keyless brute force never opens dlog vaults") {
  Rng rng(6);
  int opened = 0;
  for (int i = 0; i < 100; ++i) {
    const Scheme s = i % 3 == 0 ? Scheme::alg1 : i % 3 == 1 ? Scheme::alg3 : Scheme::alg2;
    LockResult res;
    if (s == Scheme::alg2) {
      const FieldParams& big = testing::params_for(256);
      const LockingSet a = testing::spaced_set(big, 6, 0, rng);
      res = lock(testing::random_bytes(rng, rng.below(8)), a, big, {s, 64, 8, 0, rng.next()});
    } else {
      res = small_vault(6, 8, s, rng.next(), rng.below(9));
    }
    opened += brute_force_unlock_attack(res.vault, 100000, nullptr).success;
  }
  CHECK(opened == 0);
}

TEST_CASE("baby-step giant-step") {
  const FieldParams p23 = testing::p23();
  CHECK(solve_dlog_bsgs({4}, p23) == 4);
  CHECK(solve_dlog_bsgs({1}, p23) == 0);
  const PrimeField f(p23);
  for (long k = 0; k <= 21; ++k) CHECK(solve_dlog_bsgs(f.pow(f.generator(), k), p23) == k);
  CHECK(error_of([&] { solve_dlog_bsgs({0}, p23); }) == Errc::not_in_group);
  CHECK(error_of([&] { solve_dlog_bsgs({1}, testing::params_for(48)); }) == Errc::bad_arguments);
}

TEST_CASE("BSGS inverts exponentiation exhaustively below 2^16") {
  for (unsigned bits : {5u, 8u, 12u, 16u}) {
    const FieldParams& params = testing::params_for(bits);
    const PrimeField f(params);
    const DlogSolver solver(params);
    const std::uint64_t order = params.p.get_ui() - 1;
    std::uint64_t mismatches = 0;
    FieldElement cur = f.one();
    for (std::uint64_t k = 0; k < order; ++k) {
      if (solver.solve(cur.value.get_ui()) != k) ++mismatches;
      cur = f.mul(cur, f.generator());
    }
    CHECK(mismatches == 0);
  }
  // Not a power of alpha: a non-generator base leaves quadratic non-residues
  // outside the subgroup it generates.
  const FieldParams squares{23, 4};
  const DlogSolver sq(squares);
  CHECK(error_of([&] { sq.solve(5); }) == Errc::not_in_group);
  CHECK(sq.solve(16) == 2);
}

TEST_CASE("BSGS on a 32-bit prime") {
  const FieldParams& params = testing::params_for(32);
  const PrimeField f(params);
  const DlogSolver solver(params);
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const BigInt k = rng.below(params.p - 1);
    CHECK(solver.solve(f.pow(f.generator(), k).value.get_ui()) == k.get_ui());
  }
}

TEST_CASE("attack report and CSV") {
  const AttackReport rep = make_attack_report(10, 5, 3, 1000, 7);
  CHECK(rep.paper_point_prob == 2.0);
  CHECK(rep.paper_poly_prob == 8.0);
  CHECK(rep.exact_prob == mpq_class(1, 12));
  CHECK(rep.empirical.trials == 1000);
  const std::string text = format_report(rep);
  CHECK(text.find("r=10\nt=5\nn=3\nseed=7\ntrials=1000\n") == 0);
  CHECK(text.find("paper_eq30=8\n") != std::string::npos);
  CHECK(text.find("paper_eq30_exceeds_one=true\n") != std::string::npos);
  CHECK(text.find("exact=1/12\n") != std::string::npos);
  CHECK(text.find("note=paper_eq30_exceeds_one") != std::string::npos);
  CHECK(format_report(rep) == format_report(make_attack_report(10, 5, 3, 1000, 7, 5)));

  const AttackReport no_chaff = make_attack_report(5, 5, 2, 10, 1);
  CHECK(no_chaff.exact_prob == 1);
  CHECK(no_chaff.empirical.rate == 1.0);
  CHECK(std::any_of(no_chaff.notes.begin(), no_chaff.notes.end(),
                    [](const std::string& s) { return s.rfind("paper_eq30_undefined", 0) == 0; }));

  const AttackReport zero_n = make_attack_report(10, 5, 0, 10, 1);
  CHECK(format_report(zero_n).find("paper_eq30_exceeds_one=false") != std::string::npos);

  const std::vector<AttackReport> sweep{rep, zero_n};
  const std::string csv = format_sweep_csv(sweep);
  CHECK(csv.rfind("r,t,n,paper_eq30,exact,empirical,stderr,trials\n10,5,3,8,0.08333333333,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(format_double(paper_poly_prob(100, 20, 8)) == "5.960464478");
}
