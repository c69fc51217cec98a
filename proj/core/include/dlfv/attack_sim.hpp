#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "dlfv/vault.hpp"

namespace dlfv {

// (r / (r - t))^n, evaluated verbatim; not a probability (it exceeds 1 for
// every t > 0, n > 0). DivisionByZero when r == t.
double paper_poly_prob(std::uint64_t r, std::uint64_t t, std::uint64_t n);

// C(t, n) / C(r, n): the chance that n distinct points drawn uniformly from
// the vault are all genuine. BadArguments unless 0 <= n <= t <= r.
mpq_class exact_success_prob(std::uint64_t r, std::uint64_t t, std::uint64_t n);

struct MonteCarloResult {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double rate = 0.0;
  double std_error = 0.0;  // sqrt(rate (1 - rate) / trials)
};

// Each trial draws n distinct indices into `genuine_mask` and succeeds iff all
// are genuine. Trial i uses a generator seeded from (seed, i), so the result
// is identical for any worker count.
MonteCarloResult monte_carlo_attack(const std::vector<bool>& genuine_mask, std::size_t n,
                                    std::uint64_t trials, std::uint64_t seed,
                                    unsigned workers = 1);

// Uses the vault's ground-truth mask; BadArguments if it has none.
MonteCarloResult monte_carlo_attack(const Vault& vault, std::uint64_t trials,
                                    std::uint64_t seed, unsigned workers = 1);

struct BruteForceResult {
  bool success = false;
  std::uint64_t subsets_tried = 0;
  Bytes message;
};

// Subset search over every vault point with the signature as success test.
// key == nullptr models an attacker without the ephemeral key.
BruteForceResult brute_force_unlock_attack(const Vault& vault, std::uint64_t max_subsets,
                                           const KeyFile* key);

// Baby-step giant-step for alpha^k = target in F_p with p <= 2^40. The
// baby-step table is built once per solver.
class DlogSolver {
 public:
  explicit DlogSolver(const FieldParams& params);

  // k in [0, p-2]; NotInGroup if no such k exists.
  std::uint64_t solve(std::uint64_t target) const;

 private:
  std::uint64_t p_;
  std::uint64_t m_;         // ceil(sqrt(p - 1))
  std::uint64_t giant_;     // alpha^(-m)
  std::unordered_map<std::uint64_t, std::uint64_t> baby_;
};

inline constexpr unsigned kMaxBsgsBits = 40;

BigInt solve_dlog_bsgs(const FieldElement& target, const FieldParams& params);

struct AttackReport {
  std::uint64_t r = 0;
  std::uint64_t t = 0;
  std::uint64_t n = 0;
  double paper_point_prob = 0.0;  // r / (r - t)
  double paper_poly_prob = 0.0;   // (r / (r - t))^n
  mpq_class exact_prob;
  MonteCarloResult empirical;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;

  // |empirical - exact| <= 3 standard errors (exact match when stderr is 0).
  bool within_three_sigma() const;
};

AttackReport make_attack_report(std::uint64_t r, std::uint64_t t, std::uint64_t n,
                                std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

// key=value lines.
std::string format_report(const AttackReport& report);
// Columns: r,t,n,paper_eq30,exact,empirical,stderr,trials.
std::string format_sweep_csv(std::span<const AttackReport> reports);

// Shortest round-trip-safe rendering, locale independent.
std::string format_double(double v);

}  // namespace dlfv
