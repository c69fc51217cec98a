#include "dlfv/attack_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "dlfv/error.hpp"
#include "dlfv/random.hpp"

namespace dlfv {
namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

std::uint64_t count_trials(const std::vector<bool>& mask, std::size_t n, std::uint64_t begin,
                           std::uint64_t end, std::uint64_t seed) {
  const std::size_t r = mask.size();
  std::vector<std::size_t> pool(r);
  std::uint64_t hits = 0;
  for (std::uint64_t trial = begin; trial < end; ++trial) {
    Rng rng(mix_seed(seed, trial));
    for (std::size_t i = 0; i < r; ++i) pool[i] = i;
    bool all_genuine = true;
    // Partial Fisher-Yates: the first n slots are a uniform n-subset.
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = i + rng.below(static_cast<std::uint64_t>(r - i));
      std::swap(pool[i], pool[j]);
      if (!mask[pool[i]]) {
        all_genuine = false;
        break;
      }
    }
    if (all_genuine) ++hits;
  }
  return hits;
}

}  // namespace

double paper_poly_prob(std::uint64_t r, std::uint64_t t, std::uint64_t n) {
  if (t > r) fail(Errc::bad_arguments, "t must not exceed r");
  if (r == t) fail(Errc::division_by_zero, "r - t = 0");
  const double ratio = static_cast<double>(r) / static_cast<double>(r - t);
  return std::pow(ratio, static_cast<double>(n));
}

mpq_class exact_success_prob(std::uint64_t r, std::uint64_t t, std::uint64_t n) {
  if (n > t || t > r) fail(Errc::bad_arguments, "need 0 <= n <= t <= r");
  mpz_class num, den;
  mpz_bin_uiui(num.get_mpz_t(), t, n);
  mpz_bin_uiui(den.get_mpz_t(), r, n);
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

MonteCarloResult monte_carlo_attack(const std::vector<bool>& genuine_mask, std::size_t n,
                                    std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  if (trials == 0) fail(Errc::bad_arguments, "trials must be positive");
  if (n > genuine_mask.size()) fail(Errc::bad_arguments, "n exceeds the number of points");
  workers = std::max(1u, workers);

  std::vector<std::uint64_t> partial(workers, 0);
  if (workers == 1) {
    partial[0] = count_trials(genuine_mask, n, 0, trials, seed);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t per = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min(trials, w * per);
      const std::uint64_t end = std::min(trials, begin + per);
      pool.emplace_back([&, w, begin, end] {
        partial[w] = count_trials(genuine_mask, n, begin, end, seed);
      });
    }
    for (auto& th : pool) th.join();
  }

  MonteCarloResult out;
  out.trials = trials;
  for (std::uint64_t c : partial) out.successes += c;
  out.rate = static_cast<double>(out.successes) / static_cast<double>(trials);
  out.std_error = std::sqrt(out.rate * (1.0 - out.rate) / static_cast<double>(trials));
  return out;
}

MonteCarloResult monte_carlo_attack(const Vault& vault, std::uint64_t trials, std::uint64_t seed,
                                    unsigned workers) {
  if (vault.genuine_mask.size() != vault.points.size()) {
    fail(Errc::bad_arguments, "vault carries no ground-truth mask");
  }
  return monte_carlo_attack(vault.genuine_mask, vault.coeff_count, trials, seed, workers);
}

BruteForceResult brute_force_unlock_attack(const Vault& vault, std::uint64_t max_subsets,
                                           const KeyFile* key) {
  SearchResult r = search_subsets(vault, vault.points, key, max_subsets);
  BruteForceResult out;
  out.subsets_tried = r.subsets_tried;
  if (r.message) {
    out.success = true;
    out.message = std::move(*r.message);
  }
  return out;
}

DlogSolver::DlogSolver(const FieldParams& params) {
  if (params.p_bits() > kMaxBsgsBits) {
    fail(Errc::bad_arguments, "BSGS limited to p <= 2^40");
  }
  p_ = params.p.get_ui();
  const std::uint64_t order = p_ - 1;
  m_ = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(order))));
  while (m_ * m_ < order) ++m_;
  const std::uint64_t alpha = params.alpha.get_ui() % p_;

  baby_.reserve(m_);
  std::uint64_t cur = 1;
  for (std::uint64_t j = 0; j < m_; ++j) {
    baby_.emplace(cur, j);  // keeps the smallest j on collision
    cur = mulmod(cur, alpha, p_);
  }
  // alpha^(-m) = alpha^(order - m mod order)
  giant_ = powmod(alpha, (order - m_ % order) % order, p_);
}

std::uint64_t DlogSolver::solve(std::uint64_t target) const {
  const std::uint64_t order = p_ - 1;
  std::uint64_t gamma = target % p_;
  if (gamma == 0) fail(Errc::not_in_group, "zero has no discrete logarithm");
  for (std::uint64_t i = 0; i < m_; ++i) {
    auto it = baby_.find(gamma);
    if (it != baby_.end()) {
      const std::uint64_t k = i * m_ + it->second;
      if (k < order) return k;
    }
    gamma = mulmod(gamma, giant_, p_);
  }
  fail(Errc::not_in_group, "target is not a power of alpha");
}

BigInt solve_dlog_bsgs(const FieldElement& target, const FieldParams& params) {
  return BigInt(static_cast<unsigned long>(DlogSolver(params).solve(target.value.get_ui())));
}

bool AttackReport::within_three_sigma() const {
  const double exact = exact_prob.get_d();
  const double diff = std::fabs(empirical.rate - exact);
  if (empirical.std_error == 0.0) return diff == 0.0;
  return diff <= 3.0 * empirical.std_error;
}

AttackReport make_attack_report(std::uint64_t r, std::uint64_t t, std::uint64_t n,
                                std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  AttackReport rep;
  rep.r = r;
  rep.t = t;
  rep.n = n;
  rep.seed = seed;
  rep.exact_prob = exact_success_prob(r, t, n);

  std::vector<bool> mask(r, false);
  std::fill_n(mask.begin(), t, true);
  rep.empirical = monte_carlo_attack(mask, n, trials, seed, workers);

  if (r == t) {
    rep.paper_point_prob = std::numeric_limits<double>::infinity();
    rep.paper_poly_prob = std::numeric_limits<double>::infinity();
    rep.notes.push_back("paper_eq30_undefined: r = t divides by zero");
  } else {
    rep.paper_point_prob = static_cast<double>(r) / static_cast<double>(r - t);
    rep.paper_poly_prob = paper_poly_prob(r, t, n);
    if (rep.paper_poly_prob > 1.0) {
      rep.notes.push_back("paper_eq30_exceeds_one: (r/(r-t))^n = " +
                          format_double(rep.paper_poly_prob) + " is not a probability");
    }
  }
  rep.notes.push_back("point_ratio_s_undefined: the set size s in the point ratio r/s is never defined");
  return rep;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string format_report(const AttackReport& rep) {
  std::ostringstream out;
  out << "r=" << rep.r << '\n'
      << "t=" << rep.t << '\n'
      << "n=" << rep.n << '\n'
      << "seed=" << rep.seed << '\n'
      << "trials=" << rep.empirical.trials << '\n'
      << "point_ratio=" << format_double(rep.paper_point_prob) << '\n'
      << "paper_eq30=" << format_double(rep.paper_poly_prob) << '\n'
      << "paper_eq30_exceeds_one=" << (rep.paper_poly_prob > 1.0 ? "true" : "false") << '\n'
      << "exact=" << rep.exact_prob.get_str() << '\n'
      << "exact_decimal=" << format_double(rep.exact_prob.get_d()) << '\n'
      << "successes=" << rep.empirical.successes << '\n'
      << "empirical=" << format_double(rep.empirical.rate) << '\n'
      << "stderr=" << format_double(rep.empirical.std_error) << '\n'
      << "within_3sigma=" << (rep.within_three_sigma() ? "true" : "false") << '\n';
  for (const std::string& note : rep.notes) out << "note=" << note << '\n';
  return out.str();
}

std::string format_sweep_csv(std::span<const AttackReport> reports) {
  std::ostringstream out;
  out << "r,t,n,paper_eq30,exact,empirical,stderr,trials\n";
  for (const AttackReport& rep : reports) {
    out << rep.r << ',' << rep.t << ',' << rep.n << ',' << format_double(rep.paper_poly_prob)
        << ',' << format_double(rep.exact_prob.get_d()) << ',' << format_double(rep.empirical.rate)
        << ',' << format_double(rep.empirical.std_error) << ',' << rep.empirical.trials << '\n';
  }
  return out.str();
}

}  // namespace dlfv
