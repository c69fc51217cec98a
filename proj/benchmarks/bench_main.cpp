#include <benchmark/benchmark.h>

#include <map>
#include <set>

#include "dlfv/attack_sim.hpp"
#include "dlfv/md5.hpp"
#include "dlfv/nonmall.hpp"
#include "dlfv/polynomial.hpp"
#include "dlfv/random.hpp"
#include "dlfv/vault.hpp"

namespace {

using namespace dlfv;

const FieldParams& params(unsigned bits) {
  static std::map<unsigned, FieldParams> cache;
  auto it = cache.find(bits);
  if (it == cache.end()) it = cache.emplace(bits, gen_params(bits, 1)).first;
  return it->second;
}

LockingSet distinct_set(const FieldParams& p, std::size_t n, Rng& rng) {
  std::set<BigInt> seen;
  LockingSet out;
  while (out.size() < n) {
    BigInt v = rng.below(p.p);
    if (seen.insert(v).second) out.push_back({v});
  }
  return out;
}

Bytes random_bytes(Rng& rng, std::size_t n) {
  Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng.next());
  return out;
}

void BM_Md5(benchmark::State& state) {
  Rng rng(1);
  const Bytes data = random_bytes(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(md5(data));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Md5)->Arg(64)->Arg(4096)->Arg(1 << 20);

void BM_GenParams(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gen_params(static_cast<unsigned>(state.range(0)), ++seed));
}
BENCHMARK(BM_GenParams)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Interpolate(benchmark::State& state) {
  const FieldParams& p = params(256);
  const PrimeField f(p);
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  Poly poly;
  for (std::size_t i = 0; i < n; ++i) poly.coeffs.push_back({rng.below(p.p)});
  std::vector<Point> pts;
  for (const FieldElement& x : distinct_set(p, n, rng)) pts.push_back({x, evaluate(f, poly, x)});
  for (auto _ : state) benchmark::DoNotOptimize(lagrange_interpolate<PrimeField>(f, pts, n));
}
BENCHMARK(BM_Interpolate)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_Gf16Interpolate(benchmark::State& state) {
  const Gf16Field f;
  std::vector<Gf16Point> pts;
  for (std::uint16_t x = 1; x <= kIdentityCoeffs; ++x) pts.push_back({{x}, {static_cast<std::uint16_t>(x * 977)}});
  for (auto _ : state) benchmark::DoNotOptimize(lagrange_interpolate<Gf16Field>(f, pts, kIdentityCoeffs));
}
BENCHMARK(BM_Gf16Interpolate);

void BM_Lock(benchmark::State& state) {
  const FieldParams& p = params(256);
  const auto scheme = static_cast<Scheme>(state.range(0));
  Rng rng(3);
  const Bytes m = random_bytes(rng, 8);
  const LockingSet a = distinct_set(p, 8, rng);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lock(m, a, p, {scheme, 64, 200, 0, ++seed}));
  }
  state.SetLabel(std::string(scheme_name(scheme)));
}
BENCHMARK(BM_Lock)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_Unlock(benchmark::State& state) {
  const FieldParams& p = params(256);
  const auto scheme = static_cast<Scheme>(state.range(0));
  Rng rng(4);
  const Bytes m = random_bytes(rng, 8);
  const LockingSet a = distinct_set(p, 8, rng);
  const LockResult res = lock(m, a, p, {scheme, 64, 200, 0, 5});
  for (auto _ : state) benchmark::DoNotOptimize(unlock(res.vault, a, res.key));
  state.SetLabel(std::string(scheme_name(scheme)));
}
BENCHMARK(BM_Unlock)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_MonteCarlo(benchmark::State& state) {
  std::vector<bool> mask(10, false);
  for (int i = 0; i < 5; ++i) mask[static_cast<std::size_t>(i)] = true;
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_attack(mask, 3, 100000, 1, workers));
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_BsgsSolve(benchmark::State& state) {
  const FieldParams& p = params(static_cast<unsigned>(state.range(0)));
  const DlogSolver solver(p);
  const PrimeField f(p);
  Rng rng(6);
  std::vector<std::uint64_t> targets;
  for (int i = 0; i < 64; ++i) targets.push_back(f.pow(f.generator(), rng.below(p.p - 1)).value.get_ui());
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(targets[i++ % targets.size()]));
}
BENCHMARK(BM_BsgsSolve)->Arg(24)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_IdentityRoundTrip(benchmark::State& state) {
  Rng rng(7);
  Kappa128 kappa{};
  for (auto& b : kappa) b = static_cast<std::uint8_t>(rng.next());
  for (auto _ : state) benchmark::DoNotOptimize(decode_identity(encode_identity(kappa, rng.next())));
}
BENCHMARK(BM_IdentityRoundTrip);

}  // namespace
BENCHMARK_MAIN();
