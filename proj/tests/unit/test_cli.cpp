#include <doctest.h>

#include <algorithm>

#include "cli_harness.hpp"
#include "dlfv/dlog_codec.hpp"
#include "dlfv/field.hpp"
#include "dlfv/nonmall.hpp"
#include "dlfv/vault.hpp"
#include "support.hpp"

using namespace dlfv;
using namespace dlfv::testing;

namespace {

void write_set(const std::string& path, const std::vector<FieldElement>& set, bool hex = false) {
  std::string text = "# locking set\n";
  for (const FieldElement& e : set) text += (hex ? to_hex(e.value) : e.value.get_str()) + "\n";
  write_text(path, text);
}

// Params for a 64-bit prime, a 10-element set and an 8-byte message.
struct Fixture {
  TempDir dir;
  std::string params = dir / "p.dlfp";
  std::string set = dir / "a.txt";
  std::string msg = dir / "m.bin";
  std::string vault = dir / "v.dlfv";
  std::string key = dir / "k.dlfk";
  std::string out = dir / "out.bin";
  Bytes message{'f', 'i', 'n', 'g', 'e', 'r', '0', '1'};
  LockingSet a;

  Fixture() {
    REQUIRE(run_cli({"params", "--bits", "64", "--seed", "3", "--out", params}).code == 0);
    Rng rng(4);
    a = spaced_set(decode_params_file(read_all(params)), 10, 4, rng);
    write_set(set, a);
    write_all(msg, message);
  }

  CliResult lock(const std::string& scheme, std::vector<std::string> extra = {}) const {
    std::vector<std::string> args{"lock", "--message", msg, "--locking-set", set,
                                  "--scheme", scheme, "--params", params, "--chaff", "30",
                                  "--delta", "4", "--seed", "11", "--seg-bits", "32",
                                  "--vault-out", vault, "--key-out", key};
    args.insert(args.end(), extra.begin(), extra.end());
    return run_cli(args);
  }

  CliResult unlock(const std::string& set_path, const std::string& key_path) const {
    return run_cli({"unlock", "--vault", vault, "--unlocking-set", set_path, "--key", key_path,
                    "--out", out});
  }
};

}  // namespace

TEST_CASE("params subcommand") {
  TempDir dir;
  const CliResult r = run_cli({"params", "--bits", "1024", "--seed", "7", "--out", dir / "a"});
  REQUIRE(r.code == 0);
  CHECK(field(r.out, "seed") == "7");
  CHECK(field(r.out, "bits") == "1024");
  CHECK(field(r.out, "p").rfind("0x", 0) == 0);
  const FieldParams params = decode_params_file(read_all(dir / "a"));
  CHECK(to_hex(params.p) == field(r.out, "p"));
  CHECK(to_hex(params.alpha) == field(r.out, "alpha"));
  const BigInt q = (params.p - 1) / 2;
  CHECK(is_probable_prime(params.p));
  CHECK(is_probable_prime(q));
  const BigInt factors[] = {2, q};
  CHECK(is_primitive_root(params.alpha, params.p, factors));

  REQUIRE(run_cli({"params", "--bits", "1024", "--seed", "7", "--out", dir / "b"}).code == 0);
  CHECK(read_all(dir / "a") == read_all(dir / "b"));

  CHECK(run_cli({"params", "--bits", "4", "--seed", "7", "--out", dir / "c"}).code == 2);
  CHECK(run_cli({"params", "--bits", "x", "--out", dir / "c"}).code == 2);

  // Without --seed a seed is still chosen and reported.
  const CliResult unseeded = run_cli({"params", "--bits", "16", "--out", dir / "d"});
  REQUIRE(unseeded.code == 0);
  const std::uint64_t seed = std::stoull(field(unseeded.out, "seed"));
  CHECK(decode_params_file(read_all(dir / "d")) == gen_params(16, seed));

  CHECK(run_cli({"params", "--bits", "16", "--out", dir / "missing/x"}).code == 1);
}

TEST_CASE("help and usage errors") {
  CHECK(run_cli({"--help"}).code == 0);
  for (const char* sub : {"params", "lock", "unlock", "attack"}) {
    const CliResult r = run_cli({sub, "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--") != std::string::npos);
  }
  CHECK(run_cli({"identity", "encode", "--help"}).code == 0);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"lock"}).code == 2);
}

TEST_CASE("lock and unlock round trip for every scheme") {
  Fixture fx;
  for (const char* scheme : {"classical", "alg1", "alg3"}) {
    const CliResult l = fx.lock(scheme);
    REQUIRE(l.code == 0);
    CHECK(field(l.out, "seed") == "11");
    CHECK(field(l.out, "scheme") == scheme);
    CHECK(field(l.out, "r") == "40");
    CHECK(field(l.out, "t") == "10");
    CHECK(field(l.out, "n") == "8");
    const CliResult u = fx.unlock(fx.set, fx.key);
    REQUIRE(u.code == 0);
    CHECK(read_all(fx.out) == fx.message);
    CHECK(field(u.out, "recovered_bytes") == "8");
  }

  // AlgII needs p above the frame size.
  TempDir dir;
  REQUIRE(run_cli({"params", "--bits", "256", "--seed", "1", "--out", dir / "p"}).code == 0);
  Rng rng(6);
  write_set(dir / "a", spaced_set(decode_params_file(read_all(dir / "p")), 5, 0, rng), true);
  write_all(dir / "m", Bytes{1, 2, 3});
  const std::vector<std::string> base{"lock", "--message", dir / "m", "--locking-set", dir / "a",
                                      "--scheme", "alg2", "--params", dir / "p", "--seed", "2",
                                      "--seg-bits", "64", "--vault-out", dir / "v",
                                      "--key-out", dir / "k"};
  REQUIRE(run_cli(base).code == 0);
  CHECK(run_cli({"unlock", "--vault", dir / "v", "--unlocking-set", dir / "a", "--key", dir / "k",
                 "--out", dir / "o"})
            .code == 0);
  CHECK(read_all(dir / "o") == Bytes{1, 2, 3});

  write_all(dir / "m", Bytes(40, 7));
  const CliResult big = run_cli(base);
  CHECK(big.code == 4);
  CHECK(big.err.find("must be below p") != std::string::npos);
}

TEST_CASE("lock is deterministic for a fixed seed") {
  Fixture fx;
  REQUIRE(fx.lock("alg1").code == 0);
  const Bytes v1 = read_all(fx.vault);
  const Bytes k1 = read_all(fx.key);
  REQUIRE(fx.lock("alg1").code == 0);
  CHECK(read_all(fx.vault) == v1);
  CHECK(read_all(fx.key) == k1);
  REQUIRE(fx.lock("alg1", {"--seed", "12"}).code == 0);
  CHECK(read_all(fx.vault) != v1);
}

TEST_CASE("lock exit codes") {
  Fixture fx;
  write_all(fx.msg, Bytes(40, 1));
  CHECK(fx.lock("alg1").code == 3);
  write_all(fx.msg, fx.message);
  CHECK(fx.lock("alg1", {"--chaff", "100000000000000"}).code == 1);
  CHECK(fx.lock("alg1", {"--chaff", "18446744073709551615"}).code == 5);
  CHECK(fx.lock("alg4").code == 2);
  CHECK(fx.lock("alg1", {"--seg-bits", "12"}).code == 2);
  CHECK(fx.lock("alg1", {"--delta", "1000000000000000000"}).code == 2);

  // A 16-bit field with a tight set and no room for chaff.
  TempDir dir;
  REQUIRE(run_cli({"params", "--bits", "16", "--seed", "1", "--out", dir / "p"}).code == 0);
  const FieldParams small = decode_params_file(read_all(dir / "p"));
  const BigInt s = small.p / 24;
  LockingSet tight;
  for (int i = 0; i < 24; ++i) tight.push_back({s * i + s / 2});
  write_set(dir / "a", tight);
  write_all(dir / "m", Bytes{});
  const std::vector<std::string> base{"lock", "--message", dir / "m", "--locking-set", dir / "a",
                                      "--params", dir / "p", "--seed", "1", "--seg-bits", "8",
                                      "--delta", BigInt(s / 2 - 1).get_str(), "--vault-out",
                                      dir / "v", "--key-out", dir / "k"};
  CHECK(run_cli(base).code == 0);
  std::vector<std::string> with_chaff = base;
  with_chaff.insert(with_chaff.end(), {"--chaff", "1"});
  CHECK(run_cli(with_chaff).code == 5);

  CHECK(run_cli({"lock", "--message", dir / "nope", "--locking-set", dir / "a", "--params",
                 dir / "p", "--vault-out", dir / "v", "--key-out", dir / "k"})
            .code == 1);
}

TEST_CASE("unlock exit codes") {
  Fixture fx;
  REQUIRE(fx.lock("alg1").code == 0);

  // Wrong key of the right kind.
  const KeyFile real = decode_key_file(read_all(fx.key));
  KeyFile wrong = real;
  wrong.key.kappa = real.key.kappa == 1 ? BigInt(2) : BigInt(real.key.kappa - 1);
  write_all(fx.dir / "wrong.dlfk", encode_key_file(wrong));
  CHECK(fx.unlock(fx.set, fx.dir / "wrong.dlfk").code == 7);

  write_set(fx.dir / "few.txt", LockingSet(fx.a.begin(), fx.a.begin() + 5));
  CHECK(fx.unlock(fx.dir / "few.txt", fx.key).code == 6);

  const Bytes raw = read_all(fx.vault);
  write_all(fx.dir / "trunc.dlfv", Bytes(raw.begin(), raw.end() - 3));
  CHECK(run_cli({"unlock", "--vault", fx.dir / "trunc.dlfv", "--unlocking-set", fx.set, "--key",
                 fx.key, "--out", fx.out})
            .code == 2);

  write_text(fx.dir / "bad.txt", "12\nnot-a-number\n");
  CHECK(fx.unlock(fx.dir / "bad.txt", fx.key).code == 2);
  write_text(fx.dir / "huge.txt", "0x" + std::string(40, 'f') + "\n");
  CHECK(fx.unlock(fx.dir / "huge.txt", fx.key).code == 2);

  // Perturbed set within delta still unlocks; hex input accepted.
  LockingSet moved;
  for (const FieldElement& e : fx.a) moved.push_back({e.value + 3});
  write_set(fx.dir / "moved.txt", moved, true);
  CHECK(fx.unlock(fx.dir / "moved.txt", fx.key).code == 0);
  CHECK(read_all(fx.out) == fx.message);
}

TEST_CASE("identity subcommands") {
  TempDir dir;
  const std::string kappa = "000102030405060708090a0b0c0d0e0f";
  const CliResult e = run_cli({"identity", "encode", "--kappa", kappa, "--id", "0123456789abcdef",
                               "--out", dir / "i"});
  REQUIRE(e.code == 0);
  CHECK(field(e.out, "crc") == "0x2951");
  const CliResult d = run_cli({"identity", "decode", "--in", dir / "i"});
  CHECK(d.code == 0);
  CHECK(field(d.out, "result") == "accept");
  CHECK(field(d.out, "kappa") == kappa);
  CHECK(field(d.out, "id") == "0123456789abcdef");

  Bytes raw = read_all(dir / "i");
  raw[raw.size() - 4] ^= 0x10;  // inside the ID
  write_all(dir / "bad", raw);
  const CliResult rej = run_cli({"identity", "decode", "--in", dir / "bad"});
  CHECK(rej.code == 8);
  CHECK(field(rej.out, "result") == "reject");

  REQUIRE(run_cli({"identity", "encode", "--kappa", std::string(32, '0'), "--id",
                   std::string(16, '0'), "--out", dir / "z"})
              .code == 0);
  const CliResult zero = run_cli({"identity", "decode", "--in", dir / "z"});
  CHECK(zero.code == 0);
  CHECK(field(zero.out, "id") == std::string(16, '0'));

  CHECK(run_cli({"identity", "encode", "--kappa", "00", "--id", std::string(16, '0'), "--out",
                 dir / "x"})
            .code == 2);
  CHECK(run_cli({"identity", "encode", "--kappa", kappa, "--id", std::string(15, '0') + "g",
                 "--out", dir / "x"})
            .code == 2);
  write_all(dir / "short", Bytes(raw.begin(), raw.begin() + 10));
  CHECK(run_cli({"identity", "decode", "--in", dir / "short"}).code == 2);
  CHECK(run_cli({"identity"}).code == 2);
}

TEST_CASE("attack subcommand") {
  TempDir dir;
  const CliResult r = run_cli({"attack", "--r", "10", "--t", "5", "--n", "3", "--trials",
                               "200000", "--seed", "1", "--workers", "4"});
  REQUIRE(r.code == 0);
  CHECK(field(r.out, "exact") == "1/12");
  CHECK(field(r.out, "paper_eq30") == "8");
  CHECK(field(r.out, "paper_eq30_exceeds_one") == "true");
  CHECK(field(r.out, "within_3sigma") == "true");

  REQUIRE(run_cli({"attack", "--r", "10", "--t", "5", "--n", "3", "--trials", "5000", "--seed",
                   "1", "--out", dir / "a"})
              .code == 0);
  REQUIRE(run_cli({"attack", "--r", "10", "--t", "5", "--n", "3", "--trials", "5000", "--seed",
                   "1", "--workers", "8", "--out", dir / "b"})
              .code == 0);
  CHECK(read_all(dir / "a") == read_all(dir / "b"));

  const CliResult sweep = run_cli({"attack", "--r", "20:30:5", "--t", "5,10", "--n", "2:3",
                                   "--trials", "1000", "--seed", "2"});
  REQUIRE(sweep.code == 0);
  CHECK(field(sweep.out, "grid_points") == "12");
  const auto header = sweep.out.find("r,t,n,paper_eq30,exact,empirical,stderr,trials\n");
  REQUIRE(header != std::string::npos);
  const std::string table = sweep.out.substr(header);
  CHECK(std::count(table.begin(), table.end(), '\n') == 13);

  CHECK(run_cli({"attack", "--r", "5", "--t", "10", "--n", "3", "--seed", "1"}).code == 2);
  CHECK(run_cli({"attack", "--r", "30:20", "--t", "5", "--n", "3", "--seed", "1"}).code == 2);
  CHECK(run_cli({"attack", "--r", "a", "--t", "5", "--n", "3"}).code == 2);
  CHECK(run_cli({"attack", "--r", "10", "--t", "5"}).code == 2);
}

TEST_CASE("attack subcommand on a vault file") {
  Fixture fx;
  REQUIRE(fx.lock("alg1", {"--chaff", "6"}).code == 0);
  const CliResult keyless =
      run_cli({"attack", "--vault", fx.vault, "--max-subsets", "100000", "--t", "10"});
  REQUIRE(keyless.code == 0);
  CHECK(field(keyless.out, "success") == "false");
  CHECK(field(keyless.out, "subsets_tried") == "12870");  // C(16, 8), exhaustive
  CHECK(field(keyless.out, "exact") == "1/286");
  const CliResult keyed = run_cli({"attack", "--vault", fx.vault, "--key", fx.key});
  REQUIRE(keyed.code == 0);
  CHECK(field(keyed.out, "success") == "true");
  CHECK(field(keyed.out, "key") == "present");
}
