#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <new>
#include <optional>
#include <random>
#include <sstream>

#include "dlfv/attack_sim.hpp"
#include "dlfv/field.hpp"
#include "dlfv/nonmall.hpp"
#include "dlfv/vault.hpp"

namespace dlfv::cli {
namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, ByteView bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

void write_text(const std::string& path, const std::string& text) {
  write_file(path, ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

// Newline-separated decimal or 0x-hex integers; blank lines and '#' comments
// are ignored.
std::vector<FieldElement> read_element_set(const std::string& path) {
  const Bytes raw = read_file(path);
  std::istringstream lines(std::string(raw.begin(), raw.end()));
  std::vector<FieldElement> out;
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back({parse_bigint(line.substr(first, last - first + 1))});
  }
  return out;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::ostream& out) {
  std::uint64_t s = 0;
  if (seed) {
    s = *seed;
  } else {
    std::random_device rd;
    s = (std::uint64_t{rd()} << 32) | rd();
  }
  out << "seed=" << s << '\n';
  return s;
}

std::vector<std::uint8_t> parse_hex_exact(std::string text, std::size_t bytes, const char* what) {
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) text = text.substr(2);
  if (text.size() != 2 * bytes) {
    throw UsageError(std::string(what) + " must be exactly " + std::to_string(2 * bytes) +
                     " hex digits");
  }
  std::vector<std::uint8_t> out(bytes);
  for (std::size_t i = 0; i < bytes; ++i) {
    unsigned v = 0;
    for (std::size_t k = 0; k < 2; ++k) {
      const char c = text[2 * i + k];
      v <<= 4;
      if (c >= '0' && c <= '9') v |= static_cast<unsigned>(c - '0');
      else if (c >= 'a' && c <= 'f') v |= static_cast<unsigned>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') v |= static_cast<unsigned>(c - 'A' + 10);
      else throw UsageError(std::string(what) + " is not hexadecimal");
    }
    out[i] = static_cast<std::uint8_t>(v);
  }
  return out;
}

// "10", "10:20" (inclusive, optional ":step"), or "10,20,30".
std::vector<std::uint64_t> parse_grid(const std::string& spec, const char* name) {
  std::vector<std::uint64_t> out;
  auto number = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError(std::string("bad value for --") + name + ": '" + s + "'");
    }
    return std::stoull(s);
  };
  if (spec.find(',') != std::string::npos) {
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(number(item));
  } else if (auto colon = spec.find(':'); colon != std::string::npos) {
    const std::string rest = spec.substr(colon + 1);
    const auto colon2 = rest.find(':');
    const std::uint64_t lo = number(spec.substr(0, colon));
    const std::uint64_t hi = number(rest.substr(0, colon2));
    const std::uint64_t step = colon2 == std::string::npos ? 1 : number(rest.substr(colon2 + 1));
    if (lo > hi || step == 0) throw UsageError(std::string("empty range for --") + name);
    for (std::uint64_t v = lo; v <= hi; v += step) out.push_back(v);
  } else {
    out.push_back(number(spec));
  }
  return out;
}

struct ParamsArgs {
  unsigned bits = kDefaultParamBits;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_params(const ParamsArgs& a, std::ostream& out) {
  if (a.bits < 8) throw UsageError("--bits must be at least 8");
  const std::uint64_t seed = resolve_seed(a.seed, out);
  const FieldParams params = gen_params(a.bits, seed);
  write_file(a.out, encode_params_file(params));
  out << "bits=" << params.p_bits() << '\n'
      << "p=" << to_hex(params.p) << '\n'
      << "alpha=" << to_hex(params.alpha) << '\n';
  return kOk;
}

struct LockArgs {
  std::string message;
  std::string locking_set;
  std::string scheme = "alg1";
  std::string params;
  std::size_t chaff = 0;
  std::string delta = "0";
  std::optional<std::uint64_t> seed;
  unsigned seg_bits = kDefaultSegBits;
  std::string vault_out;
  std::string key_out;
};

int cmd_lock(const LockArgs& a, std::ostream& out) {
  const auto scheme = parse_scheme(a.scheme);
  if (!scheme) throw UsageError("unknown scheme '" + a.scheme + "'");
  const FieldParams params = decode_params_file(read_file(a.params));
  const Bytes message = read_file(a.message);
  const LockingSet locking_set = read_element_set(a.locking_set);

  LockOptions opts;
  opts.scheme = *scheme;
  opts.seg_bits = a.seg_bits;
  opts.chaff_count = a.chaff;
  opts.delta = parse_bigint(a.delta);
  opts.seed = resolve_seed(a.seed, out);

  const LockResult locked = lock(message, locking_set, params, opts);
  write_file(a.vault_out, encode_vault_file(locked.vault));
  write_file(a.key_out, encode_key_file(locked.key));
  out << "scheme=" << scheme_name(locked.vault.scheme) << '\n'
      << "r=" << locked.vault.size() << '\n'
      << "t=" << locking_set.size() << '\n'
      << "n=" << locked.vault.coeff_count << '\n';
  return kOk;
}

struct UnlockArgs {
  std::string vault;
  std::string unlocking_set;
  std::string key;
  std::uint64_t max_subsets = kDefaultMaxSubsets;
  std::string out;
};

int cmd_unlock(const UnlockArgs& a, std::ostream& out) {
  const Vault vault = decode_vault_file(read_file(a.vault));
  const KeyFile key = decode_key_file(read_file(a.key));
  const UnlockingSet set = read_element_set(a.unlocking_set);
  for (const FieldElement& b : set) {
    if (b.value >= vault.params.p) throw UsageError("unlocking element outside the field");
  }
  const Bytes message = unlock(vault, set, key, a.max_subsets);
  write_file(a.out, message);
  out << "recovered_bytes=" << message.size() << '\n';
  return kOk;
}

struct IdentityArgs {
  std::string kappa;
  std::string id;
  std::string path;
};

int cmd_identity_encode(const IdentityArgs& a, std::ostream& out) {
  const auto kappa_bytes = parse_hex_exact(a.kappa, 16, "--kappa");
  const auto id_bytes = parse_hex_exact(a.id, 8, "--id");
  Kappa128 kappa{};
  std::copy(kappa_bytes.begin(), kappa_bytes.end(), kappa.begin());
  std::uint64_t id = 0;
  for (std::uint8_t b : id_bytes) id = (id << 8) | b;
  const IdentityCoefficients coeffs = encode_identity(kappa, id);
  write_file(a.path, encode_identity_file(coeffs));
  out << "crc=" << to_hex(BigInt(identity_crc(id))) << '\n';
  return kOk;
}

int cmd_identity_decode(const IdentityArgs& a, std::ostream& out) {
  const IdentityCoefficients coeffs = decode_identity_file(read_file(a.path));
  const auto record = decode_identity(coeffs);
  if (!record) {
    out << "result=reject\n";
    return kIdentityRejected;
  }
  out << "result=accept\n"
      << "kappa=" << to_hex(ByteView(record->kappa)) << '\n';
  const std::uint8_t id_bytes[8] = {
      static_cast<std::uint8_t>(record->id >> 56), static_cast<std::uint8_t>(record->id >> 48),
      static_cast<std::uint8_t>(record->id >> 40), static_cast<std::uint8_t>(record->id >> 32),
      static_cast<std::uint8_t>(record->id >> 24), static_cast<std::uint8_t>(record->id >> 16),
      static_cast<std::uint8_t>(record->id >> 8),  static_cast<std::uint8_t>(record->id)};
  out << "id=" << to_hex(ByteView(id_bytes)) << '\n';
  return kOk;
}

struct AttackArgs {
  std::string r, t, n;
  std::uint64_t trials = 100000;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::string out;
  std::string vault;
  std::string key;
  std::uint64_t max_subsets = kDefaultMaxSubsets;
};

int cmd_attack(const AttackArgs& a, std::ostream& out) {
  std::ostringstream report;
  if (!a.vault.empty()) {
    const Vault vault = decode_vault_file(read_file(a.vault));
    std::optional<KeyFile> key;
    if (!a.key.empty()) key = decode_key_file(read_file(a.key));
    const BruteForceResult bf =
        brute_force_unlock_attack(vault, a.max_subsets, key ? &*key : nullptr);
    report << "mode=brute_force\n"
           << "scheme=" << scheme_name(vault.scheme) << '\n'
           << "r=" << vault.size() << '\n'
           << "n=" << vault.coeff_count << '\n'
           << "key=" << (key ? "present" : "absent") << '\n'
           << "max_subsets=" << a.max_subsets << '\n'
           << "success=" << (bf.success ? "true" : "false") << '\n'
           << "subsets_tried=" << bf.subsets_tried << '\n';
    if (!a.t.empty()) {
      const auto t = parse_grid(a.t, "t");
      if (t.size() != 1 || t[0] > vault.size() || vault.coeff_count > t[0]) {
        throw UsageError("--t must be a single value with n <= t <= r");
      }
      report << "t=" << t[0] << '\n'
             << "exact=" << exact_success_prob(vault.size(), t[0], vault.coeff_count).get_str()
             << '\n';
      if (t[0] < vault.size()) {
        report << "paper_eq30=" << format_double(paper_poly_prob(vault.size(), t[0], vault.coeff_count))
               << '\n';
      }
    }
  } else {
    if (a.r.empty() || a.t.empty() || a.n.empty()) {
      throw UsageError("attack needs --vault or all of --r, --t, --n");
    }
    if (a.trials == 0) throw UsageError("--trials must be positive");
    const auto rs = parse_grid(a.r, "r");
    const auto ts = parse_grid(a.t, "t");
    const auto ns = parse_grid(a.n, "n");
    for (auto r : rs) {
      for (auto t : ts) {
        for (auto n : ns) {
          if (n > t || t > r) {
            throw UsageError("grid point r=" + std::to_string(r) + " t=" + std::to_string(t) +
                             " n=" + std::to_string(n) + " violates n <= t <= r");
          }
        }
      }
    }
    const std::uint64_t seed = resolve_seed(a.seed, out);
    std::vector<AttackReport> reports;
    for (auto r : rs) {
      for (auto t : ts) {
        for (auto n : ns) reports.push_back(make_attack_report(r, t, n, a.trials, seed, a.workers));
      }
    }
    if (reports.size() == 1) {
      report << format_report(reports.front());
    } else {
      report << "seed=" << seed << '\n'
             << "trials=" << a.trials << '\n'
             << "grid_points=" << reports.size() << '\n'
             << '\n'
             << format_sweep_csv(reports);
    }
  }

  if (a.out.empty()) {
    out << report.str();
  } else {
    write_text(a.out, report.str());
    out << "report=" << a.out << '\n';
  }
  return kOk;
}

}  // namespace

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::locking_set_too_small: return kLockingSetTooSmall;
    case Errc::message_too_large: return kMessageTooLarge;
    case Errc::chaff_space_exhausted: return kChaffSpaceExhausted;
    case Errc::not_enough_matches: return kNotEnoughMatches;
    case Errc::decode_failed: return kDecodeFailed;
    default: return kUsage;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-logarithmic fuzzy vault toolkit", "dlfv"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");
  // A repeated flag overrides the earlier value.
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  ParamsArgs params_args;
  auto* params = app.add_subcommand("params", "Generate a safe prime and primitive root");
  params->add_option("--bits", params_args.bits, "Bit length of p (>= 8)")->capture_default_str();
  params->add_option("--seed", params_args.seed, "Generator seed (random and printed if omitted)");
  params->add_option("--out", params_args.out, "Output params file")->required();

  LockArgs lock_args;
  auto* lock_cmd = app.add_subcommand("lock", "Lock a message into a vault");
  lock_cmd->add_option("--message", lock_args.message, "Message file")->required();
  lock_cmd->add_option("--locking-set", lock_args.locking_set, "Locking set file")->required();
  lock_cmd->add_option("--scheme", lock_args.scheme, "classical | alg1 | alg2 | alg3")
      ->check(CLI::IsMember({"classical", "alg1", "alg2", "alg3"}))
      ->capture_default_str();
  lock_cmd->add_option("--params", lock_args.params, "Params file")->required();
  lock_cmd->add_option("--chaff", lock_args.chaff, "Number of chaff points")->capture_default_str();
  lock_cmd->add_option("--delta", lock_args.delta, "Matching tolerance")->capture_default_str();
  lock_cmd->add_option("--seed", lock_args.seed, "Seed (random and printed if omitted)");
  lock_cmd->add_option("--seg-bits", lock_args.seg_bits, "Segment width in bits")->capture_default_str();
  lock_cmd->add_option("--vault-out", lock_args.vault_out, "Output vault file")->required();
  lock_cmd->add_option("--key-out", lock_args.key_out, "Output key file")->required();

  UnlockArgs unlock_args;
  auto* unlock_cmd = app.add_subcommand("unlock", "Recover a message from a vault");
  unlock_cmd->add_option("--vault", unlock_args.vault, "Vault file")->required();
  unlock_cmd->add_option("--unlocking-set", unlock_args.unlocking_set, "Unlocking set file")->required();
  unlock_cmd->add_option("--key", unlock_args.key, "Key file")->required();
  unlock_cmd->add_option("--max-subsets", unlock_args.max_subsets, "Subset search cap")->capture_default_str();
  unlock_cmd->add_option("--out", unlock_args.out, "Recovered message file")->required();

  IdentityArgs enc_args, dec_args;
  auto* identity = app.add_subcommand("identity", "Identity binding over GF(2^16)");
  identity->require_subcommand(1);
  auto* encode = identity->add_subcommand("encode", "Encode kappa and ID into an identity file");
  encode->add_option("--kappa", enc_args.kappa, "128-bit secret, 32 hex digits")->required();
  encode->add_option("--id", enc_args.id, "64-bit ID, 16 hex digits")->required();
  encode->add_option("--out", enc_args.path, "Output identity file")->required();
  auto* decode = identity->add_subcommand("decode", "Decode an identity file with CRC check");
  decode->add_option("--in", dec_args.path, "Identity file")->required();

  AttackArgs attack_args;
  auto* attack = app.add_subcommand("attack", "Attack probabilities and simulations");
  attack->add_option("--r", attack_args.r, "Total points: N, LO:HI[:STEP] or A,B,C");
  attack->add_option("--t", attack_args.t, "Genuine points (same forms)");
  attack->add_option("--n", attack_args.n, "Coefficient count (same forms)");
  attack->add_option("--trials", attack_args.trials, "Monte Carlo trials")->capture_default_str();
  attack->add_option("--seed", attack_args.seed, "Seed (random and printed if omitted)");
  attack->add_option("--workers", attack_args.workers, "Monte Carlo threads")->capture_default_str();
  attack->add_option("--out", attack_args.out, "Report file (stdout if omitted)");
  attack->add_option("--vault", attack_args.vault, "Brute-force a vault file instead");
  attack->add_option("--key", attack_args.key, "Key file given to the brute-force attacker");
  attack->add_option("--max-subsets", attack_args.max_subsets, "Brute-force cap")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*params) return cmd_params(params_args, out);
    if (*lock_cmd) return cmd_lock(lock_args, out);
    if (*unlock_cmd) return cmd_unlock(unlock_args, out);
    if (*encode) return cmd_identity_encode(enc_args, out);
    if (*decode) return cmd_identity_decode(dec_args, out);
    if (*attack) return cmd_attack(attack_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kIoError;
  }
  return kUsage;
}

}  // namespace dlfv::cli
