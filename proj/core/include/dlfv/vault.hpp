#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dlfv/dlog_codec.hpp"
#include "dlfv/field.hpp"
#include "dlfv/framing.hpp"
#include "dlfv/polynomial.hpp"

namespace dlfv {

enum class Scheme : std::uint8_t {
  classical = 0,  // framed segments used directly as coefficients
  alg1 = 1,       // each segment multiplied by alpha^kappa
  alg2 = 2,       // whole framed message multiplied by alpha^kappa, then split
  alg3 = 3,       // even/odd segments under kappa_even/kappa_odd
};

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);
KeyKind key_kind_for(Scheme scheme);

using LockingSet = std::vector<FieldElement>;
using UnlockingSet = std::vector<FieldElement>;

inline constexpr std::uint64_t kDefaultMaxSubsets = 100000;

struct Vault {
  FieldParams params;
  Scheme scheme = Scheme::classical;
  std::uint16_t seg_bits = kDefaultSegBits;
  std::uint16_t coeff_count = 0;
  BigInt delta = 0;
  std::vector<Point> points;
  // Ground truth for the attack simulator, aligned with `points`. Empty for
  // vaults loaded from disk; never serialized.
  std::vector<bool> genuine_mask;

  std::size_t size() const { return points.size(); }
};

struct LockOptions {
  Scheme scheme = Scheme::alg1;
  unsigned seg_bits = kDefaultSegBits;
  std::size_t chaff_count = 0;
  BigInt delta = 0;
  std::uint64_t seed = 0;
};

struct LockResult {
  Vault vault;
  KeyFile key;
};

// The coefficient list a scheme locks, before any polynomial is built.
struct EncodedMessage {
  std::vector<FieldElement> coeffs;
  std::uint16_t framed_length = 0;
};

EncodedMessage encode_coefficients(ByteView message, Scheme scheme, const DlogCodec& codec,
                                   unsigned seg_bits);

// Inverse of encode_coefficients followed by the signature check. A null
// codec means "no key": coefficients are read as if unencrypted. Returns
// nullopt on any decode failure.
std::optional<Bytes> try_decode_coefficients(std::span<const FieldElement> coeffs,
                                             Scheme scheme, const FieldParams& params,
                                             const DlogCodec* codec,
                                             std::uint16_t framed_length, unsigned seg_bits);

// Frames m, encodes it per scheme, projects A onto the polynomial, adds
// chaff_count chaff points and scrambles. All x-coordinates end up pairwise
// more than 2*delta apart.
LockResult lock(ByteView message, const LockingSet& locking_set, const FieldParams& params,
                const LockOptions& options);

// For each b, the vault point nearest to b (plain integer distance) if it is
// within delta. Deduplicated and sorted by x.
std::vector<Point> match_points(const Vault& vault, const UnlockingSet& unlocking_set);

struct SearchResult {
  std::optional<Bytes> message;
  std::uint64_t subsets_tried = 0;
};

// Tries coeff_count-subsets of `candidates` (sorted by x, lexicographic
// order) until one decodes with a valid signature or max_subsets is reached.
SearchResult search_subsets(const Vault& vault, std::span<const Point> candidates,
                            const KeyFile* key, std::uint64_t max_subsets);

// NotEnoughMatches, DecodeFailed, or KeyMismatch on failure.
Bytes unlock(const Vault& vault, const UnlockingSet& unlocking_set, const KeyFile& key,
             std::uint64_t max_subsets = kDefaultMaxSubsets);

bool verify_coefficients(const Poly& recovered, const Poly& expected);

std::uint64_t classical_coeff_check(std::uint64_t message_bits, const FieldParams& params);

// "DLFV" | version u8 | scheme u8 | seg_bits u16 | coeff_count u16 |
// delta (u16-prefixed) | FieldParams | u32 count | (x, y) pairs, each
// coordinate big-endian at ceil(p_bits/8) bytes.
Bytes encode_vault_file(const Vault& vault);
Vault decode_vault_file(ByteView bytes);

}  // namespace dlfv
