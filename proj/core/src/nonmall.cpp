#include "dlfv/nonmall.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "dlfv/error.hpp"
#include "dlfv/random.hpp"

namespace dlfv {
namespace {

constexpr std::uint8_t kIdentityVersion = 1;

IdentityRecord record_from_bytes(const std::array<std::uint8_t, kIdentityBytes>& bytes) {
  IdentityRecord r;
  std::copy_n(bytes.begin(), 16, r.kappa.begin());
  for (int i = 0; i < 8; ++i) r.id = (r.id << 8) | bytes[16 + i];
  r.crc = static_cast<std::uint16_t>((bytes[24] << 8) | bytes[25]);
  return r;
}

}  // namespace

std::uint16_t identity_crc(std::uint64_t id) { return crc16_remainder(to_bits(id, 64)); }

IdentityRecord IdentityRecord::make(const Kappa128& kappa, std::uint64_t id) {
  return {kappa, id, identity_crc(id)};
}

std::array<std::uint8_t, kIdentityBytes> IdentityRecord::kappa_id() const {
  std::array<std::uint8_t, kIdentityBytes> out{};
  std::copy(kappa.begin(), kappa.end(), out.begin());
  for (int i = 0; i < 8; ++i) out[16 + i] = static_cast<std::uint8_t>(id >> (56 - 8 * i));
  out[24] = static_cast<std::uint8_t>(crc >> 8);
  out[25] = static_cast<std::uint8_t>(crc);
  return out;
}

IdentityCoefficients encode_identity(const Kappa128& kappa, std::uint64_t id) {
  const auto bytes = IdentityRecord::make(kappa, id).kappa_id();
  IdentityCoefficients out;
  for (std::size_t chunk = 0; chunk < kIdentityCoeffs; ++chunk) {
    const auto v = static_cast<std::uint16_t>((bytes[2 * chunk] << 8) | bytes[2 * chunk + 1]);
    out.coeffs[kIdentityCoeffs - 1 - chunk] = {v};
  }
  return out;
}

std::optional<IdentityRecord> decode_identity(const IdentityCoefficients& coeffs) {
  std::array<std::uint8_t, kIdentityBytes> bytes{};
  for (std::size_t chunk = 0; chunk < kIdentityCoeffs; ++chunk) {
    const std::uint16_t v = coeffs.coeffs[kIdentityCoeffs - 1 - chunk].value;
    bytes[2 * chunk] = static_cast<std::uint8_t>(v >> 8);
    bytes[2 * chunk + 1] = static_cast<std::uint8_t>(v);
  }
  // IDC = id | crc; IDC(X) * X^16 mod P_CRC is zero iff crc is the id's CRC.
  const BitString idc = to_bits(ByteView(bytes).subspan(16));
  if (crc16_remainder(idc) != 0) return std::nullopt;
  return record_from_bytes(bytes);
}

IdentityVault lock_identity_vault(const IdentityCoefficients& coeffs,
                                  std::span<const Gf16Element> locking_set,
                                  std::size_t chaff_count, std::uint64_t seed,
                                  const Gf16Field& field) {
  if (locking_set.size() < kIdentityCoeffs) {
    fail(Errc::locking_set_too_small, "identity vault needs at least 13 locking elements");
  }
  std::set<std::uint16_t> used;
  for (Gf16Element a : locking_set) {
    if (!used.insert(a.value).second) fail(Errc::invalid_locking_set, "duplicate locking element");
  }
  if (used.size() + chaff_count > 65536) {
    fail(Errc::chaff_space_exhausted, "GF(2^16) has too few free x-coordinates");
  }

  const Gf16Poly poly{{coeffs.coeffs.begin(), coeffs.coeffs.end()}};
  IdentityVault vault;
  for (Gf16Element a : locking_set) {
    vault.points.push_back({a, evaluate(field, poly, a)});
    vault.genuine_mask.push_back(true);
  }

  Rng rng(mix_seed(seed, 3));
  std::vector<std::uint16_t> free;
  free.reserve(65536 - used.size());
  for (std::uint32_t v = 0; v < 65536; ++v) {
    if (!used.count(static_cast<std::uint16_t>(v))) free.push_back(static_cast<std::uint16_t>(v));
  }
  for (std::size_t i = 0; i < chaff_count; ++i) {
    // Partial Fisher-Yates over the free x-coordinates.
    const std::size_t j = i + rng.below(free.size() - i);
    std::swap(free[i], free[j]);
    const Gf16Element u{free[i]};
    const std::uint16_t on_poly = evaluate(field, poly, u).value;
    auto v = static_cast<std::uint16_t>(rng.below(65535));
    if (v >= on_poly) ++v;
    vault.points.push_back({u, {v}});
    vault.genuine_mask.push_back(false);
  }

  for (std::size_t i = vault.points.size(); i > 1; --i) {
    const std::size_t j = rng.below(static_cast<std::uint64_t>(i));
    std::swap(vault.points[i - 1], vault.points[j]);
    const bool tmp = vault.genuine_mask[i - 1];
    vault.genuine_mask[i - 1] = vault.genuine_mask[j];
    vault.genuine_mask[j] = tmp;
  }
  return vault;
}

std::optional<IdentityRecord> unlock_identity_vault(const IdentityVault& vault,
                                                    std::span<const Gf16Element> unlocking_set,
                                                    std::uint64_t max_subsets,
                                                    const Gf16Field& field) {
  std::set<std::uint16_t> wanted;
  for (Gf16Element b : unlocking_set) wanted.insert(b.value);
  std::vector<Gf16Point> matches;
  for (const Gf16Point& pt : vault.points) {
    if (wanted.count(pt.x.value)) matches.push_back(pt);
  }
  std::sort(matches.begin(), matches.end(), [](const Gf16Point& a, const Gf16Point& b) {
    return a.x < b.x;
  });
  constexpr std::size_t n = kIdentityCoeffs;
  if (matches.size() < n) {
    fail(Errc::not_enough_matches, std::to_string(matches.size()) + " exact matches, need 13");
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<Gf16Point> subset(n);
  const std::size_t m = matches.size();
  for (std::uint64_t tried = 0; tried < max_subsets;) {
    for (std::size_t i = 0; i < n; ++i) subset[i] = matches[idx[i]];
    ++tried;
    const Gf16Poly poly = lagrange_interpolate<Gf16Field>(field, subset, n);
    IdentityCoefficients coeffs;
    std::copy(poly.coeffs.begin(), poly.coeffs.end(), coeffs.coeffs.begin());
    if (auto record = decode_identity(coeffs)) return record;

    std::size_t i = n;
    while (i > 0 && idx[i - 1] == m - n + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return std::nullopt;
}

bool identity_vault_roundtrip(const IdentityRecord& record,
                              std::span<const Gf16Element> locking_set,
                              std::size_t chaff_count, std::uint64_t seed) {
  const IdentityCoefficients coeffs = encode_identity(record.kappa, record.id);
  const IdentityVault vault = lock_identity_vault(coeffs, locking_set, chaff_count, seed);
  const auto recovered = unlock_identity_vault(vault, locking_set, 100000);
  return recovered.has_value() && *recovered == IdentityRecord::make(record.kappa, record.id);
}

Bytes encode_identity_file(const IdentityCoefficients& coeffs, std::uint32_t modulus) {
  ByteWriter out;
  out.magic("DLFI");
  out.u8(kIdentityVersion);
  out.u32(modulus);
  for (std::size_t i = kIdentityCoeffs; i > 0; --i) out.u16(coeffs.coeffs[i - 1].value);
  return std::move(out).bytes();
}

IdentityCoefficients decode_identity_file(ByteView bytes, std::uint32_t* modulus) {
  ByteReader in(bytes);
  in.expect_magic("DLFI");
  if (in.u8() != kIdentityVersion) fail(Errc::malformed_file, "unsupported identity version");
  const std::uint32_t poly = in.u32();
  if (gf2::degree(poly) != 16 || !gf2::is_irreducible(poly)) {
    fail(Errc::malformed_file, "reduction polynomial is not an irreducible of degree 16");
  }
  if (modulus != nullptr) *modulus = poly;
  IdentityCoefficients coeffs;
  for (std::size_t i = kIdentityCoeffs; i > 0; --i) coeffs.coeffs[i - 1] = {in.u16()};
  in.expect_end();
  return coeffs;
}

}  // namespace dlfv
