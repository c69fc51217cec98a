#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dlfv/gf16.hpp"
#include "dlfv/polynomial.hpp"

namespace dlfv {

using Kappa128 = std::array<std::uint8_t, 16>;  // big-endian

inline constexpr std::size_t kIdentityCoeffs = 13;  // 208 bits / 16
inline constexpr std::size_t kIdentityBytes = 26;

// kappa (128) | id (64) | crc16(id) (16). The last 80 bits are the IDC.
struct IdentityRecord {
  Kappa128 kappa{};
  std::uint64_t id = 0;
  std::uint16_t crc = 0;

  static IdentityRecord make(const Kappa128& kappa, std::uint64_t id);

  // 26-byte kappaID string, MSB first.
  std::array<std::uint8_t, kIdentityBytes> kappa_id() const;

  friend bool operator==(const IdentityRecord&, const IdentityRecord&) = default;
};

std::uint16_t identity_crc(std::uint64_t id);

// coeffs[i] = c_i. The kappaID string maps MSB chunk -> c_12 down to
// LSB chunk -> c_0, so c_0 holds the CRC and c_1..c_4 the ID.
struct IdentityCoefficients {
  std::array<Gf16Element, kIdentityCoeffs> coeffs{};

  friend bool operator==(const IdentityCoefficients&, const IdentityCoefficients&) = default;
};

IdentityCoefficients encode_identity(const Kappa128& kappa, std::uint64_t id);

// nullopt is Reject: the recomputed CRC over the decoded ID disagrees with the
// stored one. The CRC does not cover kappa.
std::optional<IdentityRecord> decode_identity(const IdentityCoefficients& coeffs);

// Degree-12 identity polynomial hidden among chaff in GF(2^16). Matching is
// exact (delta = 0).
struct IdentityVault {
  std::vector<Gf16Point> points;
  std::vector<bool> genuine_mask;  // test ground truth only
};

IdentityVault lock_identity_vault(const IdentityCoefficients& coeffs,
                                  std::span<const Gf16Element> locking_set,
                                  std::size_t chaff_count, std::uint64_t seed,
                                  const Gf16Field& field = Gf16Field{});

// NotEnoughMatches if fewer than 13 vault x-coordinates occur in B; nullopt
// if every subset tried fails the CRC.
std::optional<IdentityRecord> unlock_identity_vault(const IdentityVault& vault,
                                                    std::span<const Gf16Element> unlocking_set,
                                                    std::uint64_t max_subsets,
                                                    const Gf16Field& field = Gf16Field{});

// Lock, unlock with B = A, and report CRC acceptance of the recovered record.
bool identity_vault_roundtrip(const IdentityRecord& record,
                              std::span<const Gf16Element> locking_set,
                              std::size_t chaff_count, std::uint64_t seed);

// "DLFI" | version u8 | reduction polynomial u32 | c_12 .. c_0 as u16.
Bytes encode_identity_file(const IdentityCoefficients& coeffs,
                           std::uint32_t modulus = kGf16DefaultModulus);
IdentityCoefficients decode_identity_file(ByteView bytes, std::uint32_t* modulus = nullptr);

}  // namespace dlfv
