#include "dlfv/vault.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>

#include "dlfv/error.hpp"
#include "dlfv/random.hpp"

namespace dlfv {
namespace {

constexpr std::uint8_t kVaultVersion = 1;
constexpr std::uint64_t kKeyStream = 1;
constexpr std::uint64_t kChaffStream = 2;

void check_seg_bits(unsigned seg_bits, const FieldParams& params) {
  if (seg_bits == 0 || seg_bits % 8 != 0) {
    fail(Errc::bad_arguments, "seg_bits must be a positive multiple of 8");
  }
  if (seg_bits + 1 > params.p_bits()) {
    fail(Errc::bad_arguments, "seg_bits " + std::to_string(seg_bits) +
                                  " must be at most p_bits - 1 = " +
                                  std::to_string(params.p_bits() - 1));
  }
  if (seg_bits > std::numeric_limits<std::uint16_t>::max()) {
    fail(Errc::bad_arguments, "seg_bits too large");
  }
}

// Whole-message ciphertext split: beta is written at ceil(p_bits/8) bytes,
// left-padded to a whole number of segments.
std::size_t whole_segments(const FieldParams& params, unsigned seg_bits) {
  const std::size_t chunk = seg_bits / 8;
  return (params.element_bytes() + chunk - 1) / chunk;
}

BigInt absdiff(const BigInt& a, const BigInt& b) { return a < b ? b - a : a - b; }

std::optional<Bytes> try_deframe(ByteView framed, unsigned seg_bits) {
  try {
    return deframe(framed, seg_bits);
  } catch (const Error&) {
    return std::nullopt;
  }
}

void validate_locking_set(const LockingSet& set, const PrimeField& field, const BigInt& delta) {
  std::vector<BigInt> xs;
  xs.reserve(set.size());
  for (const FieldElement& a : set) {
    if (!field.contains(a.value)) fail(Errc::invalid_locking_set, "element outside [0, p)");
    xs.push_back(a.value);
  }
  std::sort(xs.begin(), xs.end());
  const BigInt gap = 2 * delta;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] - xs[i - 1] <= gap) {
      fail(Errc::invalid_locking_set,
           "elements " + xs[i - 1].get_str() + " and " + xs[i].get_str() +
               " are not more than 2*delta apart");
    }
  }
}

// Integers in [0, p) farther than 2*delta from every placed x, kept as
// disjoint intervals so chaff can be drawn uniformly without retries.
// Interval order is irrelevant to uniformity, so each interval owns a fixed
// slot and a Fenwick tree over slot widths gives O(log n) sampling.
class FreeSpace {
 public:
  FreeSpace(const BigInt& p, std::vector<BigInt> taken, const BigInt& delta,
            std::size_t max_takes)
      : gap_(2 * delta) {
    std::sort(taken.begin(), taken.end());
    const std::size_t capacity = taken.size() + 1 + max_takes;
    slots_.resize(capacity);
    tree_.assign(capacity + 1, BigInt(0));
    BigInt lo = 0;
    for (const BigInt& x : taken) {
      push({lo, x - gap_ - 1});
      lo = x + gap_ + 1;
    }
    push({lo, p - 1});
  }

  bool empty() const { return total_ == 0; }

  BigInt take(Rng& rng) {
    BigInt k = rng.below(total_);
    const std::size_t slot = find(k);
    const Interval old = slots_[slot];
    const BigInt u = old.lo + k;
    // Blocking [u - gap, u + gap] only touches the containing interval,
    // since neighbours are already more than gap away from any free point.
    Interval left{old.lo, u - gap_ - 1};
    Interval right{u + gap_ + 1, old.hi};
    if (left.lo > left.hi) left = {0, -1};
    add(slot, width(left) - width(old));
    slots_[slot] = left;
    push(right);
    return u;
  }

 private:
  struct Interval {
    BigInt lo;
    BigInt hi;
  };

  static BigInt width(const Interval& iv) { return iv.hi - iv.lo + 1; }

  void push(const Interval& iv) {
    if (iv.lo > iv.hi) return;
    slots_[used_] = iv;
    add(used_, width(iv));
    ++used_;
  }

  void add(std::size_t slot, const BigInt& delta) {
    total_ += delta;
    for (std::size_t i = slot + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  // Slot containing the k-th free point; k becomes the offset within it.
  std::size_t find(BigInt& k) const {
    std::size_t pos = 0;
    std::size_t step = std::bit_floor(tree_.size() - 1);
    for (; step != 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= k) {
        pos = next;
        k -= tree_[next];
      }
    }
    return pos;
  }

  BigInt gap_;
  BigInt total_ = 0;
  std::vector<Interval> slots_;
  std::vector<BigInt> tree_;
  std::size_t used_ = 0;
};

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::classical: return "classical";
    case Scheme::alg1: return "alg1";
    case Scheme::alg2: return "alg2";
    case Scheme::alg3: return "alg3";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::classical, Scheme::alg1, Scheme::alg2, Scheme::alg3}) {
    if (scheme_name(s) == name) return s;
  }
  return std::nullopt;
}

KeyKind key_kind_for(Scheme scheme) {
  switch (scheme) {
    case Scheme::classical: return KeyKind::none;
    case Scheme::alg1:
    case Scheme::alg2: return KeyKind::single;
    case Scheme::alg3: return KeyKind::parity;
  }
  return KeyKind::none;
}

EncodedMessage encode_coefficients(ByteView message, Scheme scheme, const DlogCodec& codec,
                                   unsigned seg_bits) {
  const PrimeField& field = codec.field();
  check_seg_bits(seg_bits, field.params());
  const Bytes framed = frame(message, seg_bits).to_bytes();
  EncodedMessage out;

  if (scheme == Scheme::alg2) {
    const FieldElement beta = codec.encode_whole(framed);
    if (framed.size() > std::numeric_limits<std::uint16_t>::max()) {
      fail(Errc::message_too_large, "framed length exceeds the key file's u16 field");
    }
    out.framed_length = static_cast<std::uint16_t>(framed.size());
    const std::size_t n = whole_segments(field.params(), seg_bits);
    const Bytes wide = to_bytes(beta.value, n * (seg_bits / 8));
    for (BigInt& s : segment(wide, seg_bits).segments) out.coeffs.push_back({std::move(s)});
    return out;
  }

  const SegmentList segments = segment(framed, seg_bits);
  out.coeffs.reserve(segments.segments.size());
  for (std::size_t i = 0; i < segments.segments.size(); ++i) {
    FieldElement m{segments.segments[i]};
    out.coeffs.push_back(scheme == Scheme::classical ? m : codec.encode_segment(m, i + 1));
  }
  return out;
}

std::optional<Bytes> try_decode_coefficients(std::span<const FieldElement> coeffs,
                                             Scheme scheme, const FieldParams& params,
                                             const DlogCodec* codec,
                                             std::uint16_t framed_length, unsigned seg_bits) {
  const BigInt limit = BigInt(1) << seg_bits;
  const std::size_t chunk = seg_bits / 8;

  if (scheme == Scheme::alg2) {
    SegmentList parts{{}, seg_bits};
    for (const FieldElement& c : coeffs) {
      if (c.value >= limit) return std::nullopt;
      parts.segments.push_back(c.value);
    }
    const BigInt beta = from_bytes(reassemble(parts));
    if (beta >= params.p) return std::nullopt;
    if (codec != nullptr) {
      Bytes framed;
      try {
        framed = codec->decode_whole({beta}, framed_length);
      } catch (const Error&) {
        return std::nullopt;
      }
      return try_deframe(framed, seg_bits);
    }
    // Keyless reading: the framed width is unknown, so try every width that
    // is a whole number of segments.
    const std::size_t min_width = std::max<std::size_t>(kFrameOverheadBytes, to_bytes(beta).size());
    for (std::size_t w = chunk; w <= coeffs.size() * chunk; w += chunk) {
      if (w < min_width) continue;
      if (auto m = try_deframe(to_bytes(beta, w), seg_bits)) return m;
    }
    return std::nullopt;
  }

  SegmentList parts{{}, seg_bits};
  parts.segments.reserve(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    BigInt m = (codec == nullptr || scheme == Scheme::classical)
                   ? coeffs[i].value
                   : codec->decode_segment(coeffs[i], i + 1).value;
    if (m >= limit) return std::nullopt;
    parts.segments.push_back(std::move(m));
  }
  return try_deframe(reassemble(parts), seg_bits);
}

LockResult lock(ByteView message, const LockingSet& locking_set, const FieldParams& params,
                const LockOptions& options) {
  const PrimeField field(params);
  check_seg_bits(options.seg_bits, params);
  if (options.delta < 0) fail(Errc::bad_arguments, "delta must be non-negative");
  validate_locking_set(locking_set, field, options.delta);

  const EphemeralKey key =
      gen_key(params, key_kind_for(options.scheme), mix_seed(options.seed, kKeyStream));
  const DlogCodec codec(field, key);
  EncodedMessage encoded = encode_coefficients(message, options.scheme, codec, options.seg_bits);

  const std::size_t n = encoded.coeffs.size();
  if (locking_set.size() < n) {
    fail(Errc::locking_set_too_small, "locking set has " + std::to_string(locking_set.size()) +
                                          " elements, message needs " + std::to_string(n));
  }
  if (n > std::numeric_limits<std::uint16_t>::max()) {
    fail(Errc::message_too_large, "coefficient count exceeds u16");
  }
  // Each point needs its own x; fail before allocating for an impossible count.
  const BigInt room = params.p - static_cast<unsigned long>(locking_set.size());
  if (BigInt(static_cast<unsigned long>(options.chaff_count)) > room) {
    fail(Errc::chaff_space_exhausted,
         "field has room for at most " + room.get_str() + " chaff points");
  }

  const Poly poly{std::move(encoded.coeffs)};
  Vault vault;
  vault.params = params;
  vault.scheme = options.scheme;
  vault.seg_bits = static_cast<std::uint16_t>(options.seg_bits);
  vault.coeff_count = static_cast<std::uint16_t>(n);
  vault.delta = options.delta;
  vault.points.reserve(locking_set.size() + options.chaff_count);
  vault.genuine_mask.reserve(locking_set.size() + options.chaff_count);

  std::vector<BigInt> taken;
  taken.reserve(locking_set.size());
  for (const FieldElement& a : locking_set) {
    vault.points.push_back({a, evaluate(field, poly, a)});
    vault.genuine_mask.push_back(true);
    taken.push_back(a.value);
  }

  Rng rng(mix_seed(options.seed, kChaffStream));
  FreeSpace space(params.p, std::move(taken), options.delta, options.chaff_count);
  for (std::size_t i = 0; i < options.chaff_count; ++i) {
    if (space.empty()) {
      fail(Errc::chaff_space_exhausted, "placed " + std::to_string(i) + " of " +
                                            std::to_string(options.chaff_count) +
                                            " chaff points before running out of room");
    }
    FieldElement u{space.take(rng)};
    const FieldElement on_poly = evaluate(field, poly, u);
    // Uniform over F_p minus {P(u)}.
    BigInt v = rng.below(params.p - 1);
    if (v >= on_poly.value) v += 1;
    vault.points.push_back({std::move(u), {std::move(v)}});
    vault.genuine_mask.push_back(false);
  }

  for (std::size_t i = vault.points.size(); i > 1; --i) {
    const std::size_t j = rng.below(static_cast<std::uint64_t>(i));
    std::swap(vault.points[i - 1], vault.points[j]);
    const bool tmp = vault.genuine_mask[i - 1];
    vault.genuine_mask[i - 1] = vault.genuine_mask[j];
    vault.genuine_mask[j] = tmp;
  }

  return {std::move(vault), KeyFile{key, encoded.framed_length}};
}

std::vector<Point> match_points(const Vault& vault, const UnlockingSet& unlocking_set) {
  std::vector<std::size_t> order(vault.points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return vault.points[a].x < vault.points[b].x;
  });

  std::vector<bool> chosen(order.size(), false);
  for (const FieldElement& b : unlocking_set) {
    auto it = std::lower_bound(order.begin(), order.end(), b, [&](std::size_t i, const FieldElement& v) {
      return vault.points[i].x < v;
    });
    std::optional<std::size_t> best;
    BigInt best_dist;
    auto consider = [&](std::vector<std::size_t>::iterator pos) {
      const BigInt d = absdiff(vault.points[*pos].x.value, b.value);
      if (!best || d < best_dist) {
        best = static_cast<std::size_t>(pos - order.begin());
        best_dist = d;
      }
    };
    if (it != order.begin()) consider(std::prev(it));
    if (it != order.end()) consider(it);
    if (best && best_dist <= vault.delta) chosen[*best] = true;
  }

  std::vector<Point> out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (chosen[k]) out.push_back(vault.points[order[k]]);
  }
  return out;
}

SearchResult search_subsets(const Vault& vault, std::span<const Point> candidates,
                            const KeyFile* key, std::uint64_t max_subsets) {
  SearchResult result;
  const std::size_t n = vault.coeff_count;
  if (n == 0 || candidates.size() < n || max_subsets == 0) return result;

  std::vector<Point> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) { return a.x < b.x; });

  const PrimeField field(vault.params);
  std::optional<DlogCodec> codec;
  if (key != nullptr) codec.emplace(field, key->key);
  const std::uint16_t framed_length = key != nullptr ? key->framed_length : 0;

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<Point> subset(n);
  const std::size_t m = sorted.size();

  for (;;) {
    for (std::size_t i = 0; i < n; ++i) subset[i] = sorted[idx[i]];
    ++result.subsets_tried;
    try {
      const Poly poly = lagrange_interpolate<PrimeField>(field, subset, n);
      result.message = try_decode_coefficients(poly.coeffs, vault.scheme, vault.params,
                                               codec ? &*codec : nullptr, framed_length,
                                               vault.seg_bits);
    } catch (const Error& e) {
      if (e.code() != Errc::duplicate_x) throw;
    }
    if (result.message || result.subsets_tried >= max_subsets) return result;

    // Next combination in lexicographic order.
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == m - n + (i - 1)) --i;
    if (i == 0) return result;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Bytes unlock(const Vault& vault, const UnlockingSet& unlocking_set, const KeyFile& key,
             std::uint64_t max_subsets) {
  if (key.key.kind != key_kind_for(vault.scheme)) {
    fail(Errc::key_mismatch, "key kind does not match vault scheme " +
                                 std::string(scheme_name(vault.scheme)));
  }
  const std::vector<Point> matches = match_points(vault, unlocking_set);
  if (matches.size() < vault.coeff_count) {
    fail(Errc::not_enough_matches, std::to_string(matches.size()) + " matching points, need " +
                                       std::to_string(vault.coeff_count));
  }
  SearchResult r = search_subsets(vault, matches, &key, max_subsets);
  if (!r.message) {
    fail(Errc::decode_failed, "no subset decoded with a valid signature after " +
                                  std::to_string(r.subsets_tried) + " attempts");
  }
  return std::move(*r.message);
}

bool verify_coefficients(const Poly& recovered, const Poly& expected) {
  if (recovered.size() != expected.size()) {
    fail(Errc::bad_arguments, "coefficient lists differ in length");
  }
  return recovered.coeffs == expected.coeffs;
}

std::uint64_t classical_coeff_check(std::uint64_t message_bits, const FieldParams& params) {
  return required_coeff_count(message_bits, params.p);
}

Bytes encode_vault_file(const Vault& vault) {
  ByteWriter out;
  out.magic("DLFV");
  out.u8(kVaultVersion);
  out.u8(static_cast<std::uint8_t>(vault.scheme));
  out.u16(vault.seg_bits);
  out.u16(vault.coeff_count);
  out.prefixed(vault.delta);
  write_field_params(out, vault.params);
  out.u32(static_cast<std::uint32_t>(vault.points.size()));
  const std::size_t width = vault.params.element_bytes();
  for (const Point& pt : vault.points) {
    out.raw(to_bytes(pt.x.value, width));
    out.raw(to_bytes(pt.y.value, width));
  }
  return std::move(out).bytes();
}

Vault decode_vault_file(ByteView bytes) {
  ByteReader in(bytes);
  in.expect_magic("DLFV");
  if (in.u8() != kVaultVersion) fail(Errc::malformed_file, "unsupported vault version");
  Vault vault;
  const std::uint8_t scheme = in.u8();
  if (scheme > 3) fail(Errc::malformed_file, "unknown scheme");
  vault.scheme = static_cast<Scheme>(scheme);
  vault.seg_bits = in.u16();
  vault.coeff_count = in.u16();
  vault.delta = in.prefixed();
  vault.params = read_field_params(in);
  if (vault.seg_bits == 0 || vault.seg_bits % 8 != 0 || vault.seg_bits >= vault.params.p_bits() ||
      vault.coeff_count == 0) {
    fail(Errc::malformed_file, "inconsistent vault header");
  }
  const std::uint32_t count = in.u32();
  const std::size_t width = vault.params.element_bytes();
  if (in.remaining() != static_cast<std::size_t>(count) * 2 * width) {
    fail(Errc::malformed_file, "point block size does not match point count");
  }
  vault.points.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    BigInt x = from_bytes(in.raw(width));
    BigInt y = from_bytes(in.raw(width));
    if (x >= vault.params.p || y >= vault.params.p) fail(Errc::malformed_file, "point outside field");
    vault.points.push_back({{std::move(x)}, {std::move(y)}});
  }
  in.expect_end();
  return vault;
}

}  // namespace dlfv
