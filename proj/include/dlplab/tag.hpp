#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "dlplab/gf2.hpp"

namespace dlplab {

// Width-t binary tag. Entry c_j (bit j of `bits`) is the coefficient of
// x^(eta-t+j) of the tagged element, so value(v) = bits as an integer.
struct TagVector {
  uint64_t bits = 0;
  unsigned width = 0;

  bool operator==(const TagVector&) const = default;
  TagVector operator^(const TagVector& o) const { return {bits ^ o.bits, width}; }
};

struct TagParams {
  unsigned eta = 0;
  unsigned r = 0;
  unsigned t = 0;

  TagParams() = default;
  // t defaults to ceil(log2 r).
  TagParams(unsigned eta_, unsigned r_) : TagParams(eta_, r_, default_width(r_)) {}
  TagParams(unsigned eta_, unsigned r_, unsigned t_);

  static unsigned default_width(unsigned r) { return std::bit_width(r - 1u); }
};

// The coefficients of the t highest-degree terms.
inline TagVector tau(const FieldElement& a, const TagParams& p) {
  unsigned lo = p.eta - p.t;
  unsigned w = lo / 64, off = lo % 64;
  auto words = a.words();
  uint64_t v = words[w] >> off;
  if (off + p.t > 64) v |= words[w + 1] << (64 - off);
  if (p.t < 64) v &= (1ull << p.t) - 1;
  return {v, p.t};
}

// 1 + value(v) for r = 2^t; the mod keeps sigma onto {1..r} for other r.
inline uint32_t sigma(const TagVector& v, const TagParams& p) {
  return 1u + static_cast<uint32_t>(v.bits % p.r);
}

inline uint32_t gamma(const FieldElement& a, const TagParams& p) { return sigma(tau(a, p), p); }

// Packed tag rows: eta tags of width t, tag i at bit offset i*t.
size_t tag_row_words(unsigned eta, unsigned t);
void pack_tag(std::span<uint64_t> row, unsigned i, unsigned t, uint64_t bits);
uint64_t extract_tag(std::span<const uint64_t> row, unsigned i, unsigned t);

// tau(Y*m) from the bits of Y and the row (tau(x^i * m))_i, by xoring the row
// entries at the set bits of Y. Rejects the all-zero Y.
TagVector tag_of_product(std::span<const uint64_t> y_words, unsigned eta,
                         std::span<const uint64_t> row_words, unsigned t);
TagVector tag_of_product(std::span<const uint64_t> y_words, unsigned eta,
                         const std::vector<TagVector>& row);

}  // namespace dlplab
