#include "dlplab/tag.hpp"

#include <stdexcept>

namespace dlplab {

TagParams::TagParams(unsigned eta_, unsigned r_, unsigned t_) : eta(eta_), r(r_), t(t_) {
  if (r < 2) throw std::invalid_argument("tag params: r must be >= 2");
  if (t < 1 || t > eta) throw std::invalid_argument("tag params: need 1 <= t <= eta");
  if (t > 63) throw std::invalid_argument("tag params: tag width above 63 is unsupported");
  if (t < 32 && r > (1u << t)) throw std::invalid_argument("tag params: need r <= 2^t");
}

size_t tag_row_words(unsigned eta, unsigned t) {
  return (static_cast<size_t>(eta) * t + 63) / 64;
}

void pack_tag(std::span<uint64_t> row, unsigned i, unsigned t, uint64_t bits) {
  size_t pos = static_cast<size_t>(i) * t;
  size_t w = pos / 64;
  unsigned off = pos % 64;
  row[w] |= bits << off;
  if (off + t > 64) row[w + 1] |= bits >> (64 - off);
}

uint64_t extract_tag(std::span<const uint64_t> row, unsigned i, unsigned t) {
  size_t pos = static_cast<size_t>(i) * t;
  size_t w = pos / 64;
  unsigned off = pos % 64;
  uint64_t v = row[w] >> off;
  if (off + t > 64) v |= row[w + 1] << (64 - off);
  if (t < 64) v &= (1ull << t) - 1;
  return v;
}

TagVector tag_of_product(std::span<const uint64_t> y_words, unsigned eta,
                         std::span<const uint64_t> row_words, unsigned t) {
  uint64_t acc = 0;
  bool any = false;
  for (size_t wi = 0; wi < y_words.size(); ++wi) {
    uint64_t w = y_words[wi];
    if (!w) continue;
    any = true;
    unsigned base = static_cast<unsigned>(64 * wi);
    do {
      unsigned i = base + static_cast<unsigned>(std::countr_zero(w));
      w &= w - 1;
      acc ^= extract_tag(row_words, i, t);
    } while (w);
  }
  if (!any) throw std::domain_error("tag_of_product: zero is not a group element");
  (void)eta;
  return {acc, t};
}

TagVector tag_of_product(std::span<const uint64_t> y_words, unsigned eta,
                         const std::vector<TagVector>& row) {
  if (row.size() != eta) throw std::invalid_argument("tag_of_product: row must have eta entries");
  unsigned t = row.empty() ? 0 : row[0].width;
  std::vector<uint64_t> packed(tag_row_words(eta, t), 0);
  for (unsigned i = 0; i < eta; ++i) pack_tag(packed, i, t, row[i].bits);
  return tag_of_product(y_words, eta, packed, t);
}

}  // namespace dlplab
