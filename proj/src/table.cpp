#include "dlplab/table.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <stdexcept>

#include "dlplab/errors.hpp"

namespace dlplab {

namespace {

constexpr uint64_t kDenseMaxEntries = 1ull << 26;

// Combinatorial ranking of canonical keys: length ascending, then
// lexicographic. seq_from(c, m) counts non-decreasing length-m sequences over
// {c..r}; prefix sums over it give O(k) rank and O(k*r) unrank.
class KeyRanker {
 public:
  KeyRanker(unsigned r, unsigned l) : r_(r), l_(l), stride_(l + 2) {
    const unsigned nmax = r + l;
    binom_.assign(static_cast<size_t>(nmax + 1) * stride_, 0);
    for (unsigned n = 0; n <= nmax; ++n) {
      at(n, 0) = 1;
      for (unsigned k = 1; k <= std::min(n, l + 1); ++k) {
        uint64_t a = at(n - 1, k - 1);
        uint64_t b = k <= n - 1 ? at(n - 1, k) : 0;
        if (a > UINT64_MAX - b) throw SizingError("table dimensions overflow 64-bit counting");
        at(n, k) = a + b;
      }
    }
    offsets_.assign(l + 2, 0);
    for (unsigned k = 0; k <= l; ++k) offsets_[k + 1] = offsets_[k] + seq_from(1, k);
  }

  uint64_t seq_from(unsigned c, unsigned m) const {
    return binom_[static_cast<size_t>(r_ - c + m) * stride_ + m];
  }
  uint64_t keys_shorter_than(unsigned len) const { return offsets_[len]; }
  uint64_t total() const { return offsets_[l_ + 1]; }

  uint64_t rank_unchecked(const uint8_t* key, unsigned k) const {
    uint64_t acc = offsets_[k];
    unsigned lo = 1;
    for (unsigned pos = 0; pos < k; ++pos) {
      unsigned v = key[pos];
      unsigned m = k - pos;  // remaining positions including this one
      acc += seq_from(lo, m) - seq_from(v, m);
      lo = v;
    }
    return acc;
  }

  uint64_t rank(std::span<const uint8_t> key) const {
    if (key.size() > l_) throw std::invalid_argument("key longer than l");
    unsigned lo = 1;
    for (uint8_t v : key) {
      if (v < lo || v > r_) throw std::invalid_argument("key is not canonical");
      lo = v;
    }
    return rank_unchecked(key.data(), static_cast<unsigned>(key.size()));
  }

  CellKey unrank(uint64_t ordinal) const {
    if (ordinal >= total()) throw std::invalid_argument("ordinal out of range");
    unsigned k = 0;
    while (offsets_[k + 1] <= ordinal) ++k;
    uint64_t rem = ordinal - offsets_[k];
    CellKey key(k);
    unsigned lo = 1;
    for (unsigned pos = 0; pos < k; ++pos) {
      unsigned m = k - pos - 1;
      unsigned v = lo;
      while (rem >= seq_from(v, m)) {
        rem -= seq_from(v, m);
        ++v;
      }
      key[pos] = static_cast<uint8_t>(v);
      lo = v;
    }
    return key;
  }

 private:
  uint64_t& at(unsigned n, unsigned k) { return binom_[static_cast<size_t>(n) * stride_ + k]; }
  uint64_t at(unsigned n, unsigned k) const { return binom_[static_cast<size_t>(n) * stride_ + k]; }

  unsigned r_, l_, stride_;
  std::vector<uint64_t> binom_;
  std::vector<uint64_t> offsets_;
};

}  // namespace

const char* strategy_name(LookupStrategy s) {
  switch (s) {
    case LookupStrategy::binary_search: return "binary";
    case LookupStrategy::dense_vector: return "dense";
    case LookupStrategy::transition_table: return "transition";
  }
  return "?";
}

std::optional<LookupStrategy> strategy_from_name(const std::string& name) {
  if (name == "binary") return LookupStrategy::binary_search;
  if (name == "dense") return LookupStrategy::dense_vector;
  if (name == "transition") return LookupStrategy::transition_table;
  return std::nullopt;
}

uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > UINT64_MAX) throw SizingError("binomial overflows 64 bits");
  }
  return static_cast<uint64_t>(c);
}

uint64_t table_cell_count(unsigned r, unsigned l) { return binomial(l + r, r); }

uint64_t transition_domain(unsigned r, unsigned l) { return binomial(l + r - 1, r); }

uint64_t rank_key(const CellKey& key, unsigned r, unsigned l) {
  return KeyRanker(r, l).rank(key);
}

CellKey unrank_key(uint64_t ordinal, unsigned r, unsigned l) {
  return KeyRanker(r, l).unrank(ordinal);
}

bool dense_feasible(unsigned r, unsigned l) {
  uint64_t entries = 1;
  for (unsigned i = 0; i < r; ++i) {
    entries *= l + 1;
    if (entries > kDenseMaxEntries) return false;
  }
  return true;
}

TableSizes estimate_table(unsigned r, unsigned l, unsigned t, unsigned eta,
                          const TableBuildOptions& opt) {
  TableSizes s;
  s.cells = table_cell_count(r, l);
  size_t nw = (eta + 63) / 64;
  size_t tw = tag_row_words(eta, t);
  s.bytes_cells = s.cells * (nw * 8 + 16 + tw * 8);
  s.bytes_keys = s.cells * (l + 1);
  if (opt.build_dense && dense_feasible(r, l)) {
    uint64_t entries = 1;
    for (unsigned i = 0; i < r; ++i) entries *= l + 1;
    s.bytes_dense = entries * 4;
  }
  if (opt.build_transition) s.bytes_transition = r * transition_domain(r, l) * 4;
  return s;
}

CellKey TableMl::key_of(uint64_t ordinal) const {
  unsigned len = key_len_[ordinal];
  const uint8_t* p = keys_.data() + ordinal * l_;
  return CellKey(p, p + len);
}

Cell TableMl::cell(uint64_t ordinal) const {
  if (ordinal >= cells_) throw std::invalid_argument("cell ordinal out of range");
  Cell c;
  c.key = key_of(ordinal);
  c.element = FieldElement::zero(eta_);
  auto src = element_of(ordinal);
  std::copy(src.begin(), src.end(), c.element.words_mut().begin());
  c.alpha = alpha_[ordinal];
  c.beta = beta_[ordinal];
  c.tag_row.resize(eta_);
  auto row = tag_row_of(ordinal);
  for (unsigned i = 0; i < eta_; ++i) c.tag_row[i] = {extract_tag(row, i, t_), t_};
  return c;
}

void TableMl::set_strategy(LookupStrategy s) {
  if (s == LookupStrategy::dense_vector && !dense_enabled())
    throw ConfigError("dense-vector lookup is not available for this table");
  if (s == LookupStrategy::transition_table && !transition_enabled())
    throw ConfigError("transition-table lookup is not available for this table");
  strategy_ = s;
}

uint64_t TableMl::dense_slot(const CellKey& key) const {
  if (!dense_enabled()) throw ConfigError("dense-vector lookup is not available for this table");
  uint64_t s = 0;
  for (uint8_t v : key) s += dense_pow_[r_ - v];
  return s;
}

TableMl build_table(const std::vector<Multiplier>& ms, unsigned l, unsigned t,
                    const IrreduciblePoly& f, uint64_t q, const TableBuildOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const unsigned r = static_cast<unsigned>(ms.size());
  if (r < 2) throw std::invalid_argument("build_table: need at least 2 multipliers");
  if (r > 255) throw SizingError("build_table: r above 255 is unsupported");
  if (l < 1) throw std::invalid_argument("build_table: l must be >= 1");
  const unsigned eta = f.degree;
  TagParams tp(eta, r, t);  // validates t against eta and r

  KeyRanker ranker(r, l);
  TableMl tbl;
  tbl.r_ = r;
  tbl.l_ = l;
  tbl.t_ = t;
  tbl.eta_ = eta;
  tbl.q_ = q;
  tbl.f_ = f;
  tbl.cells_ = ranker.total();
  tbl.nw_ = (eta + 63) / 64;
  tbl.tw_ = tag_row_words(eta, t);

  TableBuildOptions effective = opt;
  effective.build_dense = opt.build_dense && dense_feasible(r, l);
  tbl.sizes_ = estimate_table(r, l, t, eta, effective);
  if (tbl.sizes_.total() > opt.memory_budget)
    throw SizingError("table of " + std::to_string(tbl.cells_) + " cells (C(l+r, r)) needs about " +
                      std::to_string(tbl.sizes_.total()) + " bytes, over the configured budget of " +
                      std::to_string(opt.memory_budget));

  const uint64_t cells = tbl.cells_;
  const size_t nw = tbl.nw_;
  const size_t tw = tbl.tw_;
  tbl.elements_.assign(cells * nw, 0);
  tbl.alpha_.assign(cells, 0);
  tbl.beta_.assign(cells, 0);
  tbl.tag_rows_.assign(cells * tw, 0);
  tbl.keys_.assign(cells * l, 0);
  tbl.key_len_.assign(cells, 0);

  const uint64_t trans_domain = ranker.keys_shorter_than(l);
  if (effective.build_transition) tbl.transition_.assign(r * trans_domain, 0);

  // Reused scratch element for the x^i * m ladder.
  FieldElement shifted = FieldElement::zero(eta);
  const unsigned tag_width = t;
  auto fill_tag_row = [&](const uint64_t* elem, uint64_t* row) {
    auto sw = shifted.words_mut();
    std::copy(elem, elem + nw, sw.begin());
    const unsigned lo_bit = eta - tag_width;
    const unsigned lw = lo_bit / 64, loff = lo_bit % 64;
    const uint64_t mask = tag_width < 64 ? (1ull << tag_width) - 1 : ~0ull;
    for (unsigned i = 0; i < eta; ++i) {
      uint64_t tag = sw[lw] >> loff;
      if (loff + tag_width > 64) tag |= sw[lw + 1] << (64 - loff);
      tag &= mask;
      size_t pos = static_cast<size_t>(i) * tag_width;
      row[pos / 64] |= tag << (pos % 64);
      if (pos % 64 + tag_width > 64) row[pos / 64 + 1] |= tag >> (64 - pos % 64);
      mul_by_x_into(shifted, f);
    }
  };

  // Identity cell: ordinal 0, empty key, element 1, exponents (0, 0).
  tbl.elements_[0] = 1;
  fill_tag_row(&tbl.elements_[0], &tbl.tag_rows_[0]);

  // Row k is built from row k-1 by appending an index >= the parent's last,
  // so every multiset appears exactly once and children arrive in rank order.
  FieldElement parent_el = FieldElement::zero(eta);
  FieldElement child_el = FieldElement::zero(eta);
  uint64_t child = 1;
  for (unsigned k = 1; k <= l; ++k) {
    const uint64_t row_begin = ranker.keys_shorter_than(k - 1);
    const uint64_t row_end = ranker.keys_shorter_than(k);
    for (uint64_t p = row_begin; p < row_end; ++p) {
      auto pw = parent_el.words_mut();
      std::copy(tbl.elements_.begin() + p * nw, tbl.elements_.begin() + (p + 1) * nw, pw.begin());
      const uint8_t* pkey = tbl.keys_.data() + p * l;
      const unsigned last = k == 1 ? 1 : pkey[k - 2];
      for (unsigned j = last; j <= r; ++j, ++child) {
        const Multiplier& m = ms[j - 1];
        mul_into(child_el, parent_el, m.element, f);
        auto cw = child_el.words();
        std::copy(cw.begin(), cw.end(), tbl.elements_.begin() + child * nw);
        tbl.alpha_[child] = add_mod(tbl.alpha_[p], m.alpha, q);
        tbl.beta_[child] = add_mod(tbl.beta_[p], m.beta, q);
        uint8_t* ckey = tbl.keys_.data() + child * l;
        std::memcpy(ckey, pkey, k - 1);
        ckey[k - 1] = static_cast<uint8_t>(j);
        tbl.key_len_[child] = static_cast<uint8_t>(k);
        fill_tag_row(&tbl.elements_[child * nw], &tbl.tag_rows_[child * tw]);
        // Appending j to the parent is one of the transition pairs; record it
        // here and fill the insert pairs below.
        if (effective.build_transition)
          tbl.transition_[static_cast<size_t>(j - 1) * trans_domain + p] =
              static_cast<uint32_t>(child);
      }
    }
  }
  if (child != cells) throw InternalError("table build produced an unexpected cell count");

  if (effective.build_transition) {
    uint8_t merged[256];
    for (uint64_t p = 0; p < trans_domain; ++p) {
      const unsigned klen = tbl.key_len_[p];
      const uint8_t* key = tbl.keys_.data() + p * l;
      const unsigned last = klen == 0 ? 1 : key[klen - 1];
      for (unsigned j = 1; j < last; ++j) {
        unsigned ins = 0;
        while (ins < klen && key[ins] <= j) ++ins;
        std::memcpy(merged, key, ins);
        merged[ins] = static_cast<uint8_t>(j);
        std::memcpy(merged + ins + 1, key + ins, klen - ins);
        tbl.transition_[static_cast<size_t>(j - 1) * trans_domain + p] =
            static_cast<uint32_t>(ranker.rank_unchecked(merged, klen + 1));
      }
    }
  }

  if (effective.build_dense) {
    uint64_t entries = 1;
    tbl.dense_pow_.assign(r + 1, 0);
    tbl.dense_pow_[0] = 1;
    for (unsigned i = 1; i <= r; ++i) tbl.dense_pow_[i] = tbl.dense_pow_[i - 1] * (l + 1);
    entries = tbl.dense_pow_[r];
    tbl.dense_.assign(entries, UINT32_MAX);
    for (uint64_t c = 0; c < cells; ++c) {
      uint64_t s = 0;
      const uint8_t* key = tbl.keys_.data() + c * l;
      for (unsigned i = 0; i < tbl.key_len_[c]; ++i) s += tbl.dense_pow_[r - key[i]];
      tbl.dense_[s] = static_cast<uint32_t>(c);
    }
  }

  tbl.strategy_ = tbl.transition_enabled() ? LookupStrategy::transition_table
                                           : LookupStrategy::binary_search;
  tbl.build_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return tbl;
}

namespace {

// Length first, then lexicographic; every executed integer comparison counts.
int compare_key_at(const TableMl& tbl, const uint8_t* qkey, unsigned qlen, uint64_t ordinal,
                   const uint8_t* keys, const uint8_t* lens, unsigned l, uint64_t& comparisons) {
  (void)tbl;
  ++comparisons;
  unsigned klen = lens[ordinal];
  if (qlen != klen) return qlen < klen ? -1 : 1;
  const uint8_t* key = keys + ordinal * l;
  for (unsigned i = 0; i < qlen; ++i) {
    ++comparisons;
    if (qkey[i] != key[i]) return qkey[i] < key[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

uint32_t lookup_binary(const TableMl& tbl, const CellKey& key, uint64_t* comparisons) {
  if (key.size() > tbl.l_) throw std::invalid_argument("key longer than l");
  unsigned lo_v = 1;
  for (uint8_t v : key) {
    if (v < lo_v || v > tbl.r_) throw std::invalid_argument("key is not canonical");
    lo_v = v;
  }
  uint64_t cmp = 0;
  uint64_t lo = 0, hi = tbl.cells_;
  const unsigned qlen = static_cast<unsigned>(key.size());
  while (lo < hi) {
    uint64_t mid = lo + (hi - lo) / 2;
    int c = compare_key_at(tbl, key.data(), qlen, mid, tbl.keys_.data(), tbl.key_len_.data(),
                           tbl.l_, cmp);
    if (c == 0) {
      if (comparisons) *comparisons += cmp;
      return static_cast<uint32_t>(mid);
    }
    if (c < 0) hi = mid;
    else lo = mid + 1;
  }
  throw InternalError("lookup_binary: canonical key missing from the table");
}

uint32_t lookup_dense(const TableMl& tbl, std::span<const unsigned> exponents) {
  if (!tbl.dense_enabled()) throw ConfigError("dense-vector lookup is not available for this table");
  if (exponents.size() != tbl.r_) throw std::invalid_argument("need one exponent per multiplier");
  unsigned total = 0;
  uint64_t s = 0;
  for (unsigned i = 1; i <= tbl.r_; ++i) {
    total += exponents[i - 1];
    s += exponents[i - 1] * tbl.dense_pow_[tbl.r_ - i];
  }
  if (total > tbl.l_) throw std::invalid_argument("exponent sum above l");
  return lookup_dense_slot(tbl, s);
}

uint32_t lookup_dense_slot(const TableMl& tbl, uint64_t slot) {
  if (!tbl.dense_enabled()) throw ConfigError("dense-vector lookup is not available for this table");
  uint32_t v = tbl.dense_[slot];
  if (v == UINT32_MAX) throw InternalError("dense slot does not name a cell");
  return v;
}

std::optional<uint32_t> lookup_transition(const TableMl& tbl, uint64_t ordinal,
                                          uint32_t next_index) {
  if (!tbl.transition_enabled())
    throw ConfigError("transition-table lookup is not available for this table");
  if (next_index < 1 || next_index > tbl.r_) throw std::invalid_argument("index outside {1..r}");
  const uint64_t domain = tbl.transition_.size() / tbl.r_;
  if (ordinal >= tbl.cells_) throw std::invalid_argument("cell ordinal out of range");
  if (ordinal >= domain) return std::nullopt;  // full-length key: flush required
  return tbl.transition_[static_cast<size_t>(next_index - 1) * domain + ordinal];
}

}  // namespace dlplab
