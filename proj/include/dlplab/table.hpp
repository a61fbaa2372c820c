#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlplab/tag.hpp"
#include "dlplab/walk.hpp"

namespace dlplab {

// Canonical multiset of multiplier indices: non-decreasing over {1..r},
// length 0..l. Products commute, so one sorted key per multiset.
using CellKey = std::vector<uint8_t>;

enum class LookupStrategy { binary_search, dense_vector, transition_table };

const char* strategy_name(LookupStrategy s);
std::optional<LookupStrategy> strategy_from_name(const std::string& name);

// Ranking of canonical keys: length ascending, lexicographic within a length.
// The empty key has ordinal 0.
uint64_t binomial(unsigned n, unsigned k);
uint64_t table_cell_count(unsigned r, unsigned l);   // C(l+r, r)
uint64_t transition_domain(unsigned r, unsigned l);  // C(l+r-1, r) = keys shorter than l

uint64_t rank_key(const CellKey& key, unsigned r, unsigned l);
CellKey unrank_key(uint64_t ordinal, unsigned r, unsigned l);

struct TableBuildOptions {
  size_t memory_budget = size_t(1) << 31;  // bytes
  bool build_dense = true;       // subject to the (l+1)^r entry gate
  bool build_transition = true;
};

// Materialized view of a single cell.
struct Cell {
  CellKey key;
  FieldElement element;
  uint64_t alpha = 0;
  uint64_t beta = 0;
  std::vector<TagVector> tag_row;  // tag_row[i] = tau(x^i * element)
};

struct TableSizes {
  uint64_t cells = 0;
  size_t bytes_cells = 0;       // elements + exponents + tag rows
  size_t bytes_keys = 0;        // sorted key list (binary search payload)
  size_t bytes_dense = 0;       // 0 when infeasible or skipped
  size_t bytes_transition = 0;  // 0 when skipped
  size_t total() const { return bytes_cells + bytes_keys + bytes_dense + bytes_transition; }
};
TableSizes estimate_table(unsigned r, unsigned l, unsigned t, unsigned eta,
                          const TableBuildOptions& opt = {});
bool dense_feasible(unsigned r, unsigned l);

// The precomputation table: every multiplier product of length <= l with
// summed exponents and the full tag row, in canonical rank order, plus the
// lookup-strategy payloads.
class TableMl {
 public:
  unsigned r() const { return r_; }
  unsigned l() const { return l_; }
  unsigned t() const { return t_; }
  unsigned eta() const { return eta_; }
  uint64_t q() const { return q_; }
  const IrreduciblePoly& modulus() const { return f_; }
  uint64_t cell_count() const { return cells_; }
  size_t element_words() const { return nw_; }
  size_t tag_words() const { return tw_; }
  double build_seconds() const { return build_seconds_; }
  TableSizes sizes() const { return sizes_; }

  bool dense_enabled() const { return !dense_.empty(); }
  bool transition_enabled() const { return !transition_.empty(); }

  LookupStrategy strategy() const { return strategy_; }
  void set_strategy(LookupStrategy s);

  std::span<const uint64_t> element_of(uint64_t ordinal) const {
    return {elements_.data() + ordinal * nw_, nw_};
  }
  std::span<const uint64_t> tag_row_of(uint64_t ordinal) const {
    return {tag_rows_.data() + ordinal * tw_, tw_};
  }
  uint64_t alpha_of(uint64_t ordinal) const { return alpha_[ordinal]; }
  uint64_t beta_of(uint64_t ordinal) const { return beta_[ordinal]; }
  unsigned key_len_of(uint64_t ordinal) const { return key_len_[ordinal]; }
  CellKey key_of(uint64_t ordinal) const;
  Cell cell(uint64_t ordinal) const;

  friend TableMl build_table(const std::vector<Multiplier>& ms, unsigned l, unsigned t,
                             const IrreduciblePoly& f, uint64_t q, const TableBuildOptions& opt);

  friend uint32_t lookup_binary(const TableMl& tbl, const CellKey& key, uint64_t* comparisons);
  friend uint32_t lookup_dense(const TableMl& tbl, std::span<const unsigned> exponents);
  friend uint32_t lookup_dense_slot(const TableMl& tbl, uint64_t slot);
  friend std::optional<uint32_t> lookup_transition(const TableMl& tbl, uint64_t ordinal,
                                                   uint32_t next_index);

  // Dense-vector slot arithmetic: slot(key) = sum a_i (l+1)^(r-i); appending
  // multiplier i adds (l+1)^(r-i).
  uint64_t dense_slot(const CellKey& key) const;
  uint64_t dense_step(uint64_t slot, uint32_t next_index) const {
    return slot + dense_pow_[r_ - next_index];
  }

 private:
  unsigned r_ = 0, l_ = 0, t_ = 0, eta_ = 0;
  uint64_t cells_ = 0;
  size_t nw_ = 0, tw_ = 0;
  uint64_t q_ = 0;
  IrreduciblePoly f_;
  LookupStrategy strategy_ = LookupStrategy::binary_search;
  double build_seconds_ = 0;
  TableSizes sizes_;

  std::vector<uint64_t> elements_;   // cells * nw
  std::vector<uint64_t> alpha_, beta_;
  std::vector<uint64_t> tag_rows_;   // cells * tw
  std::vector<uint8_t> keys_;        // cells * l, zero padded
  std::vector<uint8_t> key_len_;
  std::vector<uint32_t> dense_;      // (l+1)^r slots or empty
  std::vector<uint32_t> transition_; // r * transition_domain or empty
  std::vector<uint64_t> dense_pow_;  // (l+1)^k for k = 0..r
};

TableMl build_table(const std::vector<Multiplier>& ms, unsigned l, unsigned t,
                    const IrreduciblePoly& f, uint64_t q, const TableBuildOptions& opt = {});

// Ordinal of the cell whose key equals `key`, by binary search over the
// sorted key list; `comparisons` accumulates the integer comparisons made.
uint32_t lookup_binary(const TableMl& tbl, const CellKey& key, uint64_t* comparisons = nullptr);

// Ordinal from the dense vector, addressed by multiplier exponents (a_1..a_r).
uint32_t lookup_dense(const TableMl& tbl, std::span<const unsigned> exponents);
uint32_t lookup_dense_slot(const TableMl& tbl, uint64_t slot);

// Ordinal of key(ordinal) extended by next_index; nullopt when the key is
// already full length and the walk must flush.
std::optional<uint32_t> lookup_transition(const TableMl& tbl, uint64_t ordinal,
                                          uint32_t next_index);

}  // namespace dlplab
