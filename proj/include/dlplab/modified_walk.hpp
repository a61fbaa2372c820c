#pragma once

#include "dlplab/table.hpp"

namespace dlplab {

// State of the tag-tracing walk. `y` is the last fully computed element;
// `cell` names the pending multiplier product in the table (identity right
// after a flush), so the element the walk conceptually sits on is
// y * cell.element without that product ever being computed.
struct ModifiedWalkState {
  FieldElement y;
  uint64_t alpha = 0;  // exponents of y, not of the pending product
  uint64_t beta = 0;
  uint32_t cell = 0;
  unsigned pending = 0;  // key length of cell
  uint64_t run_len = 0;
  uint64_t steps = 0;
  uint64_t mults = 0;
  uint64_t tag_ops = 0;
  uint64_t lookups = 0;

  // lookup-strategy working state
  CellKey key;          // binary search
  uint64_t slot = 0;    // dense vector
  FieldElement scratch; // flush temporary
};

ModifiedWalkState modified_walk_start(const DlpInstance& inst, uint64_t alpha0,
                                      const TableMl& tbl);

// One walk iteration without any field multiplication: the index of the
// pending element comes out of its tag row, and the cell advances through the
// table's active lookup strategy. Returns the chosen index.
uint32_t tag_step(ModifiedWalkState& st, const TableMl& tbl);

inline bool is_distinguished(const ModifiedWalkState& st, unsigned delta) {
  return st.run_len == delta;
}

// Materialize the pending product: exactly one field multiplication, exponents
// from the cell, cell reset to the identity.
void flush(ModifiedWalkState& st, const TableMl& tbl);

struct ModifiedStepEvent {
  uint32_t index = 0;
  bool flushed = false;
  bool distinguished = false;  // st.y is the distinguished element (post flush)
};

// tag_step plus the flush policy: flush when a distinguished run completes
// (delta > 0) or when the pending product reaches length l. delta = 0 turns
// distinguished-point detection off.
ModifiedStepEvent modified_walk_advance(ModifiedWalkState& st, const TableMl& tbl, unsigned delta);

struct ModifiedSolveOptions {
  unsigned r = 4;
  unsigned l = 10;
  unsigned delta = 2;
  size_t max_store = 0;  // 0: default_max_store
  uint64_t seed = 1;
  unsigned t = 0;  // 0: ceil(log2 r)
  LookupStrategy strategy = LookupStrategy::transition_table;
  TableBuildOptions table;
};

SolveReport solve_dlp_modified(const DlpInstance& inst, const ModifiedSolveOptions& opt);

// Drives the original and the modified walk side by side from identical
// multipliers and start, comparing the chosen index streams step for step and
// the walk elements at every flush. The distinguished runs of both walks must
// fire together.
struct LockstepResult {
  uint64_t steps = 0;
  uint64_t flushes = 0;
  uint64_t dp_events = 0;
  uint64_t index_mismatches = 0;
  uint64_t flush_mismatches = 0;
  uint64_t dp_mismatches = 0;

  bool clean() const { return index_mismatches + flush_mismatches + dp_mismatches == 0; }
};

LockstepResult run_lockstep(const DlpInstance& inst, unsigned r, unsigned l, unsigned t,
                            unsigned delta, uint64_t seed, uint64_t steps,
                            LookupStrategy strategy = LookupStrategy::transition_table,
                            const TableBuildOptions& topt = {});

}  // namespace dlplab
