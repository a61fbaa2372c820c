#pragma once

#include <string>

#include "dlplab/modified_walk.hpp"

namespace dlplab {

enum class WalkKind { original, modified };

struct BenchOptions {
  WalkKind walk = WalkKind::original;
  unsigned r = 20;
  unsigned l = 10;     // modified walk only
  unsigned t = 0;      // 0: ceil(log2 r)
  unsigned delta = 0;  // 0: distinguished-point detection off
  uint64_t iterations = 1000000;
  uint64_t seed = 1;
  LookupStrategy strategy = LookupStrategy::transition_table;
  TableBuildOptions table;
};

struct BenchReport {
  std::string walk;
  unsigned r = 0;
  unsigned l = 0;  // 0 for the original walk
  unsigned t = 0;
  uint64_t iterations = 0;
  double wall_seconds = 0;  // iteration loop only; the table build is excluded
  uint64_t mults = 0;
  uint64_t tag_ops = 0;
  uint64_t lookups = 0;
  PolyKind poly_kind = PolyKind::sparse;
  double rho_r = 1.0;
  double solve_cost = 0;  // wall_seconds * rho_r
  double table_build_seconds = 0;
  uint64_t dp_flushes = 0;
};

// Average rho length in units of sqrt(pi*q/2) per r, from desk-scale
// measurement; defined for r in [4, 20], 1.0 outside.
double rho_r_reference(unsigned r);

// Runs exactly `iterations` walk steps with no collision solving and reports
// wall time plus the operation counters. Precomputation happens before the
// clock starts.
BenchReport bench_iterate(const DlpInstance& inst, const BenchOptions& opt);

std::string bench_csv_header();
std::string bench_csv_row(const BenchReport& rep);

// Counter-based field-bit multiplication work model.
inline uint64_t bit_work_original(uint64_t mults, unsigned eta) {
  return mults * static_cast<uint64_t>(eta) * eta;
}
inline uint64_t bit_work_modified(uint64_t tag_ops, uint64_t mults, unsigned eta, unsigned t) {
  return tag_ops * static_cast<uint64_t>(t) * eta + mults * static_cast<uint64_t>(eta) * eta;
}

}  // namespace dlplab
