#include "dlplab/bench.hpp"

#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "dlplab/rng.hpp"

namespace dlplab {

double rho_r_reference(unsigned r) {
  // Measured average rho lengths for r-adding walks, in units of
  // sqrt(pi*q/2); see the stats lab (stable across subgroup sizes).
  static const double table[] = {1.341, 1.195, 1.137, 1.116, 1.086, 1.074, 1.070, 1.063, 1.050,
                                 1.057, 1.057, 1.052, 1.038, 1.037, 1.034, 1.029, 1.025};
  if (r < 4 || r > 20) return 1.0;
  return table[r - 4];
}

BenchReport bench_iterate(const DlpInstance& inst, const BenchOptions& opt) {
  if (opt.r < 2) throw std::invalid_argument("bench: r must be >= 2");
  const auto& gp = inst.params;
  const unsigned t = opt.t ? opt.t : TagParams::default_width(opt.r);

  BenchReport rep;
  rep.r = opt.r;
  rep.t = t;
  rep.iterations = opt.iterations;
  rep.poly_kind = gp.f.kind;
  rep.rho_r = rho_r_reference(opt.r);

  SplitMix64 master(opt.seed);
  auto ms = make_multipliers(inst, opt.r, master.next());

  using clock = std::chrono::steady_clock;
  if (opt.walk == WalkKind::original) {
    rep.walk = "original";
    TagParams tp(gp.eta, opt.r, t);
    WalkState st = walk_start(inst, master.in_range(1, gp.q - 1), tp);
    const auto t0 = clock::now();
    for (uint64_t n = 0; n < opt.iterations; ++n) step(st, ms, tp, gp);
    rep.wall_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    rep.mults = st.mults;
  } else {
    rep.walk = "modified";
    rep.l = opt.l;
    TableBuildOptions topt = opt.table;
    if (opt.strategy == LookupStrategy::transition_table) topt.build_transition = true;
    if (opt.strategy == LookupStrategy::dense_vector) topt.build_dense = true;
    TableMl tbl = build_table(ms, opt.l, t, gp.f, gp.q, topt);
    tbl.set_strategy(opt.strategy);
    rep.table_build_seconds = tbl.build_seconds();
    ModifiedWalkState st = modified_walk_start(inst, master.in_range(1, gp.q - 1), tbl);
    const auto t0 = clock::now();
    for (uint64_t n = 0; n < opt.iterations; ++n) {
      auto ev = modified_walk_advance(st, tbl, opt.delta);
      if (ev.distinguished) ++rep.dp_flushes;
    }
    rep.wall_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    rep.mults = st.mults;
    rep.tag_ops = st.tag_ops;
    rep.lookups = st.lookups;
  }
  rep.solve_cost = rep.wall_seconds * rep.rho_r;
  return rep;
}

std::string bench_csv_header() {
  return "walk,r,l,iterations,wall_seconds,mults,tag_ops,lookups,poly_kind,solve_cost";
}

std::string bench_csv_row(const BenchReport& rep) {
  char buf[256];
  snprintf(buf, sizeof(buf), "%s,%u,%u,%llu,%.6f,%llu,%llu,%llu,%s,%.6f", rep.walk.c_str(), rep.r,
           rep.l, static_cast<unsigned long long>(rep.iterations), rep.wall_seconds,
           static_cast<unsigned long long>(rep.mults),
           static_cast<unsigned long long>(rep.tag_ops),
           static_cast<unsigned long long>(rep.lookups),
           rep.poly_kind == PolyKind::sparse ? "sparse" : "arbitrary", rep.solve_cost);
  return buf;
}

}  // namespace dlplab
