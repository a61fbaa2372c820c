#include "dlplab/modified_walk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dlplab/errors.hpp"
#include "dlplab/rng.hpp"

namespace dlplab {

ModifiedWalkState modified_walk_start(const DlpInstance& inst, uint64_t alpha0,
                                      const TableMl& tbl) {
  if (inst.params.eta != tbl.eta()) throw std::invalid_argument("table built for another field");
  ModifiedWalkState st;
  st.y = pow(inst.params.g, alpha0, inst.params.f);
  st.alpha = alpha0 % inst.params.q;
  st.beta = 0;
  st.key.reserve(tbl.l());
  st.scratch = FieldElement::zero(tbl.eta());
  return st;
}

uint32_t tag_step(ModifiedWalkState& st, const TableMl& tbl) {
  if (st.pending >= tbl.l())
    throw InternalError("tag_step called with a full pending product; flush first");
  TagVector ss = tag_of_product(st.y.words(), tbl.eta(), tbl.tag_row_of(st.cell), tbl.t());
  ++st.tag_ops;
  const uint32_t idx = 1 + static_cast<uint32_t>(ss.bits % tbl.r());

  switch (tbl.strategy()) {
    case LookupStrategy::transition_table:
      st.cell = *lookup_transition(tbl, st.cell, idx);
      break;
    case LookupStrategy::dense_vector:
      st.slot = tbl.dense_step(st.slot, idx);
      st.cell = lookup_dense_slot(tbl, st.slot);
      break;
    case LookupStrategy::binary_search: {
      auto pos = std::upper_bound(st.key.begin(), st.key.end(), static_cast<uint8_t>(idx));
      st.key.insert(pos, static_cast<uint8_t>(idx));
      st.cell = lookup_binary(tbl, st.key);
      break;
    }
  }
  ++st.lookups;
  ++st.pending;
  ++st.steps;
  st.run_len = idx == 1 ? st.run_len + 1 : 0;
  return idx;
}

void flush(ModifiedWalkState& st, const TableMl& tbl) {
  if (st.pending == 0) throw std::invalid_argument("flush: no pending product");
  auto cw = tbl.element_of(st.cell);
  std::copy(cw.begin(), cw.end(), st.scratch.words_mut().begin());
  mul_into(st.y, st.y, st.scratch, tbl.modulus());
  st.alpha = add_mod(st.alpha, tbl.alpha_of(st.cell), tbl.q());
  st.beta = add_mod(st.beta, tbl.beta_of(st.cell), tbl.q());
  ++st.mults;
  st.cell = 0;
  st.pending = 0;
  st.key.clear();
  st.slot = 0;
}

ModifiedStepEvent modified_walk_advance(ModifiedWalkState& st, const TableMl& tbl,
                                        unsigned delta) {
  ModifiedStepEvent ev;
  ev.index = tag_step(st, tbl);
  if (delta != 0 && is_distinguished(st, delta)) {
    flush(st, tbl);
    ev.flushed = true;
    ev.distinguished = true;
  } else if (st.pending == tbl.l()) {
    flush(st, tbl);
    ev.flushed = true;
  }
  return ev;
}

SolveReport solve_dlp_modified(const DlpInstance& inst, const ModifiedSolveOptions& opt) {
  if (opt.r < 2) throw std::invalid_argument("solve: r must be >= 2");
  if (opt.delta < 1) throw std::invalid_argument("solve: delta must be >= 1");
  if (opt.l < 1) throw std::invalid_argument("solve: l must be >= 1");
  const auto& gp = inst.params;
  const unsigned t = opt.t ? opt.t : TagParams::default_width(opt.r);

  SolveReport rep;
  const double rho = std::sqrt(std::numbers::pi * static_cast<double>(gp.q) / 2.0);
  if (expected_segment_steps(opt.r, opt.delta) * 10.0 > rho)
    rep.warning =
        "expected segment spacing is not well below the expected rho length; decrease delta";
  const size_t max_store = opt.max_store ? opt.max_store : default_max_store(gp.q, opt.r, opt.delta);
  const uint64_t budget =
      1000 + static_cast<uint64_t>(20.0 * (rho + expected_segment_steps(opt.r, opt.delta)));
  DistinguishedStore store(max_store);

  TableBuildOptions topt = opt.table;
  if (opt.strategy == LookupStrategy::transition_table) topt.build_transition = true;
  if (opt.strategy == LookupStrategy::dense_vector) topt.build_dense = true;

  auto accumulate = [&rep](const ModifiedWalkState& st) {
    rep.steps += st.steps;
    rep.mults += st.mults;
    rep.tag_ops += st.tag_ops;
    rep.lookups += st.lookups;
  };

  constexpr unsigned kWalksPerEpoch = 64;
  constexpr unsigned kMaxEpochs = 4096;
  for (unsigned attempt = 0; attempt < kMaxEpochs; ++attempt) {
    SplitMix64 master(opt.seed + attempt);
    auto ms = make_multipliers(inst, opt.r, master.next());
    TableMl tbl = build_table(ms, opt.l, t, gp.f, gp.q, topt);
    tbl.set_strategy(opt.strategy);
    store.clear();
    if (attempt > 0) ++rep.restarts;

    bool restart = false;
    for (unsigned wi = 0; wi < kWalksPerEpoch && !restart; ++wi) {
      ++rep.walks;
      ModifiedWalkState st = modified_walk_start(inst, master.in_range(1, gp.q - 1), tbl);
      while (st.steps < budget) {
        auto ev = modified_walk_advance(st, tbl, opt.delta);
        if (!ev.distinguished) continue;
        DistinguishedPoint dp{encode_hex(st.y), st.alpha, st.beta, rep.walks, st.steps};
        auto res = store.insert(dp);
        if (res.existing) {
          if (auto x = solve_collision(*res.existing, dp, inst)) {
            accumulate(st);
            rep.x = *x;
            return rep;
          }
          ++rep.degenerate;
          restart = true;
          break;
        }
        if (res.overflow) {
          restart = true;
          break;
        }
        ++rep.dps;
      }
      accumulate(st);
    }
  }
  throw InternalError("solve_dlp_modified: no collision after the epoch limit");
}

LockstepResult run_lockstep(const DlpInstance& inst, unsigned r, unsigned l, unsigned t,
                            unsigned delta, uint64_t seed, uint64_t steps,
                            LookupStrategy strategy, const TableBuildOptions& topt_in) {
  const auto& gp = inst.params;
  const unsigned width = t ? t : TagParams::default_width(r);
  TagParams tp(gp.eta, r, width);

  SplitMix64 master(seed);
  auto ms = make_multipliers(inst, r, master.next());
  TableBuildOptions topt = topt_in;
  if (strategy == LookupStrategy::transition_table) topt.build_transition = true;
  if (strategy == LookupStrategy::dense_vector) topt.build_dense = true;
  TableMl tbl = build_table(ms, l, width, gp.f, gp.q, topt);
  tbl.set_strategy(strategy);

  const uint64_t alpha0 = master.in_range(1, gp.q - 1);
  WalkState orig = walk_start(inst, alpha0, tp);
  ModifiedWalkState mod = modified_walk_start(inst, alpha0, tbl);

  LockstepResult res;
  for (uint64_t n = 0; n < steps; ++n) {
    uint32_t oi = step(orig, ms, tp, gp);
    auto ev = modified_walk_advance(mod, tbl, delta);
    ++res.steps;
    if (oi != ev.index) ++res.index_mismatches;
    bool orig_dp = delta != 0 && is_distinguished(orig, delta);
    if (orig_dp) ++res.dp_events;
    if (orig_dp != ev.distinguished) ++res.dp_mismatches;
    if (ev.flushed) {
      ++res.flushes;
      if (!(mod.y == orig.y) || mod.alpha != orig.alpha || mod.beta != orig.beta)
        ++res.flush_mismatches;
    }
  }
  return res;
}

}  // namespace dlplab
