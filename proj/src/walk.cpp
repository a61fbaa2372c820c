#include "dlplab/walk.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "dlplab/errors.hpp"
#include "dlplab/rng.hpp"

namespace dlplab {

std::vector<Multiplier> make_multipliers(const DlpInstance& inst, unsigned r, uint64_t seed) {
  if (r < 2) throw std::invalid_argument("make_multipliers: r must be >= 2");
  const auto& gp = inst.params;
  SplitMix64 rng(seed);
  std::vector<Multiplier> out;
  out.reserve(r);
  for (unsigned i = 1; i <= r; ++i) {
    for (;;) {
      uint64_t alpha = rng.in_range(1, gp.q - 1);
      uint64_t beta = rng.in_range(1, gp.q - 1);
      FieldElement elem = mul(pow(gp.g, alpha, gp.f), pow(inst.h, beta, gp.f), gp.f);
      if (elem.is_one()) continue;  // worthless as a multiplier, redraw
      out.push_back({std::move(elem), alpha, beta, i});
      break;
    }
  }
  return out;
}

WalkState walk_start(const DlpInstance& inst, uint64_t alpha0, const TagParams& tp) {
  WalkState st;
  st.y = pow(inst.params.g, alpha0, inst.params.f);
  st.alpha = alpha0 % inst.params.q;
  st.beta = 0;
  st.next_index = gamma(st.y, tp);
  return st;
}

uint32_t step(WalkState& st, const std::vector<Multiplier>& ms, const TagParams& tp,
              const GroupParams& gp) {
  const uint32_t i = st.next_index;
  const Multiplier& m = ms[i - 1];
  mul_into(st.y, st.y, m.element, gp.f);
  st.alpha = add_mod(st.alpha, m.alpha, gp.q);
  st.beta = add_mod(st.beta, m.beta, gp.q);
  ++st.steps;
  ++st.mults;
  st.run_len = i == 1 ? st.run_len + 1 : 0;
  st.next_index = gamma(st.y, tp);
  return i;
}

DistinguishedStore::InsertResult DistinguishedStore::insert(const DistinguishedPoint& dp) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = map_.find(dp.y_hex);
  if (it != map_.end()) return {it->second, false};
  if (map_.size() >= max_) return {std::nullopt, true};
  map_.emplace(dp.y_hex, dp);
  return {std::nullopt, false};
}

size_t DistinguishedStore::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

void DistinguishedStore::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  map_.clear();
}

std::optional<uint64_t> solve_collision(const DistinguishedPoint& p1, const DistinguishedPoint& p2,
                                        const DlpInstance& inst) {
  const uint64_t q = inst.params.q;
  uint64_t beta_diff = sub_mod(p2.beta, p1.beta, q);
  if (beta_diff == 0) return std::nullopt;
  uint64_t alpha_diff = sub_mod(p1.alpha, p2.alpha, q);
  uint64_t x = mul_mod(alpha_diff, inv_mod(beta_diff, q), q);
  if (!(pow(inst.params.g, x, inst.params.f) == inst.h))
    throw InternalError("collision solution failed verification: exponent bookkeeping is broken");
  return x;
}

double expected_segment_steps(unsigned r, unsigned delta) {
  return static_cast<double>(r) / (r - 1) * (std::pow(static_cast<double>(r), delta) - 1.0);
}

size_t default_max_store(uint64_t q, unsigned r, unsigned delta) {
  double rho = std::sqrt(std::numbers::pi * static_cast<double>(q) / 2.0);
  double max = rho / expected_segment_steps(r, delta);
  return std::max<size_t>(2, static_cast<size_t>(std::llround(max)));
}

namespace {

constexpr unsigned kWalksPerEpoch = 64;
constexpr unsigned kMaxEpochs = 4096;

// Generous per-walk step budget. A walk whose cycle contains no distinguished
// point would otherwise spin forever.
uint64_t walk_step_budget(uint64_t q, unsigned r, unsigned delta) {
  double rho = std::sqrt(std::numbers::pi * static_cast<double>(q) / 2.0);
  return 1000 + static_cast<uint64_t>(20.0 * (rho + expected_segment_steps(r, delta)));
}

std::string delta_warning(uint64_t q, unsigned r, unsigned delta) {
  double rho = std::sqrt(std::numbers::pi * static_cast<double>(q) / 2.0);
  double seg = expected_segment_steps(r, delta);
  if (seg * 10.0 <= rho) return {};
  std::ostringstream msg;
  msg << "expected segment spacing " << seg << " is not well below the expected rho length " << rho
      << "; decrease delta";
  return msg.str();
}

}  // namespace

SolveReport solve_dlp_original(const DlpInstance& inst, const SolveOptions& opt) {
  if (opt.r < 2) throw std::invalid_argument("solve: r must be >= 2");
  if (opt.delta < 1) throw std::invalid_argument("solve: delta must be >= 1");
  const auto& gp = inst.params;
  TagParams tp = opt.t ? TagParams(gp.eta, opt.r, opt.t) : TagParams(gp.eta, opt.r);

  SolveReport rep;
  rep.warning = delta_warning(gp.q, opt.r, opt.delta);
  const size_t max_store = opt.max_store ? opt.max_store : default_max_store(gp.q, opt.r, opt.delta);
  const uint64_t budget = walk_step_budget(gp.q, opt.r, opt.delta);
  DistinguishedStore store(max_store);

  auto accumulate = [&rep](const WalkState& st) {
    rep.steps += st.steps;
    rep.mults += st.mults;
  };

  for (unsigned attempt = 0; attempt < kMaxEpochs; ++attempt) {
    SplitMix64 master(opt.seed + attempt);
    auto ms = make_multipliers(inst, opt.r, master.next());
    store.clear();
    if (attempt > 0) ++rep.restarts;

    bool restart = false;
    for (unsigned wi = 0; wi < kWalksPerEpoch && !restart; ++wi) {
      ++rep.walks;
      WalkState st = walk_start(inst, master.in_range(1, gp.q - 1), tp);
      while (st.steps < budget) {
        step(st, ms, tp, gp);
        if (!is_distinguished(st, opt.delta)) continue;
        DistinguishedPoint dp{encode_hex(st.y), st.alpha, st.beta, rep.walks, st.steps};
        auto res = store.insert(dp);
        if (res.existing) {
          if (auto x = solve_collision(*res.existing, dp, inst)) {
            accumulate(st);
            rep.x = *x;
            ++rep.dps;
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
  throw InternalError("solve_dlp_original: no collision after the epoch limit");
}

uint64_t steps_to_first_segment(const DlpInstance& inst, unsigned r, unsigned delta, uint64_t seed) {
  const auto& gp = inst.params;
  TagParams tp(gp.eta, r);
  SplitMix64 master(seed);
  auto ms = make_multipliers(inst, r, master.next());
  WalkState st = walk_start(inst, master.in_range(1, gp.q - 1), tp);
  while (!is_distinguished(st, delta)) {
    step(st, ms, tp, gp);
    if (st.steps > (1ull << 40)) throw InternalError("no distinguished segment appeared");
  }
  return st.steps;
}

std::string solve_csv_header(bool modified) {
  std::string h = "walk,r,delta,seed,steps,mults,dps,degenerate,x";
  if (modified) h += ",l,tag_ops";
  return h;
}

std::string solve_csv_row(const std::string& walk_kind, unsigned r, unsigned delta, uint64_t seed,
                          const SolveReport& rep, std::optional<unsigned> l) {
  std::ostringstream out;
  out << walk_kind << ',' << r << ',' << delta << ',' << seed << ',' << rep.steps << ','
      << rep.mults << ',' << rep.dps << ',' << rep.degenerate << ',' << rep.x;
  if (l) out << ',' << *l << ',' << rep.tag_ops;
  return out.str();
}

}  // namespace dlplab
