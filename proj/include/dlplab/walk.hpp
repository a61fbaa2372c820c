#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dlplab/group.hpp"
#include "dlplab/tag.hpp"

namespace dlplab {

// Walk multiplier m = g^alpha * h^beta with its exponents. Never the identity.
struct Multiplier {
  FieldElement element;
  uint64_t alpha = 0;
  uint64_t beta = 0;
  uint32_t index = 0;  // position in {1..r}
};

// alpha_i, beta_i uniform in [1, q-1] from the seeded generator. Identity
// products are redrawn.
std::vector<Multiplier> make_multipliers(const DlpInstance& inst, unsigned r, uint64_t seed);

struct WalkState {
  FieldElement y;
  uint64_t alpha = 0;
  uint64_t beta = 0;
  uint64_t run_len = 0;  // consecutive steps with index 1 ending at y
  uint64_t steps = 0;
  uint64_t mults = 0;
  uint32_t next_index = 0;  // gamma(y), cached between steps
};

WalkState walk_start(const DlpInstance& inst, uint64_t alpha0, const TagParams& tp);

// One iteration y <- y * m_gamma(y) with exponent bookkeeping; returns the
// index consumed. run_len extends on index 1 and resets otherwise.
uint32_t step(WalkState& st, const std::vector<Multiplier>& ms, const TagParams& tp,
              const GroupParams& gp);

// True exactly when run_len just reached delta: the walk consumed its delta-th
// consecutive index 1 and the previous index was not 1 (or the run started at
// the walk start). A longer run does not fire again.
inline bool is_distinguished(const WalkState& st, unsigned delta) { return st.run_len == delta; }

struct DistinguishedPoint {
  std::string y_hex;
  uint64_t alpha = 0;
  uint64_t beta = 0;
  uint64_t walk_id = 0;
  uint64_t step = 0;
};

class DistinguishedStore {
 public:
  explicit DistinguishedStore(size_t max) : max_(max) {}

  struct InsertResult {
    std::optional<DistinguishedPoint> existing;  // set on key collision
    bool overflow = false;                       // set when the table is full
  };

  // Collisions are detected even when the store is at capacity; only genuinely
  // new points count against MAX.
  InsertResult insert(const DistinguishedPoint& dp);
  size_t size() const;
  void clear();

 private:
  mutable std::mutex mu_;
  size_t max_;
  std::unordered_map<std::string, DistinguishedPoint> map_;
};

// x = (alpha1 - alpha2) / (beta2 - beta1) mod q, verified by g^x = h.
// nullopt: degenerate collision (beta1 = beta2), caller rerandomizes.
// InternalError: the verification failed, the walk bookkeeping is broken.
std::optional<uint64_t> solve_collision(const DistinguishedPoint& p1, const DistinguishedPoint& p2,
                                        const DlpInstance& inst);

// (r/(r-1)) * (r^delta - 1): expected steps until the first distinguished
// path segment completes.
double expected_segment_steps(unsigned r, unsigned delta);
// MAX sized so that MAX * expected_segment_steps ~ sqrt(pi*q/2).
size_t default_max_store(uint64_t q, unsigned r, unsigned delta);

struct SolveOptions {
  unsigned r = 20;
  unsigned delta = 2;
  size_t max_store = 0;  // 0: default_max_store
  uint64_t seed = 1;
  unsigned t = 0;  // 0: ceil(log2 r)
};

struct SolveReport {
  uint64_t x = 0;
  uint64_t steps = 0;
  uint64_t mults = 0;
  uint64_t tag_ops = 0;
  uint64_t lookups = 0;
  uint64_t dps = 0;
  uint64_t walks = 0;
  uint64_t degenerate = 0;
  uint64_t restarts = 0;  // multiplier regenerations
  std::string warning;
};

SolveReport solve_dlp_original(const DlpInstance& inst, const SolveOptions& opt);

// Fresh multipliers and start from `seed`; steps until the first segment.
uint64_t steps_to_first_segment(const DlpInstance& inst, unsigned r, unsigned delta, uint64_t seed);

// One-row CSV run reports. The modified walk appends columns l, tag_ops.
std::string solve_csv_header(bool modified);
std::string solve_csv_row(const std::string& walk_kind, unsigned r, unsigned delta, uint64_t seed,
                          const SolveReport& rep, std::optional<unsigned> l = std::nullopt);

}  // namespace dlplab
