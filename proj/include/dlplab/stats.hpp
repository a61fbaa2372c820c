#pragma once

#include <iosfwd>
#include <vector>

#include "dlplab/walk.hpp"

namespace dlplab {

// One first-collision experiment: the walk of Eq-style iteration is run from
// a fresh start with every visited element stored until an element repeats.
struct RhoSample {
  uint64_t steps = 0;  // tail + cycle: iterations until the first repeat
  unsigned r = 0;
  uint64_t q = 0;
  uint64_t seed = 0;
};

struct RhoSummary {
  size_t n_trials = 0;
  double mean_units = 0;  // of steps / sqrt(pi*q/2)
  double sd_units = 0;
};

// Fresh multipliers and start from `seed`; stores ~1.5*sqrt(q) elements, so q
// is gated against `memory_budget` bytes.
RhoSample first_collision_length(const DlpInstance& inst, unsigned r, uint64_t seed,
                                 size_t memory_budget = size_t(1) << 29);

// Trials fan out over threads with per-trial seeds seed + index; the result is
// identical for any thread count.
std::vector<RhoSample> rho_trials(const GroupParams& params, unsigned r, size_t trials,
                                  uint64_t seed, unsigned threads = 1);

RhoSummary summarize(const std::vector<RhoSample>& samples, uint64_t q);

double rayleigh_pdf(double x);       // x * exp(-x^2/2)
double rayleigh_quantile(double p);  // sqrt(-2 ln(1-p)), p in [0, 1)

struct QqPoint {
  double p = 0;
  double theoretical = 0;
  double empirical = 0;  // sorted steps / sqrt(q)
};
std::vector<QqPoint> qq_points(std::vector<RhoSample> samples, uint64_t q);
double qq_pearson(const std::vector<QqPoint>& pts);
double qq_max_deviation(const std::vector<QqPoint>& pts);

struct HistogramBin {
  double left = 0;
  double right = 0;
  double density = 0;
};
// Density-normalized histogram of steps / sqrt(q); the areas sum to one.
std::vector<HistogramBin> histogram(const std::vector<RhoSample>& samples, uint64_t q,
                                    unsigned bins);

// CSV emission, one header line each.
void write_samples_csv(std::ostream& out, const std::vector<RhoSample>& samples);
void write_summary_csv(std::ostream& out, unsigned r, uint64_t q, const RhoSummary& s);
void write_qq_csv(std::ostream& out, const std::vector<QqPoint>& pts);
void write_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins);

}  // namespace dlplab
