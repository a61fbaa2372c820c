#include "dlplab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "dlplab/errors.hpp"
#include "dlplab/rng.hpp"

namespace dlplab {

RhoSample first_collision_length(const DlpInstance& inst, unsigned r, uint64_t seed,
                                 size_t memory_budget) {
  const auto& gp = inst.params;
  const double expect = 1.5 * std::sqrt(static_cast<double>(gp.q));
  const size_t per_entry = gp.g.word_count() * 8 + 56;  // element plus set overhead
  if (expect * per_entry > static_cast<double>(memory_budget))
    throw SizingError("first-collision walk at q = " + std::to_string(gp.q) +
                      " does not fit the memory budget");

  TagParams tp(gp.eta, r);
  SplitMix64 master(seed);
  auto ms = make_multipliers(inst, r, master.next());
  WalkState st = walk_start(inst, master.in_range(1, gp.q - 1), tp);

  const size_t reserve = static_cast<size_t>(3.0 * std::sqrt(static_cast<double>(gp.q))) + 16;
  if (st.y.word_count() == 1) {
    std::unordered_set<uint64_t> seen;
    seen.reserve(reserve);
    seen.insert(st.y.words()[0]);
    for (;;) {
      step(st, ms, tp, gp);
      if (!seen.insert(st.y.words()[0]).second) break;
    }
  } else {
    std::unordered_set<FieldElement, FieldElementHash> seen;
    seen.reserve(reserve);
    seen.insert(st.y);
    for (;;) {
      step(st, ms, tp, gp);
      if (!seen.insert(st.y).second) break;
    }
  }
  if (st.steps > gp.q + 1) throw InternalError("first collision beyond the pigeonhole bound");
  return {st.steps, r, gp.q, seed};
}

std::vector<RhoSample> rho_trials(const GroupParams& params, unsigned r, size_t trials,
                                  uint64_t seed, unsigned threads) {
  std::vector<RhoSample> samples(trials);
  if (threads == 0) threads = 1;
  auto worker = [&](unsigned tid) {
    for (size_t i = tid; i < trials; i += threads) {
      uint64_t trial_seed = seed + i;
      SplitMix64 master(trial_seed);
      DlpInstance inst = make_instance(params, master.next());
      samples[i] = first_collision_length(inst, r, master.next());
      samples[i].seed = trial_seed;
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned tid = 0; tid < threads; ++tid) pool.emplace_back(worker, tid);
    for (auto& th : pool) th.join();
  }
  return samples;
}

RhoSummary summarize(const std::vector<RhoSample>& samples, uint64_t q) {
  if (samples.size() < 2) throw std::invalid_argument("summarize: need at least 2 samples");
  const double unit = std::sqrt(std::numbers::pi * static_cast<double>(q) / 2.0);
  double sum = 0;
  for (const auto& s : samples) sum += s.steps / unit;
  const double mean = sum / samples.size();
  double ss = 0;
  for (const auto& s : samples) {
    double d = s.steps / unit - mean;
    ss += d * d;
  }
  RhoSummary out;
  out.n_trials = samples.size();
  out.mean_units = mean;
  out.sd_units = std::sqrt(ss / (samples.size() - 1));
  return out;
}

double rayleigh_pdf(double x) { return x > 0 ? x * std::exp(-0.5 * x * x) : 0.0; }

double rayleigh_quantile(double p) {
  if (p < 0.0 || p >= 1.0) throw std::domain_error("rayleigh_quantile: p must be in [0, 1)");
  return std::sqrt(-2.0 * std::log1p(-p));
}

std::vector<QqPoint> qq_points(std::vector<RhoSample> samples, uint64_t q) {
  std::sort(samples.begin(), samples.end(),
            [](const RhoSample& a, const RhoSample& b) { return a.steps < b.steps; });
  const double scale = std::sqrt(static_cast<double>(q));
  std::vector<QqPoint> pts(samples.size());
  const double n = static_cast<double>(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    double p = (i + 0.5) / n;
    pts[i] = {p, rayleigh_quantile(p), samples[i].steps / scale};
  }
  return pts;
}

double qq_pearson(const std::vector<QqPoint>& pts) {
  const double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0;
  for (const auto& p : pts) {
    sx += p.theoretical;
    sy += p.empirical;
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (const auto& p : pts) {
    double dx = p.theoretical - mx, dy = p.empirical - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

double qq_max_deviation(const std::vector<QqPoint>& pts) {
  double m = 0;
  for (const auto& p : pts) m = std::max(m, std::abs(p.empirical - p.theoretical));
  return m;
}

std::vector<HistogramBin> histogram(const std::vector<RhoSample>& samples, uint64_t q,
                                    unsigned bins) {
  if (bins < 5) throw std::invalid_argument("histogram: need at least 5 bins");
  if (samples.empty()) throw std::invalid_argument("histogram: no samples");
  const double scale = std::sqrt(static_cast<double>(q));
  double lo = samples[0].steps / scale, hi = lo;
  for (const auto& s : samples) {
    double v = s.steps / scale;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi == lo) hi = lo + 1.0;  // degenerate single-value input
  const double width = (hi - lo) / bins;
  std::vector<uint64_t> counts(bins, 0);
  for (const auto& s : samples) {
    double v = s.steps / scale;
    unsigned b = std::min(bins - 1, static_cast<unsigned>((v - lo) / width));
    ++counts[b];
  }
  std::vector<HistogramBin> out(bins);
  const double n = static_cast<double>(samples.size());
  for (unsigned b = 0; b < bins; ++b)
    out[b] = {lo + b * width, lo + (b + 1) * width, counts[b] / (n * width)};
  return out;
}

namespace {

void put_double(std::ostream& out, double v) {
  char buf[40];
  snprintf(buf, sizeof(buf), "%.9g", v);
  out << buf;
}

}  // namespace

void write_samples_csv(std::ostream& out, const std::vector<RhoSample>& samples) {
  out << "r,q,seed,steps\n";
  for (const auto& s : samples)
    out << s.r << ',' << s.q << ',' << s.seed << ',' << s.steps << '\n';
}

void write_summary_csv(std::ostream& out, unsigned r, uint64_t q, const RhoSummary& s) {
  out << "r,q,trials,mean_units,sd_units\n";
  char buf[80];
  snprintf(buf, sizeof(buf), "%.6f,%.6f", s.mean_units, s.sd_units);
  out << r << ',' << q << ',' << s.n_trials << ',' << buf << '\n';
}

void write_qq_csv(std::ostream& out, const std::vector<QqPoint>& pts) {
  out << "p,theoretical,empirical\n";
  for (const auto& p : pts) {
    put_double(out, p.p);
    out << ',';
    put_double(out, p.theoretical);
    out << ',';
    put_double(out, p.empirical);
    out << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins) {
  out << "bin_left,bin_right,density\n";
  for (const auto& b : bins) {
    put_double(out, b.left);
    out << ',';
    put_double(out, b.right);
    out << ',';
    put_double(out, b.density);
    out << '\n';
  }
}

}  // namespace dlplab
