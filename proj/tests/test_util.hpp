#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "calib/rng.hpp"
#include "calib/sample.hpp"

namespace calib::testutil {

struct SampleOptions {
  std::size_t min_size = 1;
  std::size_t max_size = 50;
  bool binary_targets = true;
  bool allow_ties = true;
};

// Random sample with deliberately messy structure: duplicate predictions,
// values pinned to 0/1, and (optionally) fractional targets.
inline WeightedSample random_sample(Rng& rng, const SampleOptions& opt = {}) {
  const std::size_t t_count =
      opt.min_size + rng.uniform_below(opt.max_size - opt.min_size + 1);
  std::vector<double> r(t_count), y(t_count);
  for (std::size_t t = 0; t < t_count; ++t) {
    double v = rng.uniform01();
    if (opt.allow_ties && rng.uniform01() < 0.3)
      v = std::round(v * 4.0) / 4.0;  // collide on the quarter grid
    r[t] = v;
    if (opt.binary_targets)
      y[t] = static_cast<double>(
          rng.uniform01() < 0.5 ? rng.bernoulli(v) : rng.bernoulli(0.5));
    else
      y[t] = rng.uniform01();
  }
  return WeightedSample::from_vectors(r, y);
}

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Monte Carlo average of the two-bin integrand over uniform thresholds,
// recomputing the below/above sums element by element per draw.  Shares
// nothing with the production sweep.
inline McEstimate mc_over_q(const WeightedSample& sample, std::size_t draws,
                            std::uint64_t seed, bool squared) {
  Rng rng(seed);
  const double inv_w = 1.0 / sample.total_weight();
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double q = rng.uniform01();
    double below = 0.0, above = 0.0;
    for (const SamplePoint& p : sample.points()) {
      const double residual = p.weight * (p.prediction - p.target) * inv_w;
      (p.prediction < q ? below : above) += residual;
    }
    const double integrand = squared
                                 ? below * below + above * above
                                 : std::abs(below) + std::abs(above);
    sum += integrand;
    sum_sq += integrand * integrand;
  }
  const double n = static_cast<double>(draws);
  const double mean = sum / n;
  const double variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
  return {mean, std::sqrt(variance / n)};
}

// Map-free reference ECE used to cross-check the sweep-based grouping.
inline double naive_ece(const WeightedSample& sample, double alpha) {
  std::vector<double> values = sample.predictions();
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const double inv_w = 1.0 / sample.total_weight();
  double total = 0.0;
  for (const double v : values) {
    double weight = 0.0, residual = 0.0;
    for (const SamplePoint& p : sample.points())
      if (p.prediction == v) {
        weight += p.weight;
        residual += p.weight * (p.prediction - p.target);
      }
    if (weight > 0.0)
      total += weight * inv_w * std::pow(std::abs(residual / weight), alpha);
  }
  return total;
}

// A feasible point of the smooth-calibration program: |w| <= 1 with step
// sizes bounded by the value gaps.
inline std::vector<double> random_feasible_witness(
    Rng& rng, const std::vector<double>& values) {
  std::vector<double> w(values.size());
  w[0] = rng.uniform(-1.0, 1.0);
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double gap = values[i] - values[i - 1];
    w[i] = std::clamp(w[i - 1] + rng.uniform(-gap, gap), -1.0, 1.0);
  }
  return w;
}

}  // namespace calib::testutil
