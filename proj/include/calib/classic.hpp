#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "calib/sample.hpp"

namespace calib {

// Interval partition of [0, 1] given by boundaries 0 = b_0 < ... < b_k = 1.
// Interval i is [b_i, b_{i+1}), except the last which is closed at 1.
class IntervalPartition {
 public:
  explicit IntervalPartition(std::vector<double> boundaries);

  std::size_t bin_count() const noexcept { return boundaries_.size() - 1; }
  const std::vector<double>& boundaries() const noexcept { return boundaries_; }
  std::size_t bin_of(double value) const;

 private:
  std::vector<double> boundaries_;
};

IntervalPartition uniform_intervals(std::size_t k);

// Expected calibration error with exponent alpha >= 1, grouping predictions
// by exact value equality:
//   sum over distinct values v of  Pr[v] * | v - E[target | v] |^alpha.
double ece(const WeightedSample& sample, double alpha);

// Same aggregation over the intervals of `partition` instead of exact values.
double binned_ece(const WeightedSample& sample,
                  const IntervalPartition& partition, double alpha);

// A 1-Lipschitz weighting w : [0,1] -> [-1,1] recorded at the distinct
// prediction values (values sorted ascending).
struct LipschitzWitness {
  std::vector<double> values;
  std::vector<double> weights;
};

struct SmcalResult {
  double value = 0.0;
  LipschitzWitness witness;
};

// Smooth calibration error: the exact maximum of
//   sum_t w~_t (r_t - y_t) * w(r_t)
// over 1-Lipschitz w with range [-1, 1], where w~ are the normalized sample
// weights.  Solved as a chain-structured linear program; also returns an
// optimal witness.
SmcalResult smcal(const WeightedSample& sample);

struct DistcalBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Sandwich estimate for the (lower) distance to calibration:
//   lower = max(l1_atb / 3, smcal / 2),  upper = min(3 * l1_atb, 2 * smcal).
// Guarantees lower <= upper.
DistcalBounds distcal_bounds(const WeightedSample& sample);

// The constant predictor at the mean prediction; it never increases any of
// the classical errors above on the same targets.
std::vector<double> average_predictor(const std::vector<double>& predictions);

// CSV with header v,w.
void write_witness_csv(const LipschitzWitness& witness, std::ostream& out);

struct ChainLpResult {
  double value = 0.0;
  std::vector<double> solution;
};

// Exact maximization of sum_i coeffs[i] * w[i] subject to |w[i]| <= 1 and
// |w[i+1] - w[i]| <= gaps[i].  The value function is concave piecewise
// linear, so a forward sweep of window maximizations solves the program
// exactly; a backward pass recovers an optimal point.  Requires
// gaps.size() + 1 == coeffs.size() and nonnegative gaps.
ChainLpResult solve_chain_lp(std::span<const double> coeffs,
                             std::span<const double> gaps);

}  // namespace calib
