#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "calib/report.hpp"
#include "calib/sample.hpp"

namespace calib {

// A partition of sample indices {0, ..., T-1} into disjoint nonempty bins.
// Construction validates exact coverage; empty bins are dropped.  The JSON
// form is a list of lists with 1-based indices.
class BinPartition {
 public:
  BinPartition(std::vector<std::vector<std::size_t>> bins,
               std::size_t element_count);

  const std::vector<std::vector<std::size_t>>& bins() const noexcept {
    return bins_;
  }
  std::size_t bin_count() const noexcept { return bins_.size(); }
  std::size_t element_count() const noexcept { return element_count_; }

  std::string to_json() const;
  static BinPartition from_json(const std::string& text);

 private:
  std::vector<std::vector<std::size_t>> bins_;
  std::size_t element_count_ = 0;
};

// A rule mapping predictions (never targets) to a bin partition.  Randomized
// rules consume the seed; deterministic rules ignore it, and their expected
// value needs a single evaluation.
struct BinningScheme {
  std::string name;
  bool randomized = false;
  std::function<BinPartition(std::span<const double> predictions,
                             std::uint64_t seed)>
      make;
};

// Unbiased-square error for a fixed partition: sum over bins of
//   ( sum_{t in bin} w_t (r_t - target_t) )^2
// with weights normalized to total 1.
double ubse_given_partition(const WeightedSample& sample,
                            const BinPartition& partition);

// Expected unbiased-square error under the scheme's randomness.  For
// deterministic schemes this is a single exact evaluation; for randomized
// schemes it is a Monte Carlo average over `draws` partitions with per-draw
// seeds derived from `seed`.
MeasureReport ubse_expected(const WeightedSample& sample,
                            const BinningScheme& scheme, std::size_t draws,
                            std::uint64_t seed);

// Sorts indices by prediction (ties broken uniformly at random via per-index
// nonces drawn from `seed`) and cuts the order into k near-equal contiguous
// bins; the first T mod k bins receive one extra element.
BinPartition quantile_bins(std::span<const double> predictions, std::size_t k,
                           std::uint64_t seed);

// Quantile-binned squared error.  The k-argument overload uses the given bin
// count; the default is round(T^(1/3)).
double quantile_l2_binece(const WeightedSample& sample, std::size_t k,
                          std::uint64_t seed);
double quantile_l2_binece(const WeightedSample& sample, std::uint64_t seed);
std::size_t default_quantile_bin_count(std::size_t sample_size);

// Closed-form expectation of a bin-partition squared error over outcomes
// drawn from `truth`:  measure(predictions, truth) + (1/T^2) sum p_t(1-p_t).
// Valid for any measure of the unbiased-square family.
double decomposition_rhs(const std::vector<double>& predictions,
                         const GroundTruth& truth, const MeasureFn& measure);

// Ready-made schemes.
BinningScheme single_bin_scheme();
BinningScheme quantile_scheme(std::size_t k);
// Splits at a uniformly random threshold q: {r_t < q} and {r_t >= q}.  Its
// expected error is the averaged two-bin error.
BinningScheme two_bin_threshold_scheme();

}  // namespace calib
