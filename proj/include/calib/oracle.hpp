#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "calib/report.hpp"
#include "calib/sample.hpp"

namespace calib {

// Expectation of a measure over the outcome distribution, with provenance.
struct ExpectedErrorReport {
  double value = 0.0;
  Method method = Method::kExact;
  std::optional<std::size_t> trials;
  std::optional<double> std_error;

  std::string to_json() const;
};

// Exact expectation by exhaustive enumeration of all outcome realizations
// (positive-probability ones), accumulated at extended precision in plain
// binary order.  Requires truth.size() <= kEnumerationCap.
ExpectedErrorReport expected_error_bruteforce(
    const MeasureFn& measure, const std::vector<double>& predictions,
    const GroundTruth& truth);

// Monte Carlo expectation over `trials` independent outcome draws with
// per-trial seeds derived from `seed`.  With a single trial the standard
// error is undefined and omitted.
ExpectedErrorReport expected_error_mc(const MeasureFn& measure,
                                      const std::vector<double>& predictions,
                                      const GroundTruth& truth,
                                      std::size_t trials, std::uint64_t seed);

// Reference implementations of the threshold-sweep errors that recompute the
// below/above sums from scratch for every segment, O(T * m).  They share no
// code with the prefix-sum fast path.
double atb_naive(const WeightedSample& sample);
double l1_atb_naive(const WeightedSample& sample);

}  // namespace calib
