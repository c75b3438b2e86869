#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "calib/sample.hpp"

namespace calib {

struct TestOutcome {
  double statistic = 0.0;
  double threshold = 0.0;
  bool accept = false;
};

// Finite-support prediction/outcome source: prediction `value` occurs with
// probability `mass` and its outcome is 1 with probability `conditional`.
class SourceSpec {
 public:
  struct Atom {
    double value = 0.0;
    double mass = 0.0;
    double conditional = 0.0;
  };

  explicit SourceSpec(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool is_calibrated(double tolerance = 0.0) const noexcept;

  // The population itself as a mass-weighted sample with the conditional
  // outcome rates as targets; population-level measures evaluated on it are
  // exact, no sampling involved.
  WeightedSample population_sample() const;

  // Predictions 1/4 and 3/4, each with mass 1/2, calibrated.
  static SourceSpec calibrated_two_point();
  // n evenly spread prediction values, uniform masses, calibrated.
  static SourceSpec calibrated_grid(std::size_t n);
  // Always predicts 1/2 while outcomes are 1 with probability 1/2 + gamma.
  static SourceSpec constant_biased(double gamma);

 private:
  std::vector<Atom> atoms_;
};

// T independent (prediction, outcome) draws from the source, uniform weights.
WeightedSample draw_sample(const SourceSpec& source, std::size_t t_count,
                           std::uint64_t seed);

// Decision rule: accept calibration iff the averaged two-bin error of the
// sample is at most beta.  Requires binary targets.
TestOutcome calibration_test(const WeightedSample& sample, double beta);

// Default acceptance threshold 1/T.
double default_threshold(std::size_t t_count);

struct AcceptanceEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Fraction of `trials` fresh T-samples from the source that the test accepts,
// with the binomial standard error.
AcceptanceEstimate acceptance_probability(const SourceSpec& source,
                                          std::size_t t_count, double beta,
                                          std::size_t trials,
                                          std::uint64_t seed);

struct SweepRow {
  std::size_t t_count = 0;
  double gamma = 0.0;
  double beta = 0.0;
  double acc_calibrated = 0.0;
  double acc_miscalibrated = 0.0;
  double gap = 0.0;
  double std_error = 0.0;
};

// Acceptance-gap table over the (T, gamma) grid: for each cell, acceptance on
// the calibrated source versus on family(gamma), both at the default
// threshold 1/T.  Row order is the cross product, T outermost.
std::vector<SweepRow> validity_sweep(
    const SourceSpec& calibrated,
    const std::function<SourceSpec(double)>& family,
    std::span<const double> gammas, std::span<const std::size_t> t_grid,
    std::size_t trials, std::uint64_t seed);

// CSV with header T,gamma,beta,acc_calibrated,acc_miscalibrated,gap,stderr.
void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);

}  // namespace calib
