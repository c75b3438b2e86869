#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace calib {

struct SamplePoint {
  double prediction = 0.0;
  double target = 0.0;
  double weight = 1.0;
};

// Finite weighted list of (prediction, target, weight) records.  Predictions
// and targets live in [0, 1]; targets may be fractional probabilities, with
// {0, 1} targets covering the realized-outcome case.  Weights are
// non-negative and sum to a positive total; a finite-support population is
// represented by using its point masses as weights.
class WeightedSample {
 public:
  // Uniform weights 1/T.
  static WeightedSample from_pairs(
      const std::vector<std::pair<double, double>>& prediction_target);
  static WeightedSample from_vectors(const std::vector<double>& predictions,
                                     const std::vector<double>& targets);
  // Explicit weights.
  static WeightedSample from_points(std::vector<SamplePoint> points);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<SamplePoint>& points() const noexcept { return points_; }
  const SamplePoint& operator[](std::size_t i) const { return points_[i]; }
  double total_weight() const noexcept { return total_weight_; }

  std::vector<double> predictions() const;
  std::vector<double> targets() const;
  bool has_binary_targets() const noexcept;

 private:
  explicit WeightedSample(std::vector<SamplePoint> points);

  std::vector<SamplePoint> points_;
  double total_weight_ = 0.0;
};

// Predictions sorted ascending with duplicates merged, plus per-value
// weighted residual masses and their running prefix sums.  This is the shared
// substrate for the threshold-sweep measures: residual_mass[i] is
// sum of w_t * (r_t - target_t) over entries with prediction values[i].
struct SortedSweep {
  std::vector<double> values;           // v_1 < ... < v_m
  std::vector<double> residual_mass;    // c_i
  std::vector<double> weight_mass;      // total weight at v_i
  std::vector<double> prefix_residual;  // S_i = c_1 + ... + c_i
  double total_weight = 0.0;
  std::size_t entry_count = 0;          // T before merging

  std::size_t distinct_count() const noexcept { return values.size(); }
  double total_residual() const noexcept {
    return prefix_residual.empty() ? 0.0 : prefix_residual.back();
  }
};

// Sorting is by the full (prediction, target, weight) record so the result is
// invariant under permutations of the input, bit for bit.
SortedSweep build_sweep(const WeightedSample& sample);

// Per-index Bernoulli parameters for the true outcome process.
class GroundTruth {
 public:
  explicit GroundTruth(std::vector<double> probabilities);

  std::size_t size() const noexcept { return probabilities_.size(); }
  const std::vector<double>& probabilities() const noexcept {
    return probabilities_;
  }
  double operator[](std::size_t i) const { return probabilities_[i]; }

 private:
  std::vector<double> probabilities_;
};

// Largest T for which exhaustive state enumeration is supported.
inline constexpr std::size_t kEnumerationCap = 20;

// One independent draw of binary outcomes, as doubles in {0.0, 1.0}.
// Identical (truth, seed) pairs produce identical draws.
std::vector<double> sample_states(const GroundTruth& truth, std::uint64_t seed);

// Streams every positive-probability realization of the outcome vector in
// plain binary counting order (index 0 flips fastest).  Zero-probability
// realizations are skipped, so the emitted probabilities always sum to 1.
//
//   StateEnumerator it(truth);
//   while (it.next()) consume(it.states(), it.probability());
class StateEnumerator {
 public:
  explicit StateEnumerator(const GroundTruth& truth,
                           std::size_t cap = kEnumerationCap);

  // Advances to the next realization; false once exhausted.  The spans
  // returned by states() stay valid until the next call.
  bool next();
  const std::vector<double>& states() const noexcept { return states_; }
  double probability() const noexcept { return probability_; }

 private:
  std::vector<double> probabilities_;
  std::vector<double> states_;
  double probability_ = 0.0;
  std::uint64_t index_ = 0;
  std::uint64_t end_ = 0;
};

// Reads a two-column CSV with mandatory header "prediction,target".
// Malformed or out-of-range rows abort with the 1-based line number.
WeightedSample read_sample_csv(std::istream& in);
WeightedSample read_sample_csv_file(const std::string& path);

}  // namespace calib
