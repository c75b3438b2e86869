#include "calib/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "calib/error.hpp"
#include "calib/io.hpp"
#include "calib/rng.hpp"

namespace calib {

std::string ExpectedErrorReport::to_json() const {
  std::string out = "{\"value\":" + format_double(value) + ",\"method\":\"" +
                    method_name(method) + "\"";
  if (trials) out += ",\"trials\":" + std::to_string(*trials);
  if (std_error) out += ",\"stderr\":" + format_double(*std_error);
  out += "}";
  return out;
}

ExpectedErrorReport expected_error_bruteforce(
    const MeasureFn& measure, const std::vector<double>& predictions,
    const GroundTruth& truth) {
  if (predictions.size() != truth.size())
    throw LengthMismatchError(predictions.size(), truth.size());

  StateEnumerator states(truth);  // enforces the enumeration cap
  long double accumulated = 0.0L;
  while (states.next()) {
    const WeightedSample sample =
        WeightedSample::from_vectors(predictions, states.states());
    accumulated +=
        static_cast<long double>(states.probability()) * measure(sample);
  }
  return {static_cast<double>(accumulated), Method::kExact, std::nullopt,
          std::nullopt};
}

ExpectedErrorReport expected_error_mc(const MeasureFn& measure,
                                      const std::vector<double>& predictions,
                                      const GroundTruth& truth,
                                      std::size_t trials, std::uint64_t seed) {
  if (predictions.size() != truth.size())
    throw LengthMismatchError(predictions.size(), truth.size());
  if (trials < 1) throw BadArgumentError("need at least one trial");

  std::vector<double> values;
  values.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::vector<double> outcomes =
        sample_states(truth, derive_seed(seed, i));
    values.push_back(
        measure(WeightedSample::from_vectors(predictions, outcomes)));
  }

  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(trials);

  std::optional<double> std_error;
  if (trials > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    std_error = std::sqrt(ss / static_cast<double>(trials - 1)) /
                std::sqrt(static_cast<double>(trials));
  }
  return {mean, Method::kMonteCarlo, trials, std_error};
}

namespace {

// Shared frame for the two naive sweeps: distinct sorted values plus a
// callback evaluated once per nonempty threshold segment with a
// representative threshold.
template <typename Eval>
double naive_sweep(const WeightedSample& sample, Eval&& eval_segment) {
  std::vector<double> values = sample.predictions();
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  double total = 0.0;
  double lo = 0.0;
  for (std::size_t j = 0; j <= values.size(); ++j) {
    const double hi = (j == values.size()) ? 1.0 : values[j];
    // Any q in (lo, hi] splits the sample identically; use q = hi, except for
    // the final open piece where q = 1 lies strictly above every value.
    if (hi > lo) total += (hi - lo) * eval_segment(hi);
    lo = hi;
  }
  return total;
}

}  // namespace

double atb_naive(const WeightedSample& sample) {
  const double inv_w = 1.0 / sample.total_weight();
  return naive_sweep(sample, [&](double q) {
    double below = 0.0, above = 0.0;
    for (const SamplePoint& p : sample.points()) {
      const double residual = p.weight * (p.prediction - p.target);
      if (p.prediction < q)
        below += residual;
      else
        above += residual;
    }
    below *= inv_w;
    above *= inv_w;
    return below * below + above * above;
  });
}

double l1_atb_naive(const WeightedSample& sample) {
  const double inv_w = 1.0 / sample.total_weight();
  return naive_sweep(sample, [&](double q) {
    double below = 0.0, above = 0.0;
    for (const SamplePoint& p : sample.points()) {
      const double residual = p.weight * (p.prediction - p.target);
      if (p.prediction < q)
        below += residual;
      else
        above += residual;
    }
    return std::abs(below) * inv_w + std::abs(above) * inv_w;
  });
}

}  // namespace calib
