#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "calib/sample.hpp"

namespace calib {

enum class Method { kExact, kMonteCarlo };

// A named measure value together with how it was obtained.  Exact reports
// carry no standard error; Monte Carlo reports carry the trial count and the
// standard error of the mean.
struct MeasureReport {
  std::string name;
  double value = 0.0;
  Method method = Method::kExact;
  std::optional<std::size_t> trials;
  std::optional<double> std_error;
};

// Any calibration measure evaluated on a weighted sample.
using MeasureFn = std::function<double(const WeightedSample&)>;

inline const char* method_name(Method m) {
  return m == Method::kExact ? "exact" : "monte_carlo";
}

}  // namespace calib
