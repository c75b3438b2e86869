#pragma once

#include <iosfwd>
#include <vector>

#include "calib/sample.hpp"

namespace calib {

// One maximal interval of thresholds q over which the below/above split of
// the sample is constant.  below_sum and above_sum are the residual sums
// sum_{r_t < q} (r_t - target_t) and sum_{r_t >= q} (r_t - target_t), with
// weights rescaled to mean 1 so that uniformly weighted samples report plain
// counts-scale sums.
struct Segment {
  double q_lo = 0.0;
  double q_hi = 0.0;
  double below_sum = 0.0;
  double above_sum = 0.0;
};

// Piecewise-constant description of the threshold sweep.  Segments tile
// [0, 1] left to right; the threshold q ranges over (q_lo, q_hi] within each
// segment (the first also covers q = 0).  Zero-length pieces at the ends are
// dropped.
struct SegmentProfile {
  std::vector<Segment> segments;
};

// Averaged two-bin calibration error: the average over a uniformly random
// threshold q of
//   (1/T^2) * ( (sum_{r_t < q} (r_t - y_t))^2 + (sum_{r_t >= q} (r_t - y_t))^2 ),
// computed exactly as a finite sum over the segment profile.  Always lands in
// [0, 2].  Runs in O(T log T).
double atb(const WeightedSample& sample);
double atb(const SortedSweep& sweep);

// The absolute-value variant: average over q of
//   (1/T) * ( |sum below| + |sum above| ).
double l1_atb(const WeightedSample& sample);
double l1_atb(const SortedSweep& sweep);

SegmentProfile segment_profile(const WeightedSample& sample);
SegmentProfile segment_profile(const SortedSweep& sweep);

// Plot-ready CSV with header q_lo,q_hi,below_sum,above_sum.
void write_profile_csv(const SegmentProfile& profile, std::ostream& out);

}  // namespace calib
