#include "calib/two_bin.hpp"

#include <cmath>
#include <cstddef>
#include <ostream>

#include "calib/io.hpp"

namespace calib {

namespace {

// Walks the m+1 threshold segments cut by the distinct prediction values and
// hands each nonempty one to `visit` as (q_lo, q_hi, below, above), where
// below/above are the residual sums normalized to total weight 1 (so squaring
// them yields the two-bin integrand directly).
template <typename Visitor>
void for_each_segment(const SortedSweep& sweep, Visitor&& visit) {
  const std::size_t m = sweep.distinct_count();
  const double inv_w = 1.0 / sweep.total_weight;

  // Suffix residual sums: suffix[j] = c_{j+1} + ... + c_m.
  std::vector<double> suffix(m + 1, 0.0);
  for (std::size_t j = m; j-- > 0;)
    suffix[j] = suffix[j + 1] + sweep.residual_mass[j];

  double prefix = 0.0;  // c_1 + ... + c_j
  for (std::size_t j = 0; j <= m; ++j) {
    if (j > 0) prefix += sweep.residual_mass[j - 1];
    const double lo = (j == 0) ? 0.0 : sweep.values[j - 1];
    const double hi = (j == m) ? 1.0 : sweep.values[j];
    if (hi > lo) visit(lo, hi, prefix * inv_w, suffix[j] * inv_w);
  }
}

}  // namespace

double atb(const SortedSweep& sweep) {
  double total = 0.0;
  for_each_segment(sweep, [&](double lo, double hi, double below, double above) {
    total += (hi - lo) * (below * below + above * above);
  });
  return total;
}

double atb(const WeightedSample& sample) { return atb(build_sweep(sample)); }

double l1_atb(const SortedSweep& sweep) {
  double total = 0.0;
  for_each_segment(sweep, [&](double lo, double hi, double below, double above) {
    total += (hi - lo) * (std::abs(below) + std::abs(above));
  });
  return total;
}

double l1_atb(const WeightedSample& sample) {
  return l1_atb(build_sweep(sample));
}

SegmentProfile segment_profile(const SortedSweep& sweep) {
  // Mean weight 1: a uniformly weighted sample reports the plain residual
  // sums sum (r_t - y_t) over each bin.
  const double scale = static_cast<double>(sweep.entry_count);
  SegmentProfile profile;
  for_each_segment(sweep, [&](double lo, double hi, double below, double above) {
    profile.segments.push_back({lo, hi, below * scale, above * scale});
  });
  return profile;
}

SegmentProfile segment_profile(const WeightedSample& sample) {
  return segment_profile(build_sweep(sample));
}

void write_profile_csv(const SegmentProfile& profile, std::ostream& out) {
  out << "q_lo,q_hi,below_sum,above_sum\n";
  for (const Segment& s : profile.segments)
    out << format_double(s.q_lo) << ',' << format_double(s.q_hi) << ','
        << format_double(s.below_sum) << ',' << format_double(s.above_sum)
        << '\n';
}

}  // namespace calib
