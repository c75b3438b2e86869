#include "calib/classic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "calib/error.hpp"
#include "calib/io.hpp"
#include "calib/two_bin.hpp"

namespace calib {

IntervalPartition::IntervalPartition(std::vector<double> boundaries)
    : boundaries_(std::move(boundaries)) {
  if (boundaries_.size() < 2)
    throw BadArgumentError("interval partition needs at least two boundaries");
  if (boundaries_.front() != 0.0 || boundaries_.back() != 1.0)
    throw BadArgumentError("interval boundaries must start at 0 and end at 1");
  for (std::size_t i = 1; i < boundaries_.size(); ++i)
    if (!(boundaries_[i - 1] < boundaries_[i]))
      throw BadArgumentError("interval boundaries must be strictly increasing");
}

std::size_t IntervalPartition::bin_of(double value) const {
  if (!(value >= 0.0 && value <= 1.0))
    throw BadArgumentError("value outside [0, 1]");
  const auto it =
      std::upper_bound(boundaries_.begin(), boundaries_.end(), value);
  const std::size_t idx = static_cast<std::size_t>(it - boundaries_.begin());
  return std::min(idx - 1, bin_count() - 1);  // fold value == 1 into last bin
}

IntervalPartition uniform_intervals(std::size_t k) {
  if (k < 1) throw BadBinCountError("interval count must be at least 1");
  std::vector<double> boundaries(k + 1);
  for (std::size_t i = 0; i <= k; ++i)
    boundaries[i] = static_cast<double>(i) / static_cast<double>(k);
  boundaries[k] = 1.0;
  return IntervalPartition(std::move(boundaries));
}

namespace {

double power_term(double group_weight, double residual, double alpha) {
  // group_weight * |residual / group_weight| ^ alpha, guarding empty groups.
  if (group_weight <= 0.0) return 0.0;
  const double bias = std::abs(residual / group_weight);
  if (alpha == 1.0) return group_weight * bias;
  if (alpha == 2.0) return group_weight * bias * bias;
  return group_weight * std::pow(bias, alpha);
}

}  // namespace

double ece(const WeightedSample& sample, double alpha) {
  if (!(alpha >= 1.0)) throw BadAlphaError(alpha);
  const SortedSweep sweep = build_sweep(sample);
  const double inv_w = 1.0 / sweep.total_weight;
  double total = 0.0;
  for (std::size_t i = 0; i < sweep.distinct_count(); ++i)
    total += power_term(sweep.weight_mass[i] * inv_w,
                        sweep.residual_mass[i] * inv_w, alpha);
  return total;
}

double binned_ece(const WeightedSample& sample,
                  const IntervalPartition& partition, double alpha) {
  if (!(alpha >= 1.0)) throw BadAlphaError(alpha);
  const double inv_w = 1.0 / sample.total_weight();
  std::vector<double> bin_weight(partition.bin_count(), 0.0);
  std::vector<double> bin_residual(partition.bin_count(), 0.0);
  for (const SamplePoint& p : sample.points()) {
    const std::size_t b = partition.bin_of(p.prediction);
    bin_weight[b] += p.weight;
    bin_residual[b] += p.weight * (p.prediction - p.target);
  }
  double total = 0.0;
  for (std::size_t b = 0; b < partition.bin_count(); ++b)
    total += power_term(bin_weight[b] * inv_w, bin_residual[b] * inv_w, alpha);
  return total;
}

namespace {

struct Point {
  double x;
  double y;
};

// Indices [lo, hi] of the maximal y values of a concave breakpoint list.
// Plateaus are produced by exact copies, so exact equality is the right test.
std::pair<std::size_t, std::size_t> argmax_range(
    const std::vector<Point>& f) {
  std::size_t peak = 0;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i].y > f[peak].y) peak = i;
  std::size_t lo = peak, hi = peak;
  while (lo > 0 && f[lo - 1].y == f[peak].y) --lo;
  while (hi + 1 < f.size() && f[hi + 1].y == f[peak].y) ++hi;
  return {lo, hi};
}

double eval_at(const std::vector<Point>& f, double x) {
  if (x <= f.front().x) return f.front().y;
  if (x >= f.back().x) return f.back().y;
  const auto it = std::upper_bound(
      f.begin(), f.end(), x,
      [](double value, const Point& p) { return value < p.x; });
  const Point& b = *it;
  const Point& a = *(it - 1);
  const double t = (x - a.x) / (b.x - a.x);
  return a.y + t * (b.y - a.y);
}

// Restricts the breakpoint list to [lo, hi], interpolating new endpoints.
std::vector<Point> clip(const std::vector<Point>& f, double lo, double hi) {
  std::vector<Point> out;
  out.reserve(f.size() + 2);
  out.push_back({lo, eval_at(f, lo)});
  for (const Point& p : f)
    if (p.x > lo && p.x < hi && p.x > out.back().x) out.push_back(p);
  out.push_back({hi, eval_at(f, hi)});
  return out;
}

}  // namespace

ChainLpResult solve_chain_lp(std::span<const double> coeffs,
                             std::span<const double> gaps) {
  const std::size_t m = coeffs.size();
  if (m == 0) throw BadArgumentError("chain program needs at least one term");
  if (gaps.size() + 1 != m)
    throw BadArgumentError("need exactly one gap between consecutive terms");
  for (const double d : gaps)
    if (!(d >= 0.0)) throw BadArgumentError("gaps must be nonnegative");

  // Value function after fixing w[i]: best achievable sum of the first i
  // terms.  Concave piecewise linear on [-1, 1] throughout.
  std::vector<Point> f = {{-1.0, -coeffs[0]}, {1.0, coeffs[0]}};
  if (coeffs[0] == 0.0) f = {{-1.0, 0.0}, {1.0, 0.0}};

  std::vector<std::pair<double, double>> plateaus;  // argmax interval per step
  plateaus.reserve(m > 0 ? m - 1 : 0);

  for (std::size_t i = 1; i < m; ++i) {
    const auto [lo, hi] = argmax_range(f);
    const double a = f[lo].x;
    const double b = f[hi].x;
    const double peak = f[lo].y;
    plateaus.emplace_back(a, b);

    // max over |w' - w| <= d of f(w'): shift the rising part left by d, the
    // falling part right by d, and bridge with a flat top.
    const double d = gaps[i - 1];
    std::vector<Point> g;
    g.reserve(f.size() + 2);
    for (std::size_t k = 0; k < lo; ++k) g.push_back({f[k].x - d, f[k].y});
    g.push_back({a - d, peak});
    if (b + d > a - d) g.push_back({b + d, peak});
    for (std::size_t k = hi + 1; k < f.size(); ++k)
      g.push_back({f[k].x + d, f[k].y});

    f = clip(g, -1.0, 1.0);
    for (Point& p : f) p.y += coeffs[i] * p.x;
  }

  const auto [lo, hi] = argmax_range(f);
  ChainLpResult result;
  result.value = f[lo].y;
  result.solution.resize(m);
  result.solution[m - 1] = f[lo].x;  // leftmost maximizer, deterministically
  for (std::size_t i = m - 1; i-- > 0;) {
    const auto [pa, pb] = plateaus[i];
    const double next = result.solution[i + 1];
    const double nearest = std::clamp(next, pa, pb);
    result.solution[i] =
        std::clamp(nearest, next - gaps[i], next + gaps[i]);
  }
  return result;
}

SmcalResult smcal(const WeightedSample& sample) {
  const SortedSweep sweep = build_sweep(sample);
  const double inv_w = 1.0 / sweep.total_weight;
  const std::size_t m = sweep.distinct_count();

  std::vector<double> coeffs(m);
  for (std::size_t i = 0; i < m; ++i)
    coeffs[i] = sweep.residual_mass[i] * inv_w;
  std::vector<double> gaps(m > 0 ? m - 1 : 0);
  for (std::size_t i = 0; i + 1 < m; ++i)
    gaps[i] = sweep.values[i + 1] - sweep.values[i];

  ChainLpResult lp = solve_chain_lp(coeffs, gaps);
  return {lp.value, {sweep.values, std::move(lp.solution)}};
}

DistcalBounds distcal_bounds(const WeightedSample& sample) {
  const double l1 = l1_atb(sample);
  const double sm = smcal(sample).value;
  const double lower = std::max(l1 / 3.0, sm / 2.0);
  const double upper = std::min(3.0 * l1, 2.0 * sm);
  if (lower > upper + 1e-10)
    throw InconsistentError("distance bounds crossed: lower " +
                            format_double(lower) + " > upper " +
                            format_double(upper));
  return {std::min(lower, upper), upper};  // only float noise can cross
}

std::vector<double> average_predictor(const std::vector<double>& predictions) {
  if (predictions.empty()) throw EmptySampleError("no predictions given");
  double mean = 0.0;
  for (const double r : predictions) mean += r;
  mean /= static_cast<double>(predictions.size());
  return std::vector<double>(predictions.size(), mean);
}

void write_witness_csv(const LipschitzWitness& witness, std::ostream& out) {
  out << "v,w\n";
  for (std::size_t i = 0; i < witness.values.size(); ++i)
    out << format_double(witness.values[i]) << ','
        << format_double(witness.weights[i]) << '\n';
}

}  // namespace calib
