#include "calib/sample.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <string_view>
#include <tuple>

#include "calib/error.hpp"
#include "calib/rng.hpp"

namespace calib {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

void validate_points(const std::vector<SamplePoint>& points) {
  if (points.empty()) throw EmptySampleError();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SamplePoint& p = points[i];
    if (!in_unit_interval(p.prediction))
      throw OutOfRangeError(i, "prediction outside [0, 1]");
    if (!in_unit_interval(p.target))
      throw OutOfRangeError(i, "target outside [0, 1]");
    if (!(p.weight >= 0.0))  // also rejects NaN
      throw OutOfRangeError(i, "negative weight");
  }
}

}  // namespace

WeightedSample::WeightedSample(std::vector<SamplePoint> points)
    : points_(std::move(points)) {
  validate_points(points_);
  for (const SamplePoint& p : points_) total_weight_ += p.weight;
  if (!(total_weight_ > 0.0))
    throw EmptySampleError("total weight is not positive");
}

WeightedSample WeightedSample::from_pairs(
    const std::vector<std::pair<double, double>>& prediction_target) {
  if (prediction_target.empty()) throw EmptySampleError();
  const double w = 1.0 / static_cast<double>(prediction_target.size());
  std::vector<SamplePoint> points;
  points.reserve(prediction_target.size());
  for (const auto& [r, y] : prediction_target) points.push_back({r, y, w});
  return WeightedSample(std::move(points));
}

WeightedSample WeightedSample::from_vectors(
    const std::vector<double>& predictions,
    const std::vector<double>& targets) {
  if (predictions.size() != targets.size())
    throw LengthMismatchError(predictions.size(), targets.size());
  if (predictions.empty()) throw EmptySampleError();
  const double w = 1.0 / static_cast<double>(predictions.size());
  std::vector<SamplePoint> points;
  points.reserve(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i)
    points.push_back({predictions[i], targets[i], w});
  return WeightedSample(std::move(points));
}

WeightedSample WeightedSample::from_points(std::vector<SamplePoint> points) {
  return WeightedSample(std::move(points));
}

std::vector<double> WeightedSample::predictions() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const SamplePoint& p : points_) out.push_back(p.prediction);
  return out;
}

std::vector<double> WeightedSample::targets() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const SamplePoint& p : points_) out.push_back(p.target);
  return out;
}

bool WeightedSample::has_binary_targets() const noexcept {
  for (const SamplePoint& p : points_)
    if (p.target != 0.0 && p.target != 1.0) return false;
  return true;
}

SortedSweep build_sweep(const WeightedSample& sample) {
  std::vector<SamplePoint> sorted = sample.points();
  std::sort(sorted.begin(), sorted.end(),
            [](const SamplePoint& a, const SamplePoint& b) {
              return std::tie(a.prediction, a.target, a.weight) <
                     std::tie(b.prediction, b.target, b.weight);
            });

  SortedSweep sweep;
  sweep.total_weight = sample.total_weight();
  sweep.entry_count = sample.size();
  for (const SamplePoint& p : sorted) {
    const double residual = p.weight * (p.prediction - p.target);
    if (!sweep.values.empty() && sweep.values.back() == p.prediction) {
      sweep.residual_mass.back() += residual;
      sweep.weight_mass.back() += p.weight;
    } else {
      sweep.values.push_back(p.prediction);
      sweep.residual_mass.push_back(residual);
      sweep.weight_mass.push_back(p.weight);
    }
  }
  sweep.prefix_residual.resize(sweep.residual_mass.size());
  double running = 0.0;
  for (std::size_t i = 0; i < sweep.residual_mass.size(); ++i) {
    running += sweep.residual_mass[i];
    sweep.prefix_residual[i] = running;
  }
  return sweep;
}

GroundTruth::GroundTruth(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  if (probabilities_.empty()) throw EmptySampleError("no probabilities given");
  for (std::size_t i = 0; i < probabilities_.size(); ++i)
    if (!in_unit_interval(probabilities_[i]))
      throw OutOfRangeError(i, "probability outside [0, 1]");
}

std::vector<double> sample_states(const GroundTruth& truth,
                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> states(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i)
    states[i] = static_cast<double>(rng.bernoulli(truth[i]));
  return states;
}

StateEnumerator::StateEnumerator(const GroundTruth& truth, std::size_t cap)
    : probabilities_(truth.probabilities()), states_(truth.size(), 0.0) {
  if (truth.size() > cap) throw TooLargeError(truth.size(), cap);
  end_ = std::uint64_t{1} << truth.size();
}

bool StateEnumerator::next() {
  while (index_ < end_) {
    const std::uint64_t bits = index_++;
    double prob = 1.0;
    for (std::size_t t = 0; t < probabilities_.size(); ++t) {
      const bool one = (bits >> t) & 1u;
      states_[t] = one ? 1.0 : 0.0;
      prob *= one ? probabilities_[t] : 1.0 - probabilities_[t];
    }
    if (prob > 0.0) {
      probability_ = prob;
      return true;
    }
  }
  return false;
}

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  return s;
}

double parse_field(std::string_view field, std::size_t line,
                   const char* what) {
  field = strip(field);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError(line, std::string("cannot parse ") + what + " '" +
                               std::string(field) + "'");
  return value;
}

}  // namespace

WeightedSample read_sample_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  if (strip(line) != "prediction,target")
    throw ParseError(1, "expected header 'prediction,target'");

  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view view = strip(line);
    const std::size_t comma = view.find(',');
    if (comma == std::string_view::npos ||
        view.find(',', comma + 1) != std::string_view::npos)
      throw ParseError(lineno, "expected exactly two comma-separated fields");
    const double prediction =
        parse_field(view.substr(0, comma), lineno, "prediction");
    const double target = parse_field(view.substr(comma + 1), lineno, "target");
    if (!(prediction >= 0.0 && prediction <= 1.0))
      throw ParseError(lineno, "prediction outside [0, 1]");
    if (!(target >= 0.0 && target <= 1.0))
      throw ParseError(lineno, "target outside [0, 1]");
    rows.emplace_back(prediction, target);
  }
  if (rows.empty()) throw EmptySampleError("CSV contains no data rows");
  return WeightedSample::from_pairs(rows);
}

WeightedSample read_sample_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadArgumentError("cannot open input file '" + path + "'");
  return read_sample_csv(in);
}

}  // namespace calib
