#include "calib/tester.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "calib/error.hpp"
#include "calib/io.hpp"
#include "calib/rng.hpp"
#include "calib/two_bin.hpp"

namespace calib {

SourceSpec::SourceSpec(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw BadSourceError("source has no atoms");
  double mass = 0.0;
  for (const Atom& a : atoms_) {
    if (!(a.value >= 0.0 && a.value <= 1.0))
      throw BadSourceError("prediction value outside [0, 1]");
    if (!(a.conditional >= 0.0 && a.conditional <= 1.0))
      throw BadSourceError("conditional outcome rate outside [0, 1]");
    if (!(a.mass >= 0.0)) throw BadSourceError("negative mass");
    mass += a.mass;
  }
  if (std::abs(mass - 1.0) > 1e-9)
    throw BadSourceError("masses sum to " + format_double(mass) +
                         ", expected 1");
  for (Atom& a : atoms_) a.mass /= mass;  // remove the residual drift

  // One atom per prediction value keeps the per-atom conditional rates (and
  // thus is_calibrated and the population sample) unambiguous.
  std::vector<double> values;
  values.reserve(atoms_.size());
  for (const Atom& a : atoms_) values.push_back(a.value);
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end())
    throw BadSourceError("duplicate prediction value in source");
}

bool SourceSpec::is_calibrated(double tolerance) const noexcept {
  for (const Atom& a : atoms_)
    if (std::abs(a.value - a.conditional) > tolerance) return false;
  return true;
}

WeightedSample SourceSpec::population_sample() const {
  std::vector<SamplePoint> points;
  points.reserve(atoms_.size());
  for (const Atom& a : atoms_)
    points.push_back({a.value, a.conditional, a.mass});
  return WeightedSample::from_points(std::move(points));
}

SourceSpec SourceSpec::calibrated_two_point() {
  return SourceSpec({{0.25, 0.5, 0.25}, {0.75, 0.5, 0.75}});
}

SourceSpec SourceSpec::calibrated_grid(std::size_t n) {
  if (n < 1) throw BadSourceError("grid needs at least one point");
  std::vector<Atom> atoms(n);
  const double mass = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = (2.0 * static_cast<double>(i) + 1.0) /
                     (2.0 * static_cast<double>(n));
    atoms[i] = {v, mass, v};
  }
  return SourceSpec(std::move(atoms));
}

SourceSpec SourceSpec::constant_biased(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 0.5))
    throw BadSourceError("bias must lie in [0, 1/2]");
  return SourceSpec({{0.5, 1.0, 0.5 + gamma}});
}

WeightedSample draw_sample(const SourceSpec& source, std::size_t t_count,
                           std::uint64_t seed) {
  if (t_count == 0) throw EmptySampleError("requested an empty sample");
  Rng rng(seed);
  const auto& atoms = source.atoms();
  std::vector<double> predictions(t_count), outcomes(t_count);
  for (std::size_t t = 0; t < t_count; ++t) {
    const double u = rng.uniform01();
    double cumulative = 0.0;
    std::size_t pick = atoms.size() - 1;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      cumulative += atoms[j].mass;
      if (u < cumulative) {
        pick = j;
        break;
      }
    }
    predictions[t] = atoms[pick].value;
    outcomes[t] = static_cast<double>(rng.bernoulli(atoms[pick].conditional));
  }
  return WeightedSample::from_vectors(predictions, outcomes);
}

TestOutcome calibration_test(const WeightedSample& sample, double beta) {
  if (!(beta >= 0.0)) throw BadArgumentError("threshold must be nonnegative");
  if (!sample.has_binary_targets()) throw NonBinaryTargetsError();
  const double statistic = atb(sample);
  return {statistic, beta, statistic <= beta};
}

double default_threshold(std::size_t t_count) {
  if (t_count == 0) throw EmptySampleError("threshold needs a sample size");
  return 1.0 / static_cast<double>(t_count);
}

AcceptanceEstimate acceptance_probability(const SourceSpec& source,
                                          std::size_t t_count, double beta,
                                          std::size_t trials,
                                          std::uint64_t seed) {
  if (trials < 1) throw BadArgumentError("need at least one trial");
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const WeightedSample sample =
        draw_sample(source, t_count, derive_seed(seed, i));
    if (calibration_test(sample, beta).accept) ++accepted;
  }
  const double n = static_cast<double>(trials);
  const double estimate = static_cast<double>(accepted) / n;
  return {estimate, std::sqrt(estimate * (1.0 - estimate) / n)};
}

std::vector<SweepRow> validity_sweep(
    const SourceSpec& calibrated,
    const std::function<SourceSpec(double)>& family,
    std::span<const double> gammas, std::span<const std::size_t> t_grid,
    std::size_t trials, std::uint64_t seed) {
  std::vector<SweepRow> rows;
  rows.reserve(gammas.size() * t_grid.size());
  std::uint64_t cell = 0;
  for (const std::size_t t_count : t_grid) {
    const double beta = default_threshold(t_count);
    for (const double gamma : gammas) {
      const AcceptanceEstimate cal = acceptance_probability(
          calibrated, t_count, beta, trials, derive_seed(seed, 2 * cell));
      const AcceptanceEstimate mis = acceptance_probability(
          family(gamma), t_count, beta, trials, derive_seed(seed, 2 * cell + 1));
      rows.push_back({t_count, gamma, beta, cal.estimate, mis.estimate,
                      cal.estimate - mis.estimate,
                      std::sqrt(cal.std_error * cal.std_error +
                                mis.std_error * mis.std_error)});
      ++cell;
    }
  }
  return rows;
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
  out << "T,gamma,beta,acc_calibrated,acc_miscalibrated,gap,stderr\n";
  for (const SweepRow& r : rows)
    out << r.t_count << ',' << format_double(r.gamma) << ','
        << format_double(r.beta) << ',' << format_double(r.acc_calibrated)
        << ',' << format_double(r.acc_miscalibrated) << ','
        << format_double(r.gap) << ',' << format_double(r.std_error) << '\n';
}

}  // namespace calib
