#include "calib/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "calib/classic.hpp"
#include "calib/error.hpp"
#include "calib/io.hpp"
#include "calib/oracle.hpp"
#include "calib/rng.hpp"
#include "calib/sample.hpp"
#include "calib/tester.hpp"
#include "calib/two_bin.hpp"
#include "calib/ubse.hpp"

namespace calib::cli {

namespace {

std::string quoted(const std::string& s) {
  return "\"" + json_escape(s) + "\"";
}

const char* bool_json(bool b) { return b ? "true" : "false"; }

bool is_csv(const RunConfig& config) {
  if (config.format == "csv") return true;
  if (config.format == "json") return false;
  throw BadArgumentError("format must be 'json' or 'csv', got '" +
                         config.format + "'");
}

void csv_preamble(const RunConfig& config, std::ostream& out,
                  const std::vector<std::pair<std::string, std::string>>&
                      extras = {}) {
  out << "# command=" << config.command << "\n";
  out << "# seed=" << config.seed << "\n";
  for (const auto& [key, value] : extras)
    out << "# " << key << '=' << value << "\n";
}

// ---------------------------------------------------------------------------
// measure

struct MeasureRow {
  MeasureReport report;
  std::optional<std::size_t> bins;
};

std::vector<MeasureRow> evaluate_measure(const std::string& name,
                                         const WeightedSample& sample,
                                         const RunConfig& config) {
  const auto exact = [](std::string n, double v) {
    return MeasureRow{{std::move(n), v, Method::kExact, {}, {}}, {}};
  };
  if (name == "atb") return {exact(name, atb(sample))};
  if (name == "l1_atb") return {exact(name, l1_atb(sample))};
  if (name == "ece") return {exact(name, ece(sample, config.alpha))};
  if (name == "binned_ece") {
    const std::size_t k = config.bins ? config.bins : 10;
    MeasureRow row = exact(
        name, binned_ece(sample, uniform_intervals(k), config.alpha));
    row.bins = k;
    return {row};
  }
  if (name == "quantile_l2_binece") {
    const std::size_t k =
        config.bins ? config.bins : default_quantile_bin_count(sample.size());
    MeasureRow row = exact(name, quantile_l2_binece(sample, k, config.seed));
    row.bins = k;
    return {row};
  }
  if (name == "smcal") return {exact(name, smcal(sample).value)};
  if (name == "distcal_bounds") {
    const DistcalBounds bounds = distcal_bounds(sample);
    return {exact("distcal_lower", bounds.lower),
            exact("distcal_upper", bounds.upper)};
  }
  throw BadMeasureError(name);
}

}  // namespace

const std::vector<std::string>& known_measure_names() {
  static const std::vector<std::string> names = {
      "atb",   "l1_atb", "ece",           "binned_ece",
      "quantile_l2_binece", "smcal", "distcal_bounds"};
  return names;
}

void cmd_measure(const RunConfig& config, std::ostream& out) {
  // Resolve and validate the measure list before touching the input.
  std::vector<std::string> names =
      config.measures.empty() ? known_measure_names() : config.measures;
  const auto& known = known_measure_names();
  for (const std::string& name : names)
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw BadMeasureError(name);
  if (config.input_path.empty())
    throw BadArgumentError("measure requires --input");

  const WeightedSample sample = read_sample_csv_file(config.input_path);
  std::vector<MeasureRow> rows;
  for (const std::string& name : names)
    for (MeasureRow& row : evaluate_measure(name, sample, config))
      rows.push_back(std::move(row));

  if (is_csv(config)) {
    csv_preamble(config, out,
                 {{"input", config.input_path},
                  {"alpha", format_double(config.alpha)}});
    out << "measure,value,method,bins\n";
    for (const MeasureRow& row : rows) {
      out << row.report.name << ',' << format_double(row.report.value) << ','
          << method_name(row.report.method) << ',';
      if (row.bins) out << *row.bins;
      out << '\n';
    }
    return;
  }
  out << "{\"command\":\"measure\",\"seed\":" << config.seed
      << ",\"input\":" << quoted(config.input_path)
      << ",\"alpha\":" << format_double(config.alpha)
      << ",\"sample_size\":" << sample.size() << ",\"reports\":[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const MeasureRow& row = rows[i];
    if (i) out << ',';
    out << "{\"measure\":" << quoted(row.report.name)
        << ",\"value\":" << format_double(row.report.value)
        << ",\"method\":\"" << method_name(row.report.method) << "\"";
    if (row.bins) out << ",\"bins\":" << *row.bins;
    out << '}';
  }
  out << "]}\n";
}

// ---------------------------------------------------------------------------
// table1

void cmd_table1(const RunConfig& config, std::ostream& out) {
  const std::vector<double> truth_preds = {0.25, 0.75};
  const GroundTruth truth(truth_preds);
  const std::vector<double> avg_preds = average_predictor(truth_preds);

  struct Row {
    std::string states;
    double prob;
    double smcal_avg, smcal_truth, atb_avg, atb_truth;
  };
  std::vector<Row> rows;
  StateEnumerator it(truth);
  while (it.next()) {
    const std::vector<double>& y = it.states();
    std::string states;
    for (const double v : y) states += (v == 1.0 ? '1' : '0');
    const WeightedSample at_avg = WeightedSample::from_vectors(avg_preds, y);
    const WeightedSample at_truth =
        WeightedSample::from_vectors(truth_preds, y);
    rows.push_back({states, it.probability(), smcal(at_avg).value,
                    smcal(at_truth).value, atb(at_avg), atb(at_truth)});
  }

  const auto expected = [&](const std::vector<double>& preds,
                            const MeasureFn& fn) {
    return expected_error_bruteforce(fn, preds, truth).value;
  };
  const MeasureFn smcal_fn = [](const WeightedSample& s) {
    return smcal(s).value;
  };
  const MeasureFn atb_fn = [](const WeightedSample& s) { return atb(s); };
  const double e_smcal_avg = expected(avg_preds, smcal_fn);
  const double e_smcal_truth = expected(truth_preds, smcal_fn);
  const double e_atb_avg = expected(avg_preds, atb_fn);
  const double e_atb_truth = expected(truth_preds, atb_fn);

  if (is_csv(config)) {
    csv_preamble(config, out);
    out << "states,prob,smcal_avg,smcal_truth,atb_avg,atb_truth\n";
    for (const Row& r : rows)
      out << r.states << ',' << format_double(r.prob) << ','
          << format_double(r.smcal_avg) << ',' << format_double(r.smcal_truth)
          << ',' << format_double(r.atb_avg) << ','
          << format_double(r.atb_truth) << '\n';
    out << "expected,1," << format_double(e_smcal_avg) << ','
        << format_double(e_smcal_truth) << ',' << format_double(e_atb_avg)
        << ',' << format_double(e_atb_truth) << '\n';
    return;
  }
  out << "{\"command\":\"table1\",\"seed\":" << config.seed
      << ",\"predictions\":[0.25,0.75],\"average\":[0.5,0.5],\"rows\":[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    if (i) out << ',';
    out << "{\"states\":" << quoted(r.states)
        << ",\"prob\":" << format_double(r.prob)
        << ",\"smcal_avg\":" << format_double(r.smcal_avg)
        << ",\"smcal_truth\":" << format_double(r.smcal_truth)
        << ",\"atb_avg\":" << format_double(r.atb_avg)
        << ",\"atb_truth\":" << format_double(r.atb_truth) << '}';
  }
  out << "],\"expected\":{\"smcal_avg\":" << format_double(e_smcal_avg)
      << ",\"smcal_truth\":" << format_double(e_smcal_truth)
      << ",\"atb_avg\":" << format_double(e_atb_avg)
      << ",\"atb_truth\":" << format_double(e_atb_truth) << "}}\n";
}

// ---------------------------------------------------------------------------
// truthfulness

namespace {

struct TruthfulnessCell {
  std::size_t cases = 0;
  double min_margin = std::numeric_limits<double>::infinity();
};

}  // namespace

void cmd_truthfulness(const RunConfig& config, std::ostream& out) {
  const std::size_t p_draws = config.trials ? config.trials : 20;
  constexpr std::size_t kLength = 8;
  const std::vector<std::string> measure_names = {
      "atb", "quantile_l2_binece", "ece", "binned_ece", "smcal"};
  const std::vector<std::string> families = {"average", "perturbation",
                                             "constant"};
  const std::vector<double> constants = {0.0, 0.25, 0.5, 0.75, 1.0};
  constexpr std::size_t kPerturbations = 10;

  // rows[measure][family]
  std::vector<std::vector<TruthfulnessCell>> cells(
      measure_names.size(), std::vector<TruthfulnessCell>(families.size()));

  for (std::size_t pi = 0; pi < p_draws; ++pi) {
    const std::uint64_t seed_p = derive_seed(config.seed, pi);
    Rng rng(seed_p);
    std::vector<double> p(kLength);
    for (double& v : p) v = rng.uniform01();
    const GroundTruth truth(p);

    std::vector<MeasureFn> fns;
    for (const std::string& name : measure_names) {
      if (name == "atb")
        fns.push_back([](const WeightedSample& s) { return atb(s); });
      else if (name == "quantile_l2_binece")
        fns.push_back([seed_p](const WeightedSample& s) {
          return quantile_l2_binece(s, seed_p);
        });
      else if (name == "ece")
        fns.push_back([](const WeightedSample& s) { return ece(s, 1.0); });
      else if (name == "binned_ece")
        fns.push_back([](const WeightedSample& s) {
          return binned_ece(s, uniform_intervals(4), 1.0);
        });
      else
        fns.push_back(
            [](const WeightedSample& s) { return smcal(s).value; });
    }

    std::vector<double> truth_value(fns.size());
    for (std::size_t mi = 0; mi < fns.size(); ++mi)
      truth_value[mi] = expected_error_bruteforce(fns[mi], p, truth).value;

    // challengers per family
    std::vector<std::vector<std::vector<double>>> challengers(families.size());
    challengers[0].push_back(average_predictor(p));
    for (std::size_t j = 0; j < kPerturbations; ++j) {
      const double scale = (j % 2 == 0) ? 0.05 : 0.2;
      std::vector<double> r = p;
      for (double& v : r)
        v = std::clamp(v + rng.uniform(-scale, scale), 0.0, 1.0);
      challengers[1].push_back(std::move(r));
    }
    for (const double c : constants)
      challengers[2].push_back(std::vector<double>(kLength, c));

    for (std::size_t fi = 0; fi < families.size(); ++fi)
      for (const std::vector<double>& r : challengers[fi])
        for (std::size_t mi = 0; mi < fns.size(); ++mi) {
          const double value =
              expected_error_bruteforce(fns[mi], r, truth).value;
          TruthfulnessCell& cell = cells[mi][fi];
          ++cell.cases;
          cell.min_margin = std::min(cell.min_margin, value - truth_value[mi]);
        }
  }

  constexpr double kTolerance = 1e-10;
  if (is_csv(config)) {
    csv_preamble(config, out,
                 {{"p_draws", std::to_string(p_draws)},
                  {"sequence_length", std::to_string(kLength)}});
    out << "measure,family,cases,min_margin,challenger_beats_truth\n";
    for (std::size_t mi = 0; mi < measure_names.size(); ++mi)
      for (std::size_t fi = 0; fi < families.size(); ++fi) {
        const TruthfulnessCell& cell = cells[mi][fi];
        out << measure_names[mi] << ',' << families[fi] << ',' << cell.cases
            << ',' << format_double(cell.min_margin) << ','
            << (cell.min_margin < -kTolerance ? 1 : 0) << '\n';
      }
    return;
  }
  out << "{\"command\":\"truthfulness\",\"seed\":" << config.seed
      << ",\"p_draws\":" << p_draws << ",\"sequence_length\":" << kLength
      << ",\"rows\":[";
  bool first = true;
  for (std::size_t mi = 0; mi < measure_names.size(); ++mi)
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
      const TruthfulnessCell& cell = cells[mi][fi];
      if (!first) out << ',';
      first = false;
      out << "{\"measure\":" << quoted(measure_names[mi])
          << ",\"family\":" << quoted(families[fi])
          << ",\"cases\":" << cell.cases
          << ",\"min_margin\":" << format_double(cell.min_margin)
          << ",\"challenger_beats_truth\":"
          << bool_json(cell.min_margin < -kTolerance) << '}';
    }
  out << "]}\n";
}

// ---------------------------------------------------------------------------
// scaling

namespace {

SourceSpec miscalibrated_two_point() {
  return SourceSpec({{0.25, 0.5, 0.6}, {0.75, 0.5, 0.4}});
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2]
               : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

void cmd_scaling(const RunConfig& config, std::ostream& out) {
  if (config.scaling_source != "calibrated" &&
      config.scaling_source != "miscalibrated")
    throw BadArgumentError("scaling source must be calibrated|miscalibrated");
  const SourceSpec source = config.scaling_source == "calibrated"
                                ? SourceSpec::calibrated_two_point()
                                : miscalibrated_two_point();

  const std::vector<std::size_t> t_grid =
      config.t_grid.empty() ? std::vector<std::size_t>{100, 1000, 10000}
                            : config.t_grid;
  const std::size_t trials = config.trials ? config.trials : 200;
  const double population = atb(source.population_sample());

  std::vector<double> medians;
  std::uint64_t counter = 0;
  for (const std::size_t t_count : t_grid) {
    std::vector<double> deviations;
    deviations.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i)
      deviations.push_back(std::abs(
          atb(draw_sample(source, t_count, derive_seed(config.seed, counter++))) -
          population));
    medians.push_back(median_of(std::move(deviations)));
  }

  std::vector<double> log_t, log_med;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    log_t.push_back(std::log(static_cast<double>(t_grid[i])));
    log_med.push_back(std::log(medians[i]));
  }
  const double slope = fit_slope(log_t, log_med);

  if (is_csv(config)) {
    csv_preamble(config, out,
                 {{"source", config.scaling_source},
                  {"trials", std::to_string(trials)},
                  {"population_atb", format_double(population)}});
    out << "T,median_abs_dev,fitted_slope\n";
    for (std::size_t i = 0; i < t_grid.size(); ++i)
      out << t_grid[i] << ',' << format_double(medians[i]) << ','
          << format_double(slope) << '\n';
    return;
  }
  out << "{\"command\":\"scaling\",\"seed\":" << config.seed
      << ",\"source\":" << quoted(config.scaling_source)
      << ",\"trials\":" << trials
      << ",\"population_atb\":" << format_double(population) << ",\"rows\":[";
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (i) out << ',';
    out << "{\"T\":" << t_grid[i]
        << ",\"median_abs_dev\":" << format_double(medians[i]) << '}';
  }
  out << "],\"slope\":" << format_double(slope) << "}\n";
}

// ---------------------------------------------------------------------------
// test

namespace {

double resolve_beta(const std::string& beta, std::size_t t_count) {
  if (beta == "auto") return default_threshold(t_count);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(beta.data(), beta.data() + beta.size(), value);
  if (ec != std::errc() || ptr != beta.data() + beta.size() || !(value >= 0.0))
    throw BadArgumentError("beta must be 'auto' or a nonnegative number, got '" +
                           beta + "'");
  return value;
}

}  // namespace

void cmd_test(const RunConfig& config, std::ostream& out) {
  if (!config.input_path.empty()) {
    const WeightedSample sample = read_sample_csv_file(config.input_path);
    const double beta = resolve_beta(config.beta, sample.size());
    const TestOutcome outcome = calibration_test(sample, beta);
    if (is_csv(config)) {
      csv_preamble(config, out, {{"input", config.input_path}});
      out << "T,beta,statistic,accept\n";
      out << sample.size() << ',' << format_double(outcome.threshold) << ','
          << format_double(outcome.statistic) << ','
          << (outcome.accept ? 1 : 0) << '\n';
      return;
    }
    out << "{\"command\":\"test\",\"seed\":" << config.seed
        << ",\"input\":" << quoted(config.input_path)
        << ",\"T\":" << sample.size()
        << ",\"beta\":" << format_double(outcome.threshold)
        << ",\"statistic\":" << format_double(outcome.statistic)
        << ",\"accept\":" << bool_json(outcome.accept) << "}\n";
    return;
  }

  // Sweep mode: calibrated two-point source against the constant-biased
  // family over the (T, gamma) grid.
  const std::vector<std::size_t> t_grid =
      config.t_grid.empty() ? std::vector<std::size_t>{50, 100, 200, 500, 1000}
                            : config.t_grid;
  const std::vector<double> gammas =
      config.gammas.empty() ? std::vector<double>{0.0, 0.05, 0.1, 0.2, 0.3}
                            : config.gammas;
  const std::size_t trials = config.trials ? config.trials : 500;
  const std::vector<SweepRow> rows = validity_sweep(
      SourceSpec::calibrated_two_point(),
      [](double gamma) { return SourceSpec::constant_biased(gamma); }, gammas,
      t_grid, trials, config.seed);

  if (is_csv(config)) {
    csv_preamble(config, out, {{"trials", std::to_string(trials)}});
    std::ostringstream body;
    write_sweep_csv(rows, body);
    out << body.str();
    return;
  }
  out << "{\"command\":\"test\",\"mode\":\"sweep\",\"seed\":" << config.seed
      << ",\"trials\":" << trials << ",\"rows\":[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    if (i) out << ',';
    out << "{\"T\":" << r.t_count << ",\"gamma\":" << format_double(r.gamma)
        << ",\"beta\":" << format_double(r.beta)
        << ",\"acc_calibrated\":" << format_double(r.acc_calibrated)
        << ",\"acc_miscalibrated\":" << format_double(r.acc_miscalibrated)
        << ",\"gap\":" << format_double(r.gap)
        << ",\"stderr\":" << format_double(r.std_error) << '}';
  }
  out << "]}\n";
}

// ---------------------------------------------------------------------------
// avg-dominance

void cmd_avg_dominance(const RunConfig& config, std::ostream& out) {
  const std::size_t trials = config.trials ? config.trials : 1000;
  struct Entry {
    std::string name;
    MeasureFn fn;
  };
  const std::vector<Entry> entries = {
      {"ece_l1", [](const WeightedSample& s) { return ece(s, 1.0); }},
      {"ece_l2", [](const WeightedSample& s) { return ece(s, 2.0); }},
      {"binned_ece_k1",
       [](const WeightedSample& s) {
         return binned_ece(s, uniform_intervals(1), 1.0);
       }},
      {"binned_ece_k4",
       [](const WeightedSample& s) {
         return binned_ece(s, uniform_intervals(4), 1.0);
       }},
      {"binned_ece_k16",
       [](const WeightedSample& s) {
         return binned_ece(s, uniform_intervals(16), 1.0);
       }},
      {"smcal", [](const WeightedSample& s) { return smcal(s).value; }}};

  struct Tally {
    std::size_t violations = 0;
    double max_violation = 0.0;
    std::size_t strict_wins = 0;
  };
  std::vector<Tally> tallies(entries.size());
  constexpr double kTolerance = 1e-10;
  constexpr double kStrict = 1e-6;

  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(config.seed, i));
    const std::size_t t_count = 1 + rng.uniform_below(50);
    std::vector<double> r(t_count), y(t_count);
    for (double& v : r) v = rng.uniform01();
    const bool outcome_follows_prediction = (i % 2 == 0);
    for (std::size_t t = 0; t < t_count; ++t)
      y[t] = static_cast<double>(
          rng.bernoulli(outcome_follows_prediction ? r[t] : 0.5));
    const WeightedSample original = WeightedSample::from_vectors(r, y);
    const WeightedSample averaged =
        WeightedSample::from_vectors(average_predictor(r), y);
    for (std::size_t mi = 0; mi < entries.size(); ++mi) {
      const double at_original = entries[mi].fn(original);
      const double at_averaged = entries[mi].fn(averaged);
      Tally& tally = tallies[mi];
      if (at_averaged > at_original + kTolerance) ++tally.violations;
      tally.max_violation =
          std::max(tally.max_violation, at_averaged - at_original);
      if (at_original - at_averaged > kStrict) ++tally.strict_wins;
    }
  }

  if (is_csv(config)) {
    csv_preamble(config, out, {{"trials", std::to_string(trials)}});
    out << "measure,checks,violations,max_violation,strict_wins\n";
    for (std::size_t mi = 0; mi < entries.size(); ++mi)
      out << entries[mi].name << ',' << trials << ','
          << tallies[mi].violations << ','
          << format_double(std::max(tallies[mi].max_violation, 0.0)) << ','
          << tallies[mi].strict_wins << '\n';
    return;
  }
  out << "{\"command\":\"avg_dominance\",\"seed\":" << config.seed
      << ",\"trials\":" << trials << ",\"rows\":[";
  for (std::size_t mi = 0; mi < entries.size(); ++mi) {
    if (mi) out << ',';
    out << "{\"measure\":" << quoted(entries[mi].name)
        << ",\"checks\":" << trials
        << ",\"violations\":" << tallies[mi].violations
        << ",\"max_violation\":"
        << format_double(std::max(tallies[mi].max_violation, 0.0))
        << ",\"strict_wins\":" << tallies[mi].strict_wins << '}';
  }
  out << "]}\n";
}

// ---------------------------------------------------------------------------
// decompose

void cmd_decompose(const RunConfig& config, std::ostream& out) {
  const std::size_t cases = config.trials ? config.trials : 500;
  constexpr double kTolerance = 1e-10;
  double max_dev_atb = 0.0, max_dev_quantile = 0.0;

  for (std::size_t i = 0; i < cases; ++i) {
    const std::uint64_t case_seed = derive_seed(config.seed, i);
    Rng rng(case_seed);
    const std::size_t t_count = 2 + rng.uniform_below(9);  // 2..10
    std::vector<double> r(t_count), p(t_count);
    for (double& v : r) v = rng.uniform01();
    for (double& v : p) v = rng.uniform01();
    const GroundTruth truth(p);

    const MeasureFn atb_fn = [](const WeightedSample& s) { return atb(s); };
    const MeasureFn quantile_fn = [case_seed](const WeightedSample& s) {
      return quantile_l2_binece(s, case_seed);
    };
    max_dev_atb = std::max(
        max_dev_atb,
        std::abs(expected_error_bruteforce(atb_fn, r, truth).value -
                 decomposition_rhs(r, truth, atb_fn)));
    max_dev_quantile = std::max(
        max_dev_quantile,
        std::abs(expected_error_bruteforce(quantile_fn, r, truth).value -
                 decomposition_rhs(r, truth, quantile_fn)));
  }

  struct Row {
    const char* name;
    double max_dev;
  };
  const Row rows[2] = {{"atb", max_dev_atb},
                       {"quantile_l2_binece", max_dev_quantile}};
  if (is_csv(config)) {
    csv_preamble(config, out, {{"cases", std::to_string(cases)}});
    out << "measure,cases,max_abs_deviation,within_tolerance\n";
    for (const Row& r : rows)
      out << r.name << ',' << cases << ',' << format_double(r.max_dev) << ','
          << (r.max_dev <= kTolerance ? 1 : 0) << '\n';
    return;
  }
  out << "{\"command\":\"decompose\",\"seed\":" << config.seed
      << ",\"cases\":" << cases
      << ",\"tolerance\":" << format_double(kTolerance) << ",\"rows\":[";
  for (std::size_t i = 0; i < 2; ++i) {
    if (i) out << ',';
    out << "{\"measure\":" << quoted(rows[i].name)
        << ",\"max_abs_deviation\":" << format_double(rows[i].max_dev)
        << ",\"within_tolerance\":" << bool_json(rows[i].max_dev <= kTolerance)
        << '}';
  }
  out << "]}\n";
}

// ---------------------------------------------------------------------------

void run_command(const RunConfig& config, std::ostream& fallback) {
  using Handler = void (*)(const RunConfig&, std::ostream&);
  struct Dispatch {
    const char* name;
    Handler handler;
  };
  static constexpr Dispatch table[] = {
      {"measure", cmd_measure},   {"table1", cmd_table1},
      {"truthfulness", cmd_truthfulness}, {"scaling", cmd_scaling},
      {"test", cmd_test},         {"avg-dominance", cmd_avg_dominance},
      {"decompose", cmd_decompose}};

  Handler handler = nullptr;
  for (const Dispatch& d : table)
    if (config.command == d.name) handler = d.handler;
  if (!handler)
    throw BadArgumentError("unknown command '" + config.command + "'");

  if (config.output_path.empty()) {
    handler(config, fallback);
    fallback.flush();
    return;
  }
  // Render first so a failing command never leaves a partial output file.
  std::ostringstream rendered;
  handler(config, rendered);
  std::ofstream file(config.output_path);
  if (!file)
    throw BadArgumentError("cannot open output file '" + config.output_path +
                           "'");
  file << rendered.str();
  file.flush();
  if (!file)
    throw BadArgumentError("failed writing output file '" +
                           config.output_path + "'");
}

}  // namespace calib::cli
