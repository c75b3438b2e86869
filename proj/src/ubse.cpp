#include "calib/ubse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include <json.hpp>

#include "calib/error.hpp"
#include "calib/rng.hpp"

namespace calib {

BinPartition::BinPartition(std::vector<std::vector<std::size_t>> bins,
                           std::size_t element_count)
    : element_count_(element_count) {
  std::vector<char> seen(element_count, 0);
  std::size_t covered = 0;
  for (auto& bin : bins) {
    if (bin.empty()) continue;  // empty bins carry no mass; drop them
    for (const std::size_t t : bin) {
      if (t >= element_count)
        throw IndexMismatchError("bin index " + std::to_string(t + 1) +
                                 " exceeds element count " +
                                 std::to_string(element_count));
      if (seen[t])
        throw IndexMismatchError("index " + std::to_string(t + 1) +
                                 " appears in more than one bin");
      seen[t] = 1;
      ++covered;
    }
    bins_.push_back(std::move(bin));
  }
  if (covered != element_count)
    throw IndexMismatchError("bins cover " + std::to_string(covered) +
                             " of " + std::to_string(element_count) +
                             " indices");
}

std::string BinPartition::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& bin : bins_) {
    nlohmann::json jb = nlohmann::json::array();
    for (const std::size_t t : bin) jb.push_back(t + 1);  // 1-based on disk
    out.push_back(std::move(jb));
  }
  return out.dump();
}

BinPartition BinPartition::from_json(const std::string& text) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, std::string("invalid partition JSON: ") + e.what());
  }
  if (!parsed.is_array())
    throw ParseError(1, "partition JSON must be a list of lists");
  std::vector<std::vector<std::size_t>> bins;
  std::size_t count = 0;
  for (const auto& jb : parsed) {
    if (!jb.is_array())
      throw ParseError(1, "partition JSON must be a list of lists");
    std::vector<std::size_t> bin;
    for (const auto& v : jb) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0)
        throw ParseError(1, "bin indices must be positive integers");
      bin.push_back(static_cast<std::size_t>(v.get<std::uint64_t>()) - 1);
      ++count;
    }
    bins.push_back(std::move(bin));
  }
  return BinPartition(std::move(bins), count);
}

double ubse_given_partition(const WeightedSample& sample,
                            const BinPartition& partition) {
  if (partition.element_count() != sample.size())
    throw IndexMismatchError(
        "partition covers " + std::to_string(partition.element_count()) +
        " indices but the sample has " + std::to_string(sample.size()));
  const double inv_w = 1.0 / sample.total_weight();
  double total = 0.0;
  for (const auto& bin : partition.bins()) {
    double delta = 0.0;
    for (const std::size_t t : bin) {
      const SamplePoint& p = sample[t];
      delta += p.weight * (p.prediction - p.target);
    }
    delta *= inv_w;
    total += delta * delta;
  }
  return total;
}

MeasureReport ubse_expected(const WeightedSample& sample,
                            const BinningScheme& scheme, std::size_t draws,
                            std::uint64_t seed) {
  const std::vector<double> predictions = sample.predictions();
  if (!scheme.randomized) {
    const BinPartition partition = scheme.make(predictions, seed);
    return {scheme.name, ubse_given_partition(sample, partition),
            Method::kExact, std::nullopt, std::nullopt};
  }
  if (draws < 1)
    throw BadArgumentError("randomized scheme needs at least one draw");
  std::vector<double> values;
  values.reserve(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    const BinPartition partition =
        scheme.make(predictions, derive_seed(seed, i));
    values.push_back(ubse_given_partition(sample, partition));
  }
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(draws);
  std::optional<double> std_error;
  if (draws > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    std_error = std::sqrt(ss / static_cast<double>(draws - 1)) /
                std::sqrt(static_cast<double>(draws));
  }
  return {scheme.name, mean, Method::kMonteCarlo, draws, std_error};
}

BinPartition quantile_bins(std::span<const double> predictions, std::size_t k,
                           std::uint64_t seed) {
  const std::size_t t_count = predictions.size();
  if (t_count == 0) throw EmptySampleError();
  if (k < 1 || k > t_count)
    throw BadBinCountError("bin count " + std::to_string(k) +
                           " outside [1, " + std::to_string(t_count) + "]");

  Rng rng(seed);
  std::vector<std::uint64_t> nonce(t_count);
  for (auto& n : nonce) n = rng.next_u64();

  std::vector<std::size_t> order(t_count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(predictions[a], nonce[a], a) <
           std::tie(predictions[b], nonce[b], b);
  });

  const std::size_t base = t_count / k;
  const std::size_t extra = t_count % k;
  std::vector<std::vector<std::size_t>> bins(k);
  std::size_t cursor = 0;
  for (std::size_t b = 0; b < k; ++b) {
    const std::size_t width = base + (b < extra ? 1 : 0);
    bins[b].assign(order.begin() + cursor, order.begin() + cursor + width);
    cursor += width;
  }
  return BinPartition(std::move(bins), t_count);
}

std::size_t default_quantile_bin_count(std::size_t sample_size) {
  const auto k = static_cast<std::size_t>(
      std::llround(std::cbrt(static_cast<double>(sample_size))));
  return std::clamp<std::size_t>(k, 1, sample_size);
}

double quantile_l2_binece(const WeightedSample& sample, std::size_t k,
                          std::uint64_t seed) {
  const std::vector<double> predictions = sample.predictions();
  return ubse_given_partition(sample, quantile_bins(predictions, k, seed));
}

double quantile_l2_binece(const WeightedSample& sample, std::uint64_t seed) {
  return quantile_l2_binece(sample, default_quantile_bin_count(sample.size()),
                            seed);
}

double decomposition_rhs(const std::vector<double>& predictions,
                         const GroundTruth& truth, const MeasureFn& measure) {
  if (predictions.size() != truth.size())
    throw LengthMismatchError(predictions.size(), truth.size());
  const WeightedSample at_truth =
      WeightedSample::from_vectors(predictions, truth.probabilities());
  double variance = 0.0;
  for (const double p : truth.probabilities()) variance += p * (1.0 - p);
  const double t_count = static_cast<double>(truth.size());
  return measure(at_truth) + variance / (t_count * t_count);
}

BinningScheme single_bin_scheme() {
  return {"single_bin", false,
          [](std::span<const double> predictions, std::uint64_t) {
            std::vector<std::size_t> all(predictions.size());
            std::iota(all.begin(), all.end(), std::size_t{0});
            return BinPartition({std::move(all)}, predictions.size());
          }};
}

BinningScheme quantile_scheme(std::size_t k) {
  return {"quantile_" + std::to_string(k), true,
          [k](std::span<const double> predictions, std::uint64_t seed) {
            return quantile_bins(predictions, k, seed);
          }};
}

BinningScheme two_bin_threshold_scheme() {
  return {"two_bin_threshold", true,
          [](std::span<const double> predictions, std::uint64_t seed) {
            Rng rng(seed);
            const double q = rng.uniform01();
            std::vector<std::size_t> below, above;
            for (std::size_t t = 0; t < predictions.size(); ++t)
              (predictions[t] < q ? below : above).push_back(t);
            std::vector<std::vector<std::size_t>> bins;
            bins.push_back(std::move(below));
            bins.push_back(std::move(above));
            return BinPartition(std::move(bins), predictions.size());
          }};
}

}  // namespace calib
