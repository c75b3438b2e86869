#include <doctest.h>

#include <cmath>
#include <sstream>

#include "calib/oracle.hpp"
#include "calib/rng.hpp"
#include "calib/two_bin.hpp"
#include "test_util.hpp"

using namespace calib;

namespace {

WeightedSample two_point(double r1, double y1, double r2, double y2) {
  return WeightedSample::from_pairs({{r1, y1}, {r2, y2}});
}

}  // namespace

TEST_CASE("two-bin error on the two-point reference cases") {
  // Predictions (0.5, 0.5): constant predictor at the average.
  CHECK(atb(two_point(0.5, 0.0, 0.5, 0.0)) == 0.25);
  CHECK(atb(two_point(0.5, 1.0, 0.5, 1.0)) == 0.25);
  CHECK(atb(two_point(0.5, 0.0, 0.5, 1.0)) == 0.0);
  // Predictions (0.25, 0.75) under each outcome vector.
  CHECK(atb(two_point(0.25, 0.0, 0.75, 0.0)) == 0.203125);
  CHECK(atb(two_point(0.25, 1.0, 0.75, 1.0)) == 0.203125);
  CHECK(atb(two_point(0.25, 0.0, 0.75, 1.0)) == 0.015625);
  CHECK(atb(two_point(0.25, 1.0, 0.75, 0.0)) == 0.140625);
}

TEST_CASE("absolute-value variant on the same cases") {
  CHECK(l1_atb(two_point(0.25, 0.0, 0.75, 1.0)) == 0.125);
  CHECK(l1_atb(two_point(0.5, 0.0, 0.5, 0.0)) == 0.5);
  CHECK(l1_atb(two_point(0.25, 0.25, 0.75, 0.75)) == 0.0);
}

TEST_CASE("perfect predictions score zero") {
  Rng rng(88);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> r(1 + rng.uniform_below(30));
    for (double& v : r) v = rng.bernoulli(0.5);
    const auto s = WeightedSample::from_vectors(r, r);
    CHECK(atb(s) == 0.0);
    CHECK(l1_atb(s) == 0.0);
  }
}

TEST_CASE("segment profile matches the worked two-point example") {
  const SegmentProfile profile = segment_profile(two_point(0.25, 0.0, 0.75, 1.0));
  REQUIRE(profile.segments.size() == 3);
  const Segment& a = profile.segments[0];
  CHECK(a.q_lo == 0.0);
  CHECK(a.q_hi == 0.25);
  CHECK(a.below_sum == 0.0);
  CHECK(a.above_sum == 0.0);
  const Segment& b = profile.segments[1];
  CHECK(b.q_lo == 0.25);
  CHECK(b.q_hi == 0.75);
  CHECK(b.below_sum == 0.25);
  CHECK(b.above_sum == -0.25);
  const Segment& c = profile.segments[2];
  CHECK(c.q_lo == 0.75);
  CHECK(c.q_hi == 1.0);
  CHECK(c.below_sum == 0.0);
  CHECK(c.above_sum == 0.0);
}

TEST_CASE("single-point profile flips at the prediction") {
  const auto s = WeightedSample::from_pairs({{0.3, 0.0}});
  const SegmentProfile profile = segment_profile(s);
  REQUIRE(profile.segments.size() == 2);
  CHECK(profile.segments[0].q_hi == 0.3);
  CHECK(profile.segments[0].below_sum == 0.0);
  CHECK(profile.segments[0].above_sum == 0.3);
  CHECK(profile.segments[1].below_sum == 0.3);
  CHECK(profile.segments[1].above_sum == 0.0);
  CHECK(atb(s) == doctest::Approx(0.09).epsilon(1e-14));
}

TEST_CASE("profile drops empty end pieces when predictions hit 0 or 1") {
  const auto s = WeightedSample::from_pairs({{0.0, 0.0}, {1.0, 0.0}});
  const SegmentProfile profile = segment_profile(s);
  REQUIRE(profile.segments.size() == 1);
  CHECK(profile.segments[0].q_lo == 0.0);
  CHECK(profile.segments[0].q_hi == 1.0);
}

TEST_CASE("profile invariants on random samples") {
  Rng rng(1312);
  for (int rep = 0; rep < 300; ++rep) {
    const auto s = testutil::random_sample(rng, {1, 80, false, true});
    const SegmentProfile profile = segment_profile(s);
    REQUIRE(!profile.segments.empty());
    CHECK(profile.segments.front().q_lo == 0.0);
    CHECK(profile.segments.back().q_hi == 1.0);
    const double total = profile.segments.front().below_sum +
                         profile.segments.front().above_sum;
    double previous_hi = 0.0;
    for (const Segment& seg : profile.segments) {
      CHECK(seg.q_lo == previous_hi);
      CHECK(seg.q_lo < seg.q_hi);
      CHECK(std::abs(seg.below_sum + seg.above_sum - total) <= 1e-12);
      previous_hi = seg.q_hi;
    }
  }
}

TEST_CASE("profile CSV serialization") {
  std::ostringstream out;
  write_profile_csv(segment_profile(two_point(0.25, 0.0, 0.75, 1.0)), out);
  CHECK(out.str() ==
        "q_lo,q_hi,below_sum,above_sum\n"
        "0,0.25,0,0\n"
        "0.25,0.75,0.25,-0.25\n"
        "0.75,1,0,0\n");
}

TEST_CASE("results are invariant under entry shuffles, bit for bit") {
  Rng rng(555);
  for (int rep = 0; rep < 50; ++rep) {
    const auto s = testutil::random_sample(rng, {2, 60, true, true});
    std::vector<SamplePoint> shuffled = s.points();
    for (std::size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng.uniform_below(i)]);
    const auto s2 = WeightedSample::from_points(std::move(shuffled));
    CHECK(atb(s) == atb(s2));
    CHECK(l1_atb(s) == l1_atb(s2));
  }
}

TEST_CASE("value range and the quadratic relation") {
  Rng rng(2025);
  for (int rep = 0; rep < 500; ++rep) {
    const bool binary = rep % 2 == 0;
    const auto s = testutil::random_sample(rng, {1, 120, binary, true});
    const double a = atb(s);
    const double l1 = l1_atb(s);
    CHECK(a >= 0.0);
    CHECK(a <= 2.0);
    CHECK(0.5 * l1 * l1 <= a + 1e-10);
    CHECK(a <= l1 + 1e-10);
  }
}

TEST_CASE("fast path agrees with the per-segment oracle") {
  Rng rng(90210);
  for (int rep = 0; rep < 200; ++rep) {
    const auto s = testutil::random_sample(rng, {1, 150, false, true});
    CHECK(std::abs(atb(s) - atb_naive(s)) <= 1e-12);
    CHECK(std::abs(l1_atb(s) - l1_atb_naive(s)) <= 1e-12);
  }
}

TEST_CASE("threshold Monte Carlo agrees with the exact integral") {
  Rng rng(818);
  for (int rep = 0; rep < 5; ++rep) {
    const auto s = testutil::random_sample(rng, {5, 100, true, true});
    const auto mc_sq = testutil::mc_over_q(s, 20000, 1000 + rep, true);
    CHECK(std::abs(atb(s) - mc_sq.mean) <= 5.0 * mc_sq.std_error + 1e-12);
    const auto mc_abs = testutil::mc_over_q(s, 20000, 2000 + rep, false);
    CHECK(std::abs(l1_atb(s) - mc_abs.mean) <= 5.0 * mc_abs.std_error + 1e-12);
  }
}

TEST_CASE("mean perturbations move the errors by bounded amounts") {
  Rng rng(606);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t t_count = 1 + rng.uniform_below(60);
    std::vector<double> r1(t_count), r2(t_count), y(t_count);
    const double scale = std::pow(10.0, rng.uniform(-4.0, -0.5));
    double mean_shift = 0.0;
    for (std::size_t t = 0; t < t_count; ++t) {
      r1[t] = rng.uniform01();
      r2[t] = std::clamp(r1[t] + rng.uniform(-scale, scale), 0.0, 1.0);
      y[t] = rng.bernoulli(0.5);
      mean_shift += std::abs(r1[t] - r2[t]);
    }
    mean_shift /= static_cast<double>(t_count);
    const auto s1 = WeightedSample::from_vectors(r1, y);
    const auto s2 = WeightedSample::from_vectors(r2, y);
    CHECK(std::abs(l1_atb(s1) - l1_atb(s2)) <= 3.0 * mean_shift + 1e-10);
    CHECK(std::abs(atb(s1) - atb(s2)) <= 6.0 * mean_shift + 1e-10);
  }
}

TEST_CASE("population form matches the weighted-sample evaluation") {
  // A two-atom population written directly as a mass-weighted sample.
  const auto population = WeightedSample::from_points(
      {{0.25, 0.6, 0.5}, {0.75, 0.4, 0.5}});
  // Residuals: 0.5*(0.25-0.6) = -0.175 and 0.5*(0.75-0.4) = 0.175; only the
  // middle threshold range separates them.
  CHECK(atb(population) == doctest::Approx(0.030625).epsilon(1e-14));
  CHECK(l1_atb(population) == doctest::Approx(0.175).epsilon(1e-14));
}
