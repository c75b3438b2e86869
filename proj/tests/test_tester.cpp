#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "calib/error.hpp"
#include "calib/rng.hpp"
#include "calib/tester.hpp"
#include "calib/two_bin.hpp"

using namespace calib;

TEST_CASE("decision rule compares the two-bin statistic to the threshold") {
  const auto good = WeightedSample::from_vectors({1.0}, {1.0});
  const TestOutcome hit = calibration_test(good, 1.0);
  CHECK(hit.statistic == 0.0);
  CHECK(hit.threshold == 1.0);
  CHECK(hit.accept);

  const auto biased = WeightedSample::from_vectors({0.5, 0.5}, {0.0, 0.0});
  CHECK(calibration_test(biased, 0.5).statistic == 0.25);
  CHECK(calibration_test(biased, 0.25).accept);     // boundary is accepting
  CHECK_FALSE(calibration_test(biased, 0.2).accept);

  const auto fractional = WeightedSample::from_vectors({0.5}, {0.5});
  CHECK_THROWS_AS(calibration_test(fractional, 1.0), NonBinaryTargetsError);
}

TEST_CASE("default threshold shrinks as 1/T") {
  CHECK(default_threshold(1) == 1.0);
  CHECK(default_threshold(4) == 0.25);
  CHECK(default_threshold(1000) == 0.001);
}

TEST_CASE("source validation") {
  using Atom = SourceSpec::Atom;
  CHECK_THROWS_AS(SourceSpec({}), BadSourceError);
  CHECK_THROWS_AS(SourceSpec({Atom{1.5, 1.0, 0.5}}), BadSourceError);
  CHECK_THROWS_AS(SourceSpec({Atom{0.5, -0.2, 0.5}}), BadSourceError);
  CHECK_THROWS_AS(SourceSpec({Atom{0.5, 1.0, 1.0001}}), BadSourceError);
  CHECK_THROWS_AS(SourceSpec({Atom{0.5, 0.7, 0.5}}), BadSourceError);
  CHECK_THROWS_AS(
      SourceSpec({Atom{0.5, 0.5, 0.5}, Atom{0.5, 0.5, 0.6}}), BadSourceError);

  // Masses within rounding of 1 are accepted and renormalized.
  const SourceSpec near({Atom{0.25, 0.5 + 1e-12, 0.25}, Atom{0.75, 0.5, 0.75}});
  double total = 0.0;
  for (const auto& atom : near.atoms()) total += atom.mass;
  CHECK(std::abs(total - 1.0) <= 1e-15);
}

TEST_CASE("ready-made sources") {
  const SourceSpec two = SourceSpec::calibrated_two_point();
  REQUIRE(two.atoms().size() == 2);
  CHECK(two.atoms()[0].value == 0.25);
  CHECK(two.atoms()[0].conditional == 0.25);
  CHECK(two.atoms()[1].value == 0.75);
  CHECK(two.is_calibrated());

  const SourceSpec grid = SourceSpec::calibrated_grid(4);
  REQUIRE(grid.atoms().size() == 4);
  CHECK(grid.atoms()[0].value == 0.125);  // midpoints (2i+1)/(2n)
  CHECK(grid.atoms()[3].value == 0.875);
  CHECK(grid.is_calibrated());

  const SourceSpec biased = SourceSpec::constant_biased(0.3);
  REQUIRE(biased.atoms().size() == 1);
  CHECK(biased.atoms()[0].value == 0.5);
  CHECK(biased.atoms()[0].conditional == 0.8);
  CHECK_FALSE(biased.is_calibrated());
  CHECK(SourceSpec::constant_biased(0.0).is_calibrated());
  CHECK_THROWS_AS(SourceSpec::constant_biased(0.6), BadSourceError);
  CHECK_THROWS_AS(SourceSpec::constant_biased(-0.1), BadSourceError);
}

TEST_CASE("population sample carries masses and conditional rates") {
  const auto population = SourceSpec::calibrated_two_point().population_sample();
  REQUIRE(population.size() == 2);
  CHECK(population[0].prediction == 0.25);
  CHECK(population[0].target == 0.25);
  CHECK(population[0].weight == 0.5);
  CHECK(atb(population) == 0.0);

  // The reference miscalibrated source: exact population-level statistic.
  const SourceSpec off({SourceSpec::Atom{0.25, 0.5, 0.6},
                        SourceSpec::Atom{0.75, 0.5, 0.4}});
  // Exact values 0.030625 and 0.175; 0.35 is not dyadic, so allow an ulp.
  CHECK(atb(off.population_sample()) ==
        doctest::Approx(0.030625).epsilon(1e-14));
  CHECK(l1_atb(off.population_sample()) ==
        doctest::Approx(0.175).epsilon(1e-14));
}

TEST_CASE("sample draws are deterministic and respect the source") {
  const SourceSpec source = SourceSpec::calibrated_two_point();
  const auto a = draw_sample(source, 40, 77);
  const auto b = draw_sample(source, 40, 77);
  REQUIRE(a.size() == 40);
  for (std::size_t t = 0; t < a.size(); ++t) {
    CHECK(a[t].prediction == b[t].prediction);
    CHECK(a[t].target == b[t].target);
    const bool known = a[t].prediction == 0.25 || a[t].prediction == 0.75;
    CHECK(known);
    CHECK((a[t].target == 0.0 || a[t].target == 1.0));
  }
  CHECK(draw_sample(source, 40, 78)[0].weight == doctest::Approx(1.0 / 40));

  // Degenerate source: fully predictable draws.
  const SourceSpec sure({SourceSpec::Atom{1.0, 1.0, 1.0}});
  const auto c = draw_sample(sure, 10, 5);
  for (std::size_t t = 0; t < c.size(); ++t) {
    CHECK(c[t].prediction == 1.0);
    CHECK(c[t].target == 1.0);
  }
}

TEST_CASE("empirical frequencies concentrate around the source masses") {
  const SourceSpec source = SourceSpec::calibrated_two_point();
  const auto s = draw_sample(source, 20000, 424242);
  std::size_t low = 0, ones = 0;
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (s[t].prediction == 0.25) ++low;
    if (s[t].target == 1.0) ++ones;
  }
  // 4-sigma bands for Binomial(20000, 1/2): sigma ~ 70.7.
  CHECK(std::abs(static_cast<double>(low) - 10000.0) <= 283.0);
  CHECK(std::abs(static_cast<double>(ones) - 10000.0) <= 283.0);
}

TEST_CASE("acceptance probability is monotone in the threshold") {
  const SourceSpec source = SourceSpec::calibrated_two_point();
  const AcceptanceEstimate tight =
      acceptance_probability(source, 100, 0.002, 300, 31);
  const AcceptanceEstimate loose =
      acceptance_probability(source, 100, 0.05, 300, 31);
  CHECK(tight.estimate <= loose.estimate);
  CHECK(loose.std_error <= 0.5 / std::sqrt(300.0) + 1e-12);

  // A deterministic source never trips the statistic.
  const SourceSpec sure({SourceSpec::Atom{1.0, 1.0, 1.0}});
  const AcceptanceEstimate all =
      acceptance_probability(sure, 50, default_threshold(50), 100, 7);
  CHECK(all.estimate == 1.0);
  CHECK(all.std_error == 0.0);
}

TEST_CASE("calibrated sources pass at the default threshold") {
  for (const std::size_t t_count : {std::size_t{50}, std::size_t{200}}) {
    const AcceptanceEstimate acc = acceptance_probability(
        SourceSpec::calibrated_two_point(), t_count,
        default_threshold(t_count), 500, derive_seed(808, t_count));
    CHECK(acc.estimate >= 0.75);
  }
}

TEST_CASE("a strongly biased constant source is rejected") {
  const AcceptanceEstimate acc = acceptance_probability(
      SourceSpec::constant_biased(0.3), 200, default_threshold(200), 500, 909);
  // Statistic concentrates near gamma^2 = 0.09 >> 1/200.
  CHECK(acc.estimate <= 0.02);
}

TEST_CASE("acceptance-gap sweep separates matched from biased sources") {
  const std::vector<double> gammas = {0.0, 0.4};
  const std::vector<std::size_t> t_grid = {64, 256};
  const auto rows = validity_sweep(
      SourceSpec::calibrated_two_point(),
      [](double g) { return SourceSpec::constant_biased(g); }, gammas, t_grid,
      300, 1234);
  REQUIRE(rows.size() == 4);

  CHECK(rows[0].t_count == 64);   // T outermost, gammas inner
  CHECK(rows[1].t_count == 64);
  CHECK(rows[2].t_count == 256);
  CHECK(rows[0].gamma == 0.0);
  CHECK(rows[1].gamma == 0.4);
  CHECK(rows[0].beta == default_threshold(64));

  for (const SweepRow& row : rows) {
    CHECK(row.gap ==
          doctest::Approx(row.acc_calibrated - row.acc_miscalibrated)
              .epsilon(1e-14));
    CHECK(row.std_error <= 1.0 / std::sqrt(300.0) + 1e-12);
    if (row.gamma == 0.0) {
      // family(0) is itself calibrated, so both sources pass w.h.p.; their
      // acceptance rates need not match exactly.
      CHECK(row.acc_calibrated >= 0.8);
      CHECK(row.acc_miscalibrated >= 0.8);
      CHECK(std::abs(row.gap) <= 0.2);
    } else {
      CHECK(row.gap >= 0.5);
    }
  }
}

TEST_CASE("bias shrinking like 1/sqrt(T) stays detectable") {
  // gamma = 4 / sqrt(T): the statistic lands near 16/T, well above the
  // 1/T threshold, so the gap persists as T grows.
  for (const std::size_t t_count : {std::size_t{100}, std::size_t{400}}) {
    const double gamma = 4.0 / std::sqrt(static_cast<double>(t_count));
    const std::vector<double> gammas = {gamma};
    const std::vector<std::size_t> t_grid = {t_count};
    const auto rows = validity_sweep(
        SourceSpec::calibrated_two_point(),
        [](double g) { return SourceSpec::constant_biased(g); }, gammas,
        t_grid, 400, derive_seed(4321, t_count));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].gap >= 0.5 - 5.0 * rows[0].std_error);
  }
}

TEST_CASE("sweep CSV layout") {
  std::vector<SweepRow> rows = {{10, 0.25, 0.125, 1.0, 0.5, 0.5, 0.0625}};
  std::ostringstream out;
  write_sweep_csv(rows, out);
  CHECK(out.str() ==
        "T,gamma,beta,acc_calibrated,acc_miscalibrated,gap,stderr\n"
        "10,0.25,0.125,1,0.5,0.5,0.0625\n");
}
