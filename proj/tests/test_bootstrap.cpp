#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bwb/barycenter.hpp"
#include "bwb/bootstrap.hpp"
#include "bwb/experiment.hpp"
#include "test_util.hpp"

using namespace bwb;
using bwbtest::random_pd;

namespace {

double sample_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_var(const std::vector<double>& v) {
  const double m = sample_mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST_CASE("weight schemes have unit mean and unit variance", "[bootstrap]") {
  const std::size_t n = 1000000;
  struct Case {
    WeightScheme scheme;
    double fourth_central;  // Var[(u-1)^2] = mu4 - 1 for unit-variance u
  };
  const Case cases[] = {{WeightScheme::Exp1(), 9.0},
                        {WeightScheme::Po1(), 4.0},
                        {WeightScheme::Bern2(), 1.0}};
  std::uint64_t seed = 40;
  for (const Case& c : cases) {
    const std::vector<double> u = draw_weights(c.scheme, n, seed++);
    const double mean_tol = 5.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(sample_mean(u) - 1.0) <= mean_tol);
    // 5 sigma on the mean of (u-1)^2 plus the (u_bar - 1)^2 centering bias
    const double var_tol = 5.0 * std::sqrt((c.fourth_central - 1.0) / static_cast<double>(n)) +
                           25.0 / static_cast<double>(n);
    CHECK(std::abs(sample_var(u) - 1.0) <= var_tol);
    for (double w : u) CHECK(w >= 0.0);
  }
}

TEST_CASE("bern2 draws take values in {0, 2} only", "[bootstrap]") {
  for (double w : draw_weights(WeightScheme::Bern2(), 10000, 41)) {
    CHECK((w == 0.0 || w == 2.0));
  }
}

TEST_CASE("exp1 mean over one million draws", "[bootstrap]") {
  const std::vector<double> u = draw_weights(WeightScheme::Exp1(), 1000000, 42);
  CHECK(std::abs(sample_mean(u) - 1.0) <= 5e-3);
}

TEST_CASE("provided weights are returned verbatim", "[bootstrap]") {
  const std::vector<double> ones(5, 1.0);
  CHECK(draw_weights(WeightScheme::Provided(ones), 5, 1) == ones);
  CHECK_THROWS_AS(draw_weights(WeightScheme::Provided(ones), 4, 1), ShapeError);
}

TEST_CASE("draw_weights is deterministic in the seed", "[bootstrap]") {
  CHECK(draw_weights(WeightScheme::Po1(), 1000, 7) == draw_weights(WeightScheme::Po1(), 1000, 7));
  CHECK(draw_weights(WeightScheme::Po1(), 1000, 7) != draw_weights(WeightScheme::Po1(), 1000, 8));
}

TEST_CASE("bootstrap with all-ones weights gives zero statistics", "[bootstrap]") {
  Rng rng(401);
  std::vector<SymMatrix> matrices;
  for (int i = 0; i < 6; ++i) matrices.push_back(random_pd(rng, 3));
  const SampleSet data = SampleSet::Create(matrices);
  const SymMatrix q_n = barycenter(data).q;
  const BootstrapReport report =
      run_bootstrap(data, q_n, 10, WeightScheme::Provided(std::vector<double>(6, 1.0)),
                    StatKind::BuresWasserstein, {}, 1);
  for (double v : report.replicates) CHECK(v <= 1e-6);
  CHECK(report.rejected_draws == 0);
}

TEST_CASE("bootstrap of a singleton sample is degenerate at zero", "[bootstrap]") {
  Rng rng(402);
  const SampleSet data = SampleSet::Create({random_pd(rng, 3)});
  const SymMatrix q_n = barycenter(data).q;
  const BootstrapReport report =
      run_bootstrap(data, q_n, 5, WeightScheme::Exp1(), StatKind::BuresWasserstein, {}, 2);
  for (double v : report.replicates) CHECK(v <= 1e-6);
}

TEST_CASE("bootstrap replicate lists are bit-identical across reruns and threads", "[bootstrap]") {
  Rng rng(403);
  std::vector<SymMatrix> matrices;
  for (int i = 0; i < 8; ++i) matrices.push_back(random_pd(rng, 3));
  const SampleSet data = SampleSet::Create(matrices);
  const SymMatrix q_n = barycenter(data).q;
  const BootstrapReport a =
      run_bootstrap(data, q_n, 16, WeightScheme::Po1(), StatKind::Frobenius, {}, 9);
  const BootstrapReport b =
      run_bootstrap(data, q_n, 16, WeightScheme::Po1(), StatKind::Frobenius, {}, 9);
  const BootstrapReport c =
      run_bootstrap(data, q_n, 16, WeightScheme::Po1(), StatKind::Frobenius, {}, 9, 4);
  CHECK(a.replicates == b.replicates);
  CHECK(a.replicates == c.replicates);
  CHECK(a.rejected_draws == c.rejected_draws);
}

TEST_CASE("data weight scaling never changes replicates", "[bootstrap]") {
  Rng rng(404);
  std::vector<SymMatrix> matrices;
  for (int i = 0; i < 6; ++i) matrices.push_back(random_pd(rng, 3));
  const SampleSet data = SampleSet::Create(matrices);
  SampleSet scaled = data;
  for (double& w : scaled.weights) w /= 3.0;
  const SymMatrix q_n = barycenter(data).q;
  const BootstrapReport a =
      run_bootstrap(data, q_n, 12, WeightScheme::Bern2(), StatKind::BuresWasserstein, {}, 3);
  const BootstrapReport b =
      run_bootstrap(scaled, q_n, 12, WeightScheme::Bern2(), StatKind::BuresWasserstein, {}, 3);
  CHECK(a.replicates == b.replicates);
}

TEST_CASE("draws that keep only singular matrices are rejected and redrawn", "[bootstrap]") {
  Rng rng(405);
  // one PD matrix among singular ones: a Bern2 draw that zeroes it out is invalid
  std::vector<SymMatrix> matrices{random_pd(rng, 3), bwbtest::random_psd_rank(rng, 3, 2),
                                  bwbtest::random_psd_rank(rng, 3, 2)};
  const SampleSet data = SampleSet::Create(matrices);
  const SymMatrix q_n = barycenter(data).q;
  const BootstrapReport report =
      run_bootstrap(data, q_n, 40, WeightScheme::Bern2(), StatKind::BuresWasserstein, {}, 12);
  CHECK(report.rejected_draws > 0);  // P(reject) = 1/2 per attempt at B = 40
  CHECK(report.replicates.size() == 40);
}

TEST_CASE("hopeless provided weights exhaust the attempt budget", "[bootstrap]") {
  Rng rng(406);
  const std::vector<SymMatrix> matrices{random_pd(rng, 3), bwbtest::random_psd_rank(rng, 3, 1)};
  const SampleSet data = SampleSet::Create(matrices);
  const SymMatrix q_n = barycenter(data).q;
  CHECK_THROWS_AS(run_bootstrap(data, q_n, 3, WeightScheme::Provided({0.0, 1.0}),
                                StatKind::BuresWasserstein, {}, 4),
                  DegenerateResampleError);
}

TEST_CASE("B must be positive", "[bootstrap]") {
  Rng rng(407);
  const SampleSet data = SampleSet::Create({random_pd(rng, 2)});
  const SymMatrix q_n = barycenter(data).q;
  CHECK_THROWS_AS(
      run_bootstrap(data, q_n, 0, WeightScheme::Exp1(), StatKind::BuresWasserstein, {}, 1),
      ConfigError);
}

TEST_CASE("report carries the sqrt(n) scale and sorted CDF", "[bootstrap]") {
  Rng rng(408);
  std::vector<SymMatrix> matrices;
  for (int i = 0; i < 9; ++i) matrices.push_back(random_pd(rng, 3));
  const SampleSet data = SampleSet::Create(matrices);
  const SymMatrix q_n = barycenter(data).q;
  const BootstrapReport report =
      run_bootstrap(data, q_n, 25, WeightScheme::Exp1(), StatKind::BuresWasserstein, {}, 21);
  CHECK(report.scale == Catch::Approx(3.0));
  CHECK(std::is_sorted(report.cdf.points().begin(), report.cdf.points().end()));
  CHECK(report.cdf.n() == 25);
  std::vector<double> sorted = report.replicates;
  std::sort(sorted.begin(), sorted.end());
  CHECK(report.cdf.points() == sorted);
  for (double v : report.replicates) CHECK(v >= 0.0);
  CHECK(report.quantiles.at(0.5) == quantile(report.cdf, 0.5));
}

TEST_CASE("empirical cdf evaluation is a right-continuous step function", "[bootstrap]") {
  const EmpiricalCdf cdf = EmpiricalCdf::FromValues({3.0, 1.0, 2.0, 2.0});
  CHECK(cdf.eval(0.5) == 0.0);
  CHECK(cdf.eval(1.0) == 0.25);
  CHECK(cdf.eval(1.999) == 0.25);
  CHECK(cdf.eval(2.0) == 0.75);
  CHECK(cdf.eval(3.0) == 1.0);
  CHECK(cdf.eval(99.0) == 1.0);

  Rng rng(409);
  std::vector<double> values;
  for (int i = 0; i < 200; ++i) values.push_back(rng.normal());
  const EmpiricalCdf random_cdf = EmpiricalCdf::FromValues(values);
  double prev = 0.0;
  for (double x = -4.0; x <= 4.0; x += 0.01) {
    const double v = random_cdf.eval(x);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(prev == 1.0);
}

TEST_CASE("ks_distance exact values", "[bootstrap]") {
  const EmpiricalCdf a = EmpiricalCdf::FromValues({1.0, 2.0});
  CHECK(ks_distance(a, a) == 0.0);
  CHECK(ks_distance(EmpiricalCdf::FromValues({0.0}), EmpiricalCdf::FromValues({1.0})) == 1.0);
  CHECK(ks_distance(a, EmpiricalCdf::FromValues({1.5, 2.5})) == 0.5);
  CHECK_THROWS_AS(ks_distance(a, EmpiricalCdf::FromValues({})), DomainError);
}

TEST_CASE("quantile is the ceil(level n) order statistic", "[bootstrap]") {
  CHECK(quantile(EmpiricalCdf::FromValues({1, 2, 3, 4}), 0.5) == 2.0);
  CHECK(quantile(EmpiricalCdf::FromValues({5.0}), 0.1) == 5.0);
  CHECK(quantile(EmpiricalCdf::FromValues({5.0}), 0.99) == 5.0);

  std::vector<double> grid(1000);
  for (int i = 0; i < 1000; ++i) grid[static_cast<std::size_t>(i)] = i + 1;
  const EmpiricalCdf cdf = EmpiricalCdf::FromValues(grid);
  CHECK(quantile(cdf, 0.95) == 950.0);
  CHECK_THROWS_AS(quantile(cdf, 0.0), DomainError);
  CHECK_THROWS_AS(quantile(cdf, 1.0), DomainError);
}

TEST_CASE("confidence bands", "[bootstrap]") {
  const EmpiricalCdf a = EmpiricalCdf::FromValues({1.0, 2.0, 3.0});
  const std::vector<BandPoint> same = confidence_bands({a, a, a}, {0.5, 1.5, 2.5, 3.5});
  for (const BandPoint& p : same) {
    CHECK(p.lo == p.mean);
    CHECK(p.mean == p.hi);
  }

  const std::vector<BandPoint> two = confidence_bands(
      {EmpiricalCdf::FromValues({0.0}), EmpiricalCdf::FromValues({1.0})}, {0.5});
  REQUIRE(two.size() == 1);
  CHECK(two[0].lo == 0.0);
  CHECK(two[0].mean == 0.5);
  CHECK(two[0].hi == 1.0);

  CHECK_THROWS_AS(confidence_bands({a, a}, {2.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(confidence_bands({a}, {1.0}), ConfigError);
}

TEST_CASE("bootstrap KS against fresh-sample truth shrinks with n", "[bootstrap][trend]") {
  // light version of the rate-trend acceptance check
  const SbmConfig cfg = desk_sbm(4);
  const double r = kDefaultRegularization;
  SolverConfig solver;

  auto median_ks = [&](std::size_t n, std::uint64_t seed) {
    // B and n_reps sized so the ECDF noise floor sits well below the
    // small-sample approximation error being measured
    const TruthResult truth =
        build_truth(cfg, r, 2000, n, 400, StatKind::BuresWasserstein, solver, seed);
    std::vector<double> ks;
    for (int rep = 0; rep < 5; ++rep) {
      const std::uint64_t rep_seed = derive_stream(seed, 7000 + static_cast<std::uint64_t>(rep));
      const SampleSet data =
          SampleSet{sample_matrices(cfg, r, n, rep_seed), std::vector<double>(n, 1.0)};
      const SymMatrix q_n = barycenter(data, solver).q;
      const BootstrapReport report = run_bootstrap(data, q_n, 400, WeightScheme::Bern2(),
                                                   StatKind::BuresWasserstein, solver, rep_seed);
      ks.push_back(ks_distance(report.cdf, truth.cdf));
    }
    return median(ks);
  };

  CHECK(median_ks(160, 51) < median_ks(10, 50) + 0.02);
}
