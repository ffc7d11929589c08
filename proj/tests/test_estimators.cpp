#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bwb/barycenter.hpp"
#include "bwb/bw_core.hpp"
#include "bwb/estimators.hpp"
#include "bwb/experiment.hpp"
#include "test_util.hpp"

using namespace bwb;
using bwbtest::random_pd;

namespace {

SymMatrix scalar(double v) {
  Eigen::MatrixXd m(1, 1);
  m(0, 0) = v;
  return SymMatrix::FromDense(m);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

double nuclear_norm(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

TEST_CASE("centred maps vanish on a constant sample", "[estimators]") {
  Rng rng(301);
  const SymMatrix q = random_pd(rng, 3);
  const SampleSet data = SampleSet::Create({q, q, q});
  for (const SymMatrix& t : centred_maps(q, data)) {
    CHECK(t.mat().norm() <= 1e-10);
  }
}

TEST_CASE("centred map scalar case", "[estimators]") {
  const SampleSet data = SampleSet::Create({scalar(9.0)});
  const std::vector<SymMatrix> maps = centred_maps(scalar(4.0), data);
  CHECK(maps[0].mat()(0, 0) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("centred maps average to zero at the barycenter", "[estimators]") {
  Rng rng(302);
  std::vector<SymMatrix> matrices;
  for (int i = 0; i < 7; ++i) matrices.push_back(random_pd(rng, 3));
  const SampleSet data = SampleSet::Create(matrices);
  SolverConfig cfg;
  const BarycenterResult fit = barycenter(data, cfg);
  const std::vector<SymMatrix> maps = centred_maps(fit.q, data);
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(3, 3);
  for (const SymMatrix& t : maps) mean += t.mat() / static_cast<double>(maps.size());
  CHECK(mean.norm() <= 10.0 * cfg.tol * fit.q.trace());
}

TEST_CASE("sigma_op closed forms and trace identity", "[estimators]") {
  Rng rng(303);
  const SymMatrix q = random_pd(rng, 3);
  CHECK(sigma_op(q, SampleSet::Create({q, q})).rep().norm() <= 1e-18);

  const SymOperator scalar_sigma = sigma_op(scalar(4.0), SampleSet::Create({scalar(9.0)}));
  CHECK(scalar_sigma.rep()(0, 0) == Catch::Approx(0.25).margin(1e-12));

  std::vector<SymMatrix> matrices;
  for (int i = 0; i < 6; ++i) matrices.push_back(random_pd(rng, 4));
  const SampleSet data = SampleSet::Create(matrices);
  const SymMatrix base = random_pd(rng, 4);
  const SymOperator sigma = sigma_op(base, data);
  const std::vector<SymMatrix> maps = centred_maps(base, data);
  double mean_sq = 0.0;
  for (const SymMatrix& t : maps) mean_sq += t.mat().squaredNorm() / static_cast<double>(maps.size());
  CHECK(std::abs(sigma.trace() - mean_sq) <= 1e-12 * std::max(1.0, mean_sq));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma.rep(), Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() >= -1e-14);
}

TEST_CASE("f_op closed forms", "[estimators]") {
  const SymMatrix eye = SymMatrix::Identity(3);
  const SymOperator f = f_op(eye, SampleSet::Create({eye, eye}));
  CHECK((f.rep() - 0.5 * Eigen::MatrixXd::Identity(6, 6)).norm() <= 1e-12);

  const SymOperator f1 = f_op(scalar(1.0), SampleSet::Create({scalar(4.0)}));
  CHECK(f1.rep()(0, 0) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("f_op single-multiplier term matches the direct differential", "[estimators]") {
  Rng rng(304);
  std::vector<SymMatrix> matrices;
  for (int i = 0; i < 4; ++i) matrices.push_back(random_pd(rng, 3));
  const SymMatrix q = random_pd(rng, 3);
  const SampleSet data = SampleSet::Create(matrices);
  const std::size_t j = 2;
  std::vector<double> mult(matrices.size(), 0.0);
  mult[j] = 1.0;
  const SymOperator f = f_op(q, data, mult);
  const SymOperator dt = ot_map_differential(q, matrices[j]);
  CHECK((static_cast<double>(matrices.size()) * f.rep() + dt.rep()).norm() <= 1e-10);
}

TEST_CASE("f_op is positive definite and reports singular offenders", "[estimators]") {
  Rng rng(305);
  std::vector<SymMatrix> matrices;
  for (int i = 0; i < 5; ++i) matrices.push_back(random_pd(rng, 3));
  const SymMatrix q = random_pd(rng, 3);
  const SymOperator f = f_op(q, SampleSet::Create(matrices));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f.rep(), Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > 0.0);

  matrices[1] = bwbtest::random_psd_rank(rng, 3, 2);
  matrices[3] = bwbtest::random_psd_rank(rng, 3, 1);
  try {
    f_op(q, SampleSet::Create(matrices));
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    const std::string what = e.what();
    CHECK(what.find("1") != std::string::npos);
    CHECK(what.find("3") != std::string::npos);
  }
}

TEST_CASE("gluing consistency at the identity", "[estimators]") {
  const SymMatrix eye = SymMatrix::Identity(4);
  const SymOperator f = f_op(eye, SampleSet::Create({eye, eye, eye}));
  const int m = f.m();
  CHECK((f.rep() - 0.5 * Eigen::MatrixXd::Identity(m, m)).norm() <= 1e-12);
  // A^2 = -dT/2; with every summand equal to dT this is half the gluing operator
  const SymOperator a = a_operator(eye);
  const SymOperator dt = ot_map_differential(eye, eye);
  CHECK((a.compose(a).rep() + 0.5 * dt.rep()).norm() <= 1e-12);
  CHECK((a.compose(a).rep() - 0.5 * f.rep()).norm() <= 1e-12);
}

TEST_CASE("xi_op closed forms and sandwich identity", "[estimators]") {
  Rng rng(306);
  const int d = 3, m = sym_space_dim(d);
  const Eigen::MatrixXd g = bwbtest::random_gaussian(rng, m, m);
  const SymOperator sigma = SymOperator::FromMatrix(d, g * g.transpose());

  CHECK((xi_op(sigma, SymOperator::Identity(d)).rep() - sigma.rep()).norm() <= 1e-12);
  CHECK(xi_op(SymOperator::Zero(d), SymOperator::Identity(d)).rep().norm() == 0.0);

  const SymOperator xi1 = xi_op(SymOperator::FromMatrix(1, Eigen::MatrixXd::Constant(1, 1, 0.25)),
                                SymOperator::FromMatrix(1, Eigen::MatrixXd::Constant(1, 1, 0.5)));
  CHECK(xi1.rep()(0, 0) == Catch::Approx(1.0).margin(1e-12));

  CHECK_THROWS_AS(xi_op(sigma, SymOperator::Zero(d)), DomainError);
}

TEST_CASE("diagnostic bundle satisfies the sandwich invariant", "[estimators]") {
  Rng rng(307);
  std::vector<SymMatrix> matrices;
  for (int i = 0; i < 10; ++i) matrices.push_back(random_pd(rng, 3));
  const SampleSet data = SampleSet::Create(matrices);
  const SymMatrix q = barycenter(data).q;
  const DiagnosticBundle bundle = build_diagnostics(q, data);
  const Eigen::MatrixXd f_inv = bundle.f.inverse().rep();
  CHECK((bundle.xi.rep() - f_inv * bundle.sigma.rep() * f_inv).norm() <= 1e-9);
  CHECK((bundle.sigma.rep() - bundle.sigma.rep().transpose()).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(bundle.xi.rep(), Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() >= -1e-12 * es.eigenvalues().cwiseAbs().maxCoeff());
}

TEST_CASE("discrepancy scalars", "[estimators]") {
  Rng rng(308);
  const SymMatrix q = random_pd(rng, 3);
  const SymOperator f = f_op(q, SampleSet::Create({random_pd(rng, 3), random_pd(rng, 3)}));

  const DiscrepancyScalars zero = discrepancy(q, q, f, f);
  CHECK(zero.q <= 1e-12);
  CHECK(zero.f <= 1e-12);
  CHECK(zero.eta <= 1e-11);

  const SymMatrix q2 = SymMatrix::FromSymmetric(2.0 * q.mat());
  const DiscrepancyScalars scaled = discrepancy(q, q2, f, f);
  CHECK(scaled.q == Catch::Approx(1.0).margin(1e-10));
  CHECK(scaled.f <= 1e-12);
  CHECK(scaled.eta == Catch::Approx(2.0 * std::sqrt(condition_number(f))).epsilon(1e-9));

  // independent norm computation for a random perturbation
  const SymMatrix q3 = random_pd(rng, 3, 0.8, 1.4);
  const DiscrepancyScalars ds = discrepancy(q, q3, f, f);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esq(q.mat());
  const Eigen::MatrixXd w =
      esq.operatorInverseSqrt() * q3.mat() * esq.operatorInverseSqrt() -
      Eigen::MatrixXd::Identity(3, 3);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esw(w, Eigen::EigenvaluesOnly);
  CHECK(ds.q == Catch::Approx(esw.eigenvalues().cwiseAbs().maxCoeff()).epsilon(1e-9));
  CHECK(ds.eta == Catch::Approx(2.0 * std::sqrt(condition_number(f)) * (ds.q + ds.f)).epsilon(1e-12));
}

TEST_CASE("gaussian sampler closed forms and determinism", "[estimators]") {
  const int d = 3, m = sym_space_dim(d);
  const std::vector<double> zeros = sample_gaussian_stat(SymOperator::Zero(d), nullptr, 100, 5);
  for (double v : zeros) CHECK(v == 0.0);

  const std::vector<double> a = sample_gaussian_stat(SymOperator::Identity(d), nullptr, 50, 7);
  const std::vector<double> b = sample_gaussian_stat(SymOperator::Identity(d), nullptr, 50, 7);
  CHECK(a == b);

  // applying the identity operator must not change the statistic
  const SymOperator eye = SymOperator::Identity(d);
  const std::vector<double> c = sample_gaussian_stat(eye, &eye, 50, 7);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == Catch::Approx(a[i]).epsilon(1e-12));
  (void)m;
}

TEST_CASE("gaussian sampler chi-square moment", "[estimators]") {
  const int d = 3;
  const int m = sym_space_dim(d);
  const int n_draws = 100000;
  const std::vector<double> stats =
      sample_gaussian_stat(SymOperator::Identity(d), nullptr, n_draws, 11);
  double mean_sq = 0.0;
  for (double v : stats) mean_sq += v * v / static_cast<double>(n_draws);
  const double sigma = std::sqrt(2.0 * m / static_cast<double>(n_draws));
  CHECK(std::abs(mean_sq - m) <= 5.0 * sigma);
}

TEST_CASE("gaussian sampler reproduces the target covariance", "[estimators]") {
  Rng rng(309);
  const int d = 2, m = sym_space_dim(d);
  const Eigen::MatrixXd g = bwbtest::random_gaussian(rng, m, m);
  const SymOperator xi = SymOperator::FromMatrix(d, g * g.transpose());
  const int n_draws = 100000;

  // re-draw the vectors the same way the sampler does and accumulate covariance
  const Eigen::MatrixXd root = detail::sqrt_psd_raw(xi.rep());
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < n_draws; ++i) {
    Rng draw = Rng::stream(13, static_cast<std::uint64_t>(i));
    Eigen::VectorXd gv(m);
    for (int j = 0; j < m; ++j) gv(j) = draw.normal();
    const Eigen::VectorXd z = root * gv;
    cov.noalias() += z * z.transpose() / static_cast<double>(n_draws);
  }
  const double tol = 5.0 * xi.operator_norm() / std::sqrt(static_cast<double>(n_draws));
  CHECK((cov - xi.rep()).cwiseAbs().maxCoeff() <= tol);

  // and the sampler's norms match the same stream
  const std::vector<double> stats = sample_gaussian_stat(xi, nullptr, 100, 13);
  Rng draw0 = Rng::stream(13, 0);
  Eigen::VectorXd gv(m);
  for (int j = 0; j < m; ++j) gv(j) = draw0.normal();
  CHECK(stats[0] == Catch::Approx((root * gv).norm()).epsilon(1e-12));
}

TEST_CASE("fitted sandwich covariance approaches a large-sample reference", "[estimators]") {
  const SbmConfig cfg = desk_sbm(4);
  const double r = kDefaultRegularization;
  SolverConfig solver;

  auto fit_xi = [&](std::size_t n, std::uint64_t seed) {
    const SampleSet data =
        SampleSet{sample_matrices(cfg, r, n, seed), std::vector<double>(n, 1.0)};
    const SymMatrix q = barycenter(data, solver).q;
    return build_diagnostics(q, data).xi;
  };

  const SymOperator xi_ref = fit_xi(4000, 999);
  std::vector<double> err_small, err_large;
  for (int rep = 0; rep < 20; ++rep) {
    const auto seed = static_cast<std::uint64_t>(1000 + rep);
    err_small.push_back(nuclear_norm(fit_xi(40, seed).rep() - xi_ref.rep()));
    err_large.push_back(nuclear_norm(fit_xi(160, seed ^ 0xF00DULL).rep() - xi_ref.rep()));
  }
  CHECK(median(err_large) < median(err_small));
}
