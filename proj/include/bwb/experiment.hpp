#pragma once

#include <cstdint>
#include <vector>

#include "bwb/barycenter.hpp"
#include "bwb/bootstrap.hpp"
#include "bwb/rng.hpp"
#include "bwb/sbm.hpp"
#include "bwb/sym_matrix.hpp"

namespace bwb {

/// Default Laplacian regularization for the synthetic-graph experiment.
inline constexpr double kDefaultRegularization = 1.0;

/// The two-community benchmark generator: edge probabilities 0.8 / 0.5
/// within the communities, 0.2 across, Poisson weight means 12 / 7 / 2.
/// Block sizes are `base_sizes` with the first block jittered by
/// +-size_jitter per graph.
inline SbmConfig two_block_sbm(int d, std::vector<int> base_sizes, int size_jitter,
                               std::uint64_t seed = 0) {
  SbmConfig cfg;
  cfg.d = d;
  cfg.block_sizes = std::move(base_sizes);
  cfg.p = Eigen::MatrixXd(2, 2);
  cfg.p << 0.8, 0.2, 0.2, 0.5;
  cfg.weight_means = Eigen::MatrixXd(2, 2);
  cfg.weight_means << 12.0, 2.0, 2.0, 7.0;
  cfg.size_jitter = size_jitter;
  cfg.seed = seed;
  return cfg;
}

/// Full-size benchmark: 20 nodes, communities of 10 +- 2.
inline SbmConfig paper6_sbm(std::uint64_t seed = 0) { return two_block_sbm(20, {10, 10}, 2, seed); }

/// Desk-scale benchmark: d nodes split evenly, no size jitter.
inline SbmConfig desk_sbm(int d = 8, std::uint64_t seed = 0) {
  return two_block_sbm(d, {d / 2, d - d / 2}, 0, seed);
}

/// One data matrix: SBM graph -> Laplacian -> (L + r I)^{-1}.
inline SymMatrix sample_matrix(SbmConfig cfg, double r, std::uint64_t seed) {
  cfg.seed = seed;
  return invert_laplacian(laplacian(generate_sbm(cfg)), r);
}

/// n data matrices with per-graph seeds derived from (seed, index); the i-th
/// matrix does not depend on how many others are drawn or by whom.
inline std::vector<SymMatrix> sample_matrices(const SbmConfig& cfg, double r, std::size_t n,
                                              std::uint64_t seed) {
  std::vector<SymMatrix> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(sample_matrix(cfg, r, derive_stream(seed, i)));
  }
  return out;
}

namespace detail {
inline constexpr std::uint64_t kTagTruthPool = 0x74727574686c7470ULL;
inline constexpr std::uint64_t kTagTruthReps = 0x7472757468726570ULL;
inline constexpr std::uint64_t kTagDataset = 0x64617461736574ULL;
}  // namespace detail

/// Sub-seed for the observed dataset of a pipeline run.
inline std::uint64_t dataset_seed(std::uint64_t master_seed) {
  return derive_stream(master_seed, detail::kTagDataset);
}

struct TruthResult {
  SymMatrix q_star;            // reference barycenter from the n_truth pool
  std::vector<double> stats;   // sqrt(n) * rho(Q_n^(rep), Q_star) per repetition
  EmpiricalCdf cdf;
};

/// Ground-truth harness: estimates the reference barycenter from a pool of
/// n_truth fresh matrices, then draws n_reps independent datasets of size n
/// and records sqrt(n) * rho(Q_n, Q_star) for each.
inline TruthResult build_truth(const SbmConfig& cfg, double r, std::size_t n_truth,
                               std::size_t n, int n_reps, StatKind stat,
                               const SolverConfig& solver_cfg, std::uint64_t seed) {
  if (n_truth < 1 || n < 1 || n_reps < 1) {
    throw ConfigError("build_truth: n_truth, n and n_reps must be >= 1");
  }
  const std::uint64_t pool_seed = derive_stream(seed, detail::kTagTruthPool);
  const SampleSet pool = SampleSet{sample_matrices(cfg, r, n_truth, pool_seed),
                                   std::vector<double>(n_truth, 1.0)};
  TruthResult truth;
  truth.q_star = barycenter(pool, solver_cfg).q;

  const double scale = std::sqrt(static_cast<double>(n));
  const std::uint64_t reps_seed = derive_stream(seed, detail::kTagTruthReps);
  truth.stats.reserve(static_cast<std::size_t>(n_reps));
  for (int rep = 0; rep < n_reps; ++rep) {
    const std::uint64_t rep_seed = derive_stream(reps_seed, static_cast<std::uint64_t>(rep));
    const SampleSet data = SampleSet{sample_matrices(cfg, r, n, rep_seed),
                                     std::vector<double>(n, 1.0)};
    const SymMatrix q_n = barycenter(data, solver_cfg).q;
    const double rho = stat == StatKind::Frobenius
                           ? (q_n.mat() - truth.q_star.mat()).norm()
                           : detail::bw_distance_raw(q_n.mat(), truth.q_star.mat());
    truth.stats.push_back(scale * rho);
  }
  truth.cdf = EmpiricalCdf::FromValues(truth.stats);
  return truth;
}

}  // namespace bwb
