#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <numeric>
#include <vector>

#include "bwb/errors.hpp"
#include "bwb/rng.hpp"
#include "bwb/sym_matrix.hpp"

namespace bwb {

/// Weighted stochastic block model configuration. Blocks are labeled
/// contiguously; `p` and `weight_means` are symmetric block-pair matrices.
/// With size_jitter > 0 the first K-1 block sizes get an independent uniform
/// jitter on {-size_jitter, ..., +size_jitter} and the last block absorbs the
/// remainder, keeping the node count fixed.
struct SbmConfig {
  int d = 0;
  std::vector<int> block_sizes;
  Eigen::MatrixXd p;             // edge probabilities per block pair
  Eigen::MatrixXd weight_means;  // Poisson means per block pair
  int size_jitter = 0;
  std::uint64_t seed = 0;

  void validate() const {
    const auto k = static_cast<Eigen::Index>(block_sizes.size());
    if (d < 1 || k < 1) throw ConfigError("SbmConfig: need d >= 1 and at least one block");
    if (std::accumulate(block_sizes.begin(), block_sizes.end(), 0) != d) {
      throw ConfigError("SbmConfig: block sizes must sum to d");
    }
    if (p.rows() != k || p.cols() != k || weight_means.rows() != k || weight_means.cols() != k) {
      throw ConfigError("SbmConfig: block-pair matrices must be K x K");
    }
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        if (p(i, j) < 0.0 || p(i, j) > 1.0) throw ConfigError("SbmConfig: p entries must be in [0, 1]");
        if (weight_means(i, j) <= 0.0) throw ConfigError("SbmConfig: weight means must be positive");
        if (p(i, j) != p(j, i) || weight_means(i, j) != weight_means(j, i)) {
          throw ConfigError("SbmConfig: block-pair matrices must be symmetric");
        }
      }
    }
  }
};

/// Undirected weighted graph without self loops. Edges with Poisson weight 0
/// are kept as edges (indistinguishable from absence in the Laplacian), so
/// presence is tracked separately from the weights.
struct WeightedGraph {
  int d = 0;
  Eigen::MatrixXd adjacency;  // symmetric, non-negative, zero diagonal
  Eigen::MatrixXi edges;      // 0/1 edge presence, symmetric, zero diagonal
  std::vector<int> block_of;  // community label per node
};

/// Draws one graph: jittered block sizes, one Bernoulli edge draw per
/// unordered pair, Poisson weights on present edges (weight 0 is kept).
/// Deterministic for a given cfg.seed.
inline WeightedGraph generate_sbm(const SbmConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);

  std::vector<int> sizes = cfg.block_sizes;
  if (cfg.size_jitter > 0 && sizes.size() > 1) {
    int used = 0;
    for (std::size_t b = 0; b + 1 < sizes.size(); ++b) {
      sizes[b] += static_cast<int>(rng.uniform_int(-cfg.size_jitter, cfg.size_jitter));
      used += sizes[b];
    }
    sizes.back() = cfg.d - used;
  }
  for (int s : sizes) {
    if (s <= 0) throw ConfigError("generate_sbm: non-positive block size after jitter");
  }

  std::vector<int> block_of(static_cast<std::size_t>(cfg.d));
  {
    int node = 0;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      for (int s = 0; s < sizes[b]; ++s) block_of[static_cast<std::size_t>(node++)] = static_cast<int>(b);
    }
  }

  WeightedGraph g;
  g.d = cfg.d;
  g.adjacency = Eigen::MatrixXd::Zero(cfg.d, cfg.d);
  g.edges = Eigen::MatrixXi::Zero(cfg.d, cfg.d);
  g.block_of = block_of;
  for (int i = 0; i < cfg.d; ++i) {
    for (int j = i + 1; j < cfg.d; ++j) {
      const int bi = block_of[static_cast<std::size_t>(i)];
      const int bj = block_of[static_cast<std::size_t>(j)];
      if (!rng.bernoulli(cfg.p(bi, bj))) continue;
      const double w = static_cast<double>(rng.poisson(cfg.weight_means(bi, bj)));
      g.adjacency(i, j) = w;
      g.adjacency(j, i) = w;
      g.edges(i, j) = 1;
      g.edges(j, i) = 1;
    }
  }
  return g;
}

/// Graph Laplacian D - A; PSD with the all-ones vector in its kernel.
inline SymMatrix laplacian(const WeightedGraph& g) {
  Eigen::MatrixXd l = -g.adjacency;
  for (int i = 0; i < g.d; ++i) l(i, i) = g.adjacency.row(i).sum();
  return SymMatrix::FromSymmetric(l);
}

/// Regularized inverse (L + r I)^{-1}; positive definite with eigenvalues in
/// (0, 1/r].
inline SymMatrix invert_laplacian(const SymMatrix& l, double r) {
  if (r <= 0.0) throw ConfigError("invert_laplacian: regularization must be positive");
  if (!l.is_psd()) throw DomainError("invert_laplacian: Laplacian must be positive semi-definite");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l.mat());
  const Eigen::VectorXd inv = (es.eigenvalues().cwiseMax(0.0).array() + r).inverse();
  return SymMatrix::FromSymmetric(
      detail::symmetrize(es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose()));
}

}  // namespace bwb
