#pragma once

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

#include "bwb/bw_core.hpp"
#include "bwb/errors.hpp"
#include "bwb/sym_matrix.hpp"

namespace bwb {

/// Ordered collection of PSD matrices with per-item non-negative weights.
struct SampleSet {
  std::vector<SymMatrix> matrices;
  std::vector<double> weights;

  /// Validates dimensions, PSD-ness and weights; missing weights default to 1.
  static SampleSet Create(std::vector<SymMatrix> matrices, std::vector<double> weights = {}) {
    if (matrices.empty()) {
      throw ShapeError("SampleSet: empty sample");
    }
    const int d = matrices.front().dim();
    for (const SymMatrix& m : matrices) {
      if (m.dim() != d) throw ShapeError("SampleSet: mixed dimensions");
      if (!m.is_psd()) throw DomainError("SampleSet: matrix is not positive semi-definite");
    }
    if (weights.empty()) {
      weights.assign(matrices.size(), 1.0);
    }
    if (weights.size() != matrices.size()) {
      throw ShapeError("SampleSet: weight count does not match matrix count");
    }
    double total = 0.0;
    bool has_pd = false;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] < 0.0) throw WeightError("SampleSet: negative weight");
      total += weights[i];
      has_pd = has_pd || (weights[i] > 0.0 && matrices[i].is_pd());
    }
    if (total <= 0.0) throw WeightError("SampleSet: total weight is zero");
    if (!has_pd) {
      throw DomainError("SampleSet: no positively weighted positive definite matrix");
    }
    return SampleSet{std::move(matrices), std::move(weights)};
  }

  std::size_t size() const { return matrices.size(); }
  int dim() const { return matrices.empty() ? 0 : matrices.front().dim(); }
};

struct SolverConfig {
  int max_iter = 500;
  double tol = 1e-10;  // residual threshold, Frobenius relative to tr Q
  bool use_provided_init = false;
  SymMatrix provided_init;  // used when use_provided_init
  double eig_floor = 1e-12;
  bool track_objective = false;
};

struct BarycenterResult {
  SymMatrix q;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<double> objective_trace;  // filled when cfg.track_objective
};

namespace detail {

/// Fixed-point solver on raw views; the bootstrap path calls this directly
/// with replicate weights to avoid copying the sample.
inline BarycenterResult solve_barycenter(std::span<const SymMatrix> matrices,
                                         std::span<const double> weights,
                                         const SolverConfig& cfg) {
  if (cfg.max_iter < 1 || cfg.tol <= 0.0) {
    throw ConfigError("barycenter: max_iter must be >= 1 and tol > 0");
  }
  const int d = matrices.empty() ? 0 : matrices.front().dim();
  if (d == 0) throw ShapeError("barycenter: empty sample");

  double total_weight = 0.0;
  bool has_pd = false;
  std::vector<std::size_t> active;
  active.reserve(matrices.size());
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    if (weights[i] < 0.0) throw WeightError("barycenter: negative weight");
    if (weights[i] == 0.0) continue;  // zero-weight items never enter the iteration
    total_weight += weights[i];
    has_pd = has_pd || matrices[i].is_pd();
    active.push_back(i);
  }
  if (total_weight <= 0.0) throw WeightError("barycenter: total weight is zero");
  if (!has_pd) {
    throw DomainError("barycenter: no positively weighted positive definite matrix");
  }

  Eigen::MatrixXd q;
  if (cfg.use_provided_init) {
    if (cfg.provided_init.dim() != d) {
      throw ShapeError("barycenter: provided initial point has wrong dimension");
    }
    q = cfg.provided_init.mat();
  } else {
    q = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i : active) q += (weights[i] / total_weight) * matrices[i].mat();
  }

  double weighted_trace_s = 0.0;
  if (cfg.track_objective) {
    for (std::size_t i : active) {
      weighted_trace_s += (weights[i] / total_weight) * matrices[i].mat().trace();
    }
  }

  BarycenterResult result;
  for (int k = 1; k <= cfg.max_iter; ++k) {
    const EigSym es = eig_sym(q);
    const double floor = cfg.eig_floor * q.trace();
    const Eigen::VectorXd vals = es.values.cwiseMax(floor);
    const Eigen::MatrixXd q_floored =
        symmetrize(es.vectors * vals.asDiagonal() * es.vectors.transpose());
    const Eigen::MatrixXd q_half =
        es.vectors * vals.cwiseSqrt().asDiagonal() * es.vectors.transpose();
    const Eigen::MatrixXd q_inv_half =
        es.vectors * vals.cwiseSqrt().cwiseInverse().asDiagonal() * es.vectors.transpose();

    Eigen::MatrixXd mean_map = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i : active) {
      mean_map += (weights[i] / total_weight) *
                  sqrt_psd_raw(symmetrize(q_half * matrices[i].mat() * q_half));
    }

    result.iterations = k;
    result.residual = (q_floored - mean_map).norm() / q_floored.trace();
    if (cfg.track_objective) {
      result.objective_trace.push_back(q_floored.trace() + weighted_trace_s -
                                       2.0 * mean_map.trace());
    }
    if (result.residual <= cfg.tol || k == cfg.max_iter) {
      result.q = SymMatrix::FromSymmetric(q_floored);
      result.converged = result.residual <= cfg.tol;
      return result;
    }
    q = symmetrize(q_inv_half * mean_map * mean_map * q_inv_half);
  }
  return result;  // unreachable
}

}  // namespace detail

/// Weighted Bures-Wasserstein barycenter by fixed-point iteration
///   Q <- Q^{-1/2} (sum_i w_i (Q^{1/2} S_i Q^{1/2})^{1/2})^2 Q^{-1/2}
/// with normalized weights, initialized at the Euclidean mean unless a start
/// point is provided. Iterate eigenvalues are floored at eig_floor * tr Q
/// before the inverse square root, so the iteration stays defined when PSD
/// inputs dominate.
inline BarycenterResult barycenter(const SampleSet& data, const SolverConfig& cfg = {}) {
  return detail::solve_barycenter(data.matrices, data.weights, cfg);
}

/// Relative fixed-point residual
///   || Q - sum_i w_i (Q^{1/2} S_i Q^{1/2})^{1/2} ||_F / tr Q.
inline double residual(const SymMatrix& q, const SampleSet& data) {
  if (!q.is_pd()) throw DomainError("residual: evaluation point must be positive definite");
  if (q.dim() != data.dim()) throw ShapeError("residual: dimension mismatch");
  double total = 0.0;
  for (double w : data.weights) total += w;
  const Eigen::MatrixXd q_half = detail::sqrt_psd_raw(q.mat());
  Eigen::MatrixXd mean_map = Eigen::MatrixXd::Zero(q.dim(), q.dim());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.weights[i] == 0.0) continue;
    mean_map += (data.weights[i] / total) *
                detail::sqrt_psd_raw(detail::symmetrize(q_half * data.matrices[i].mat() * q_half));
  }
  return (q.mat() - mean_map).norm() / q.mat().trace();
}

/// || sum_i w_i T_Q^{S_i} - I ||_F: vanishes exactly at the weighted
/// barycenter, where the mean optimal map is the identity.
inline double mean_map_check(const SymMatrix& q, const SampleSet& data) {
  if (!q.is_pd()) throw DomainError("mean_map_check: evaluation point must be positive definite");
  if (q.dim() != data.dim()) throw ShapeError("mean_map_check: dimension mismatch");
  double total = 0.0;
  for (double w : data.weights) total += w;
  Eigen::MatrixXd mean_t = Eigen::MatrixXd::Zero(q.dim(), q.dim());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.weights[i] == 0.0) continue;
    mean_t += (data.weights[i] / total) *
              detail::ot_map_raw(q.mat(), data.matrices[i].mat(), kPinvRankTol);
  }
  return (mean_t - Eigen::MatrixXd::Identity(q.dim(), q.dim())).norm();
}

}  // namespace bwb
