#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "bwb/barycenter.hpp"
#include "bwb/bw_core.hpp"
#include "bwb/errors.hpp"
#include "bwb/rng.hpp"
#include "bwb/sym_matrix.hpp"
#include "bwb/sym_operator.hpp"

namespace bwb {

/// Centred optimal maps T_i = T_Q^{S_i} - I.
inline std::vector<SymMatrix> centred_maps(const SymMatrix& q, const SampleSet& data) {
  if (!q.is_pd()) throw DomainError("centred_maps: base point must be positive definite");
  if (q.dim() != data.dim()) throw ShapeError("centred_maps: dimension mismatch");
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(q.dim(), q.dim());
  std::vector<SymMatrix> maps;
  maps.reserve(data.size());
  for (const SymMatrix& s : data.matrices) {
    maps.push_back(SymMatrix::FromSymmetric(detail::ot_map_raw(q.mat(), s.mat(), kPinvRankTol) - eye));
  }
  return maps;
}

/// Empirical covariance of the centred maps,
///   Sigma = (1/n) sum_i vec(T_i) vec(T_i)^T,
/// positive semi-definite by construction.
inline SymOperator sigma_op(const SymMatrix& q, const SampleSet& data) {
  const std::vector<SymMatrix> maps = centred_maps(q, data);
  const int m = sym_space_dim(q.dim());
  Eigen::MatrixXd rep = Eigen::MatrixXd::Zero(m, m);
  for (const SymMatrix& t : maps) {
    const Eigen::VectorXd v = sym_vec(t.mat());
    rep.noalias() += v * v.transpose();
  }
  rep /= static_cast<double>(maps.size());
  return SymOperator::FromMatrix(q.dim(), rep);
}

/// Gluing operator F = -(1/n) sum_i m_i dT_Q^{S_i} with optional multipliers
/// (default all one). Every sample matrix must be positive definite; offenders
/// are reported by index.
inline SymOperator f_op(const SymMatrix& q, const SampleSet& data,
                        const std::vector<double>& multipliers = {}) {
  if (!q.is_pd()) throw DomainError("f_op: base point must be positive definite");
  if (q.dim() != data.dim()) throw ShapeError("f_op: dimension mismatch");
  if (!multipliers.empty() && multipliers.size() != data.size()) {
    throw ShapeError("f_op: multiplier count does not match sample size");
  }
  std::string offenders;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data.matrices[i].is_pd()) {
      offenders += offenders.empty() ? std::to_string(i) : ", " + std::to_string(i);
    }
  }
  if (!offenders.empty()) {
    throw DomainError("f_op: singular sample matrices at indices [" + offenders + "]");
  }

  const int d = q.dim();
  const int m = sym_space_dim(d);
  Eigen::MatrixXd rep = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double mult = multipliers.empty() ? 1.0 : multipliers[i];
    if (mult == 0.0) continue;
    const detail::DtApplier dt(q.mat(), data.matrices[i].mat(), kPinvRankTol);
    rep.noalias() -=
        mult * detail::operator_rep(d, [&](const Eigen::MatrixXd& x) { return dt.apply(x); });
  }
  rep /= static_cast<double>(data.size());
  return SymOperator::FromMatrix(d, detail::symmetrize(rep));
}

/// Sandwich covariance Xi = F^{-1} Sigma F^{-1}, symmetrized after
/// composition to kill round-off asymmetry.
inline SymOperator xi_op(const SymOperator& sigma, const SymOperator& f) {
  if (sigma.base_dim() != f.base_dim()) throw ShapeError("xi_op: base dimension mismatch");
  const SymOperator f_inv = f.inverse();  // DomainError when F singular
  Eigen::MatrixXd rep = f_inv.rep() * sigma.rep() * f_inv.rep();
  return SymOperator::FromMatrix(sigma.base_dim(), detail::symmetrize(rep));
}

/// The q / f / eta discrepancy scalars: operator-norm distances of Q and F
/// from their references, combined as eta = 2 sqrt(kappa(F_ref)) (q + f).
struct DiscrepancyScalars {
  double q = 0.0;
  double f = 0.0;
  double eta = 0.0;
};

inline DiscrepancyScalars discrepancy(const SymMatrix& q_ref, const SymMatrix& q,
                                      const SymOperator& f_ref, const SymOperator& f) {
  if (q_ref.dim() != q.dim() || f_ref.base_dim() != f.base_dim()) {
    throw ShapeError("discrepancy: dimension mismatch");
  }
  if (!q_ref.is_pd() || !q.is_pd()) {
    throw DomainError("discrepancy: matrices must be positive definite");
  }
  const Eigen::MatrixXd qr_inv_half = detail::pinv_sqrt_raw(q_ref.mat(), kPinvRankTol);
  const Eigen::MatrixXd q_white = detail::symmetrize(qr_inv_half * q.mat() * qr_inv_half) -
                                  Eigen::MatrixXd::Identity(q.dim(), q.dim());
  const Eigen::MatrixXd fr_inv_half = detail::pinv_sqrt_raw(f_ref.rep(), kPinvRankTol);
  const Eigen::MatrixXd f_white = detail::symmetrize(fr_inv_half * f.rep() * fr_inv_half) -
                                  Eigen::MatrixXd::Identity(f.m(), f.m());

  DiscrepancyScalars out;
  out.q = SymMatrix::FromSymmetric(q_white).operator_norm();
  out.f = SymMatrix::FromSymmetric(f_white).operator_norm();
  out.eta = 2.0 * std::sqrt(condition_number(f_ref)) * (out.q + out.f);
  return out;
}

/// The fitted operator family at a base point: Sigma, F, Xi = F^{-1} Sigma
/// F^{-1} and the local BW scaling operator A.
struct DiagnosticBundle {
  SymOperator sigma;
  SymOperator f;
  SymOperator xi;
  SymOperator a;
  SymMatrix base_point;
};

inline DiagnosticBundle build_diagnostics(const SymMatrix& q, const SampleSet& data) {
  DiagnosticBundle bundle;
  bundle.sigma = sigma_op(q, data);
  bundle.f = f_op(q, data);
  bundle.xi = xi_op(bundle.sigma, bundle.f);
  bundle.a = a_operator(q);
  bundle.base_point = q;
  return bundle;
}

/// Draws Z ~ N(0, Xi) through the symmetric square root of Xi (rank-deficient
/// Xi is fine) and records ||Z||_F per draw, or ||A Z||_F when `a` is given.
/// Draw i consumes its own sub-stream of `seed`, so the list is reproducible
/// for any parallel partition of the draws.
inline std::vector<double> sample_gaussian_stat(const SymOperator& xi, const SymOperator* a,
                                                int n_draws, std::uint64_t seed) {
  if (n_draws < 1) throw ConfigError("sample_gaussian_stat: n_draws must be >= 1");
  if (a != nullptr && a->base_dim() != xi.base_dim()) {
    throw ShapeError("sample_gaussian_stat: operator dimension mismatch");
  }
  const int m = xi.m();
  const Eigen::MatrixXd root = detail::sqrt_psd_raw(xi.rep());
  std::vector<double> stats(static_cast<std::size_t>(n_draws));
  Eigen::VectorXd g(m);
  for (int i = 0; i < n_draws; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    for (int j = 0; j < m; ++j) g(j) = rng.normal();
    Eigen::VectorXd z = root * g;
    if (a != nullptr) z = a->rep() * z;
    stats[static_cast<std::size_t>(i)] = z.norm();
  }
  return stats;
}

}  // namespace bwb
