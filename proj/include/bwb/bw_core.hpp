#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "bwb/errors.hpp"
#include "bwb/sym_matrix.hpp"
#include "bwb/sym_operator.hpp"

namespace bwb {

namespace detail {

struct EigSym {
  Eigen::VectorXd values;   // ascending, Eigen's convention
  Eigen::MatrixXd vectors;  // columns
};

inline EigSym eig_sym(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  return {es.eigenvalues(), es.eigenvectors()};
}

/// Square root of a PSD matrix given as raw storage; negative round-off
/// eigenvalues are clamped to zero. No definiteness check.
inline Eigen::MatrixXd sqrt_psd_raw(const Eigen::MatrixXd& m) {
  const EigSym es = eig_sym(m);
  Eigen::VectorXd roots = es.values.cwiseMax(0.0).cwiseSqrt();
  return symmetrize(es.vectors * roots.asDiagonal() * es.vectors.transpose());
}

/// Eigenvalues lambda > rank_tol * lambda_max map to lambda^{-1/2}, the rest
/// to zero.
inline Eigen::MatrixXd pinv_sqrt_raw(const Eigen::MatrixXd& m, double rank_tol) {
  const EigSym es = eig_sym(m);
  const double lmax = es.values.maxCoeff();
  Eigen::VectorXd inv_roots(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double l = es.values(i);
    inv_roots(i) = (l > rank_tol * lmax && l > 0.0) ? 1.0 / std::sqrt(l) : 0.0;
  }
  return symmetrize(es.vectors * inv_roots.asDiagonal() * es.vectors.transpose());
}

inline Eigen::MatrixXd ot_map_raw(const Eigen::MatrixXd& q, const Eigen::MatrixXd& s,
                                  double rank_tol) {
  const Eigen::MatrixXd s_half = sqrt_psd_raw(s);
  const Eigen::MatrixXd mid = symmetrize(s_half * q * s_half);
  return symmetrize(s_half * pinv_sqrt_raw(mid, rank_tol) * s_half);
}

inline double trace_sqrt_psd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

inline double bw_distance_raw(const Eigen::MatrixXd& q, const Eigen::MatrixXd& s) {
  const Eigen::MatrixXd s_half = sqrt_psd_raw(s);
  const Eigen::MatrixXd mid = symmetrize(s_half * q * s_half);
  const double d2 = q.trace() + s.trace() - 2.0 * trace_sqrt_psd(mid);
  return std::sqrt(std::max(0.0, d2));
}

/// Applies X -> dT_Q^S(X) without materializing the m x m representation.
/// Obtained by differentiating T Q T = S: (TQ) Y + Y (QT) = -T X T, solved in
/// the eigenbasis of T^{1/2} Q T^{1/2} (similar to TQ). With W = T^{1/2} U,
///   dT(X) = -W [ (W^T X W) ∘ K ] W^T,   K_ij = 1 / (mu_i + mu_j).
class DtApplier {
 public:
  DtApplier(const Eigen::MatrixXd& q, const Eigen::MatrixXd& s, double rank_tol) {
    const Eigen::MatrixXd t = ot_map_raw(q, s, rank_tol);
    const Eigen::MatrixXd g = sqrt_psd_raw(t);
    const EigSym es = eig_sym(symmetrize(g * q * g));
    w_ = g * es.vectors;
    const Eigen::VectorXd& mu = es.values;
    const auto n = mu.size();
    k_.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) k_(i, j) = 1.0 / (mu(i) + mu(j));
    }
  }

  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const {
    const Eigen::MatrixXd b = w_.transpose() * x * w_;
    return symmetrize(-w_ * b.cwiseProduct(k_) * w_.transpose());
  }

 private:
  Eigen::MatrixXd w_;
  Eigen::MatrixXd k_;
};

/// Builds the m x m representation of a linear map given its action on
/// symmetric matrices.
template <typename Apply>
Eigen::MatrixXd operator_rep(int d, Apply&& apply) {
  const int m = sym_space_dim(d);
  Eigen::MatrixXd rep(m, m);
  Eigen::VectorXd coords = Eigen::VectorXd::Zero(m);
  for (int a = 0; a < m; ++a) {
    coords(a) = 1.0;
    rep.col(a) = sym_vec(apply(sym_unvec(coords, d)));
    coords(a) = 0.0;
  }
  return rep;
}

inline void require_same_dim(const SymMatrix& a, const SymMatrix& b, const char* who) {
  if (a.dim() != b.dim()) {
    throw ShapeError(std::string(who) + ": dimension mismatch");
  }
}

}  // namespace detail

/// Default relative rank cutoff for pseudo-inverses.
inline constexpr double kPinvRankTol = 1e-12;

/// PSD square root through the eigendecomposition. Round-off-negative
/// eigenvalues are clamped to zero; genuinely indefinite input is rejected.
inline SymMatrix sqrt_psd(const SymMatrix& m) {
  if (!m.is_psd()) {
    throw DomainError("sqrt_psd: input is not positive semi-definite");
  }
  return SymMatrix::FromSymmetric(detail::sqrt_psd_raw(m.mat()));
}

/// Pseudo-inverse square root: eigenvalues above rank_tol * lambda_max map to
/// lambda^{-1/2}, the rest to zero. The zero matrix maps to zero.
inline SymMatrix pinv_sqrt(const SymMatrix& m, double rank_tol = kPinvRankTol) {
  if (!m.is_psd()) {
    throw DomainError("pinv_sqrt: input is not positive semi-definite");
  }
  return SymMatrix::FromSymmetric(detail::pinv_sqrt_raw(m.mat(), rank_tol));
}

/// Bures-Wasserstein distance
///   d(Q, S)^2 = tr Q + tr S - 2 tr (S^{1/2} Q S^{1/2})^{1/2},
/// clamped at zero before the final square root.
inline double bw_distance(const SymMatrix& q, const SymMatrix& s) {
  detail::require_same_dim(q, s, "bw_distance");
  if (!q.is_psd() || !s.is_psd()) {
    throw DomainError("bw_distance: inputs must be positive semi-definite");
  }
  return detail::bw_distance_raw(q.mat(), s.mat());
}

/// Optimal push-forward from Q to S:
///   T = S^{1/2} [(S^{1/2} Q S^{1/2})^{1/2}]^+ S^{1/2},
/// the unique PSD matrix with T Q T = S when Q is positive definite.
inline SymMatrix ot_map(const SymMatrix& q, const SymMatrix& s,
                        double rank_tol = kPinvRankTol) {
  detail::require_same_dim(q, s, "ot_map");
  if (!q.is_pd()) {
    throw DomainError("ot_map: source matrix must be positive definite");
  }
  if (!s.is_psd()) {
    throw DomainError("ot_map: target matrix must be positive semi-definite");
  }
  return SymMatrix::FromSymmetric(detail::ot_map_raw(q.mat(), s.mat(), rank_tol));
}

/// Frechet differential of Q -> T_Q^S as a self-adjoint, negative
/// semi-definite operator. Requires both arguments positive definite.
inline SymOperator ot_map_differential(const SymMatrix& q, const SymMatrix& s) {
  detail::require_same_dim(q, s, "ot_map_differential");
  if (!q.is_pd()) {
    throw DomainError("ot_map_differential: source matrix must be positive definite");
  }
  if (!s.is_pd()) {
    throw DomainError("ot_map_differential: target matrix must be positive definite");
  }
  const detail::DtApplier dt(q.mat(), s.mat(), kPinvRankTol);
  return SymOperator::FromMatrix(
      q.dim(), detail::operator_rep(q.dim(), [&](const Eigen::MatrixXd& x) { return dt.apply(x); }));
}

/// The operator (-1/2 dT_Q^Q)^{1/2}: in the eigenbasis of Q it scales the
/// (i, j) entry by 1/sqrt(2 (q_i + q_j)). Converts Frobenius displacement
/// into local BW displacement.
inline SymOperator a_operator(const SymMatrix& q) {
  if (!q.is_pd()) {
    throw DomainError("a_operator: input must be positive definite");
  }
  const detail::EigSym es = detail::eig_sym(q.mat());
  const auto d = es.values.size();
  Eigen::MatrixXd scale(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      scale(i, j) = 1.0 / std::sqrt(2.0 * (es.values(i) + es.values(j)));
    }
  }
  const Eigen::MatrixXd& v = es.vectors;
  auto apply = [&](const Eigen::MatrixXd& x) {
    return detail::symmetrize(v * (v.transpose() * x * v).cwiseProduct(scale) * v.transpose());
  };
  return SymOperator::FromMatrix(q.dim(), detail::operator_rep(q.dim(), apply));
}

/// Spectral anti-concentration diagnostics of a PSD operator.
struct SpectrumDiag {
  Eigen::VectorXd eigenvalues;  // non-increasing
  double lambda1_sq = 0.0;      // sum of squared eigenvalues
  double lambda2_sq = 0.0;      // same, excluding the largest
  double varkappa = 0.0;        // (Lambda_1 Lambda_2)^{-1/2}
  double gamma = 0.0;           // varkappa * trace, >= 1
  double trace = 0.0;
};

/// Relative eigenvalue cutoff below which an operator counts as rank-deficient.
inline constexpr double kRankTol = 1e-12;

inline SpectrumDiag spectrum_diag(const SymOperator& psi) {
  Eigen::VectorXd ev = psi.eigenvalues();  // non-increasing
  const double top = ev.size() > 0 ? ev(0) : 0.0;
  if (ev.size() > 0 && ev.minCoeff() < -kSymTol * std::abs(top)) {
    throw DomainError("spectrum_diag: operator is not positive semi-definite");
  }
  ev = ev.cwiseMax(0.0);
  if (ev.size() < 2 || ev(1) <= kRankTol * top) {
    throw RankError("spectrum_diag: rank below 2, diagnostics undefined");
  }
  SpectrumDiag diag;
  diag.eigenvalues = ev;
  diag.lambda1_sq = ev.squaredNorm();
  diag.lambda2_sq = diag.lambda1_sq - ev(0) * ev(0);
  diag.trace = ev.sum();
  diag.varkappa = 1.0 / std::sqrt(std::sqrt(diag.lambda1_sq * diag.lambda2_sq));
  diag.gamma = diag.varkappa * diag.trace;
  return diag;
}

namespace detail {

inline double condition_number_of_spectrum(const Eigen::VectorXd& values, const char* who) {
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  if (lo <= 0.0 || lo <= kRankTol * hi) {
    throw DomainError(std::string(who) + ": input is singular");
  }
  return hi / lo;
}

}  // namespace detail

/// lambda_max / lambda_min of a symmetric positive definite matrix.
inline double condition_number(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.mat(), Eigen::EigenvaluesOnly);
  return detail::condition_number_of_spectrum(es.eigenvalues(), "condition_number");
}

inline double condition_number(const SymOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.rep(), Eigen::EigenvaluesOnly);
  return detail::condition_number_of_spectrum(es.eigenvalues(), "condition_number");
}

}  // namespace bwb
