#pragma once

#include <Eigen/Dense>
#include <utility>

#include "bwb/errors.hpp"

namespace bwb {

/// Relative symmetry / PSD classification tolerance.
inline constexpr double kSymTol = 1e-10;

enum class Definiteness { PositiveDefinite, PositiveSemiDefinite, Indefinite };

namespace detail {

inline Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd s(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    s(i, i) = a(i, i);
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

}  // namespace detail

/// Dense real symmetric d x d matrix with its definiteness classified once at
/// construction. Entries are stored exactly symmetric; instances are immutable.
class SymMatrix {
 public:
  SymMatrix() = default;

  /// Classifies `a` after symmetrizing it. Throws ShapeError for non-square
  /// input and ShapeError if the asymmetry exceeds kSymTol * ||a||.
  static SymMatrix FromDense(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) {
      throw ShapeError("SymMatrix: input is not square");
    }
    const double scale = a.cwiseAbs().maxCoeff(); // 0 for empty/zero input
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymTol * std::max(scale, 1e-300)) {
      throw ShapeError("SymMatrix: input is not symmetric");
    }
    return SymMatrix(detail::symmetrize(a));
  }

  /// As FromDense but skips the asymmetry check: callers that just built
  /// V * D * V^T pass results straight through.
  static SymMatrix FromSymmetric(const Eigen::MatrixXd& a) {
    return SymMatrix(detail::symmetrize(a));
  }

  static SymMatrix Identity(int d) {
    SymMatrix m(Eigen::MatrixXd::Identity(d, d));
    return m;
  }

  static SymMatrix Zero(int d) { return SymMatrix(Eigen::MatrixXd::Zero(d, d)); }

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& mat() const { return entries_; }
  Definiteness definiteness() const { return definiteness_; }

  bool is_psd() const { return definiteness_ != Definiteness::Indefinite; }
  bool is_pd() const { return definiteness_ == Definiteness::PositiveDefinite; }

  double trace() const { return entries_.trace(); }
  double frobenius_norm() const { return entries_.norm(); }

  /// Largest |eigenvalue| (spectral norm).
  double operator_norm() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(entries_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }

 private:
  explicit SymMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    classify();
  }

  void classify() {
    if (entries_.rows() == 0) {
      definiteness_ = Definiteness::PositiveSemiDefinite;
      return;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(entries_, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
    const double tol = kSymTol * hi;
    if (lo > tol) {
      definiteness_ = Definiteness::PositiveDefinite;
    } else if (lo >= -tol) {
      definiteness_ = Definiteness::PositiveSemiDefinite;
    } else {
      definiteness_ = Definiteness::Indefinite;
    }
  }

  Eigen::MatrixXd entries_;
  Definiteness definiteness_ = Definiteness::PositiveSemiDefinite;
};

/// Dimension of the space of symmetric d x d matrices.
inline int sym_space_dim(int d) { return d * (d + 1) / 2; }

/// Coordinates of a symmetric matrix in the orthonormal basis
/// {E_kk} ∪ {(E_kl + E_lk)/√2, k < l}: diagonal entries first, then the
/// strict upper triangle row by row scaled by √2. The map is an isometry
/// between the Frobenius and Euclidean norms.
inline Eigen::VectorXd sym_vec(const Eigen::MatrixXd& x) {
  const int d = static_cast<int>(x.rows());
  Eigen::VectorXd v(sym_space_dim(d));
  int idx = 0;
  for (int k = 0; k < d; ++k) v(idx++) = x(k, k);
  const double sqrt2 = std::sqrt(2.0);
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) v(idx++) = sqrt2 * x(k, l);
  }
  return v;
}

/// Inverse of sym_vec.
inline Eigen::MatrixXd sym_unvec(const Eigen::VectorXd& v, int d) {
  if (v.size() != sym_space_dim(d)) {
    throw ShapeError("sym_unvec: coordinate length does not match dimension");
  }
  Eigen::MatrixXd x(d, d);
  int idx = 0;
  for (int k = 0; k < d; ++k) x(k, k) = v(idx++);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      const double e = inv_sqrt2 * v(idx++);
      x(k, l) = e;
      x(l, k) = e;
    }
  }
  return x;
}

}  // namespace bwb
