#pragma once

#include <Eigen/Dense>
#include <utility>

#include "bwb/errors.hpp"
#include "bwb/sym_matrix.hpp"

namespace bwb {

/// Linear self-adjoint operator on the space of symmetric d x d matrices,
/// stored as its m x m matrix in the sym_vec basis, m = d(d+1)/2. Because the
/// basis is orthonormal, operator norms equal matrix norms of the
/// representation and self-adjointness equals matrix symmetry.
class SymOperator {
 public:
  SymOperator() = default;

  /// Wraps an m x m representation; symmetrizes round-off asymmetry but
  /// rejects genuinely asymmetric input.
  static SymOperator FromMatrix(int base_dim, const Eigen::MatrixXd& rep) {
    const int m = sym_space_dim(base_dim);
    if (rep.rows() != m || rep.cols() != m) {
      throw ShapeError("SymOperator: representation size does not match base dimension");
    }
    const double scale = rep.cwiseAbs().maxCoeff();
    const double asym = (rep - rep.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymTol * std::max(scale, 1e-300)) {
      throw ShapeError("SymOperator: representation is not symmetric");
    }
    return SymOperator(base_dim, detail::symmetrize(rep));
  }

  static SymOperator Identity(int base_dim) {
    const int m = sym_space_dim(base_dim);
    return SymOperator(base_dim, Eigen::MatrixXd::Identity(m, m));
  }

  static SymOperator Zero(int base_dim) {
    const int m = sym_space_dim(base_dim);
    return SymOperator(base_dim, Eigen::MatrixXd::Zero(m, m));
  }

  int base_dim() const { return base_dim_; }
  int m() const { return static_cast<int>(rep_.rows()); }
  const Eigen::MatrixXd& rep() const { return rep_; }

  /// Applies the operator to a symmetric matrix.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const {
    if (x.rows() != base_dim_ || x.cols() != base_dim_) {
      throw ShapeError("SymOperator::apply: argument dimension mismatch");
    }
    return sym_unvec(rep_ * sym_vec(x), base_dim_);
  }

  SymOperator compose(const SymOperator& other) const {
    if (other.base_dim_ != base_dim_) {
      throw ShapeError("SymOperator::compose: base dimension mismatch");
    }
    Eigen::MatrixXd prod = rep_ * other.rep_;
    return SymOperator(base_dim_, detail::symmetrize(prod));
  }

  double trace() const { return rep_.trace(); }

  /// Eigenvalues sorted non-increasing.
  Eigen::VectorXd eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rep_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().reverse();
  }

  double operator_norm() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rep_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }

  /// Inverse through the eigendecomposition; DomainError when the smallest
  /// eigenvalue is not safely positive.
  SymOperator inverse(double rel_tol = 1e-12) const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rep_);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
    if (lo <= rel_tol * hi || hi == 0.0) {
      throw DomainError("SymOperator::inverse: operator is singular");
    }
    Eigen::MatrixXd inv =
        es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
    return SymOperator(base_dim_, detail::symmetrize(inv));
  }

 private:
  SymOperator(int base_dim, Eigen::MatrixXd rep) : base_dim_(base_dim), rep_(std::move(rep)) {}

  int base_dim_ = 0;
  Eigen::MatrixXd rep_;
};

}  // namespace bwb
