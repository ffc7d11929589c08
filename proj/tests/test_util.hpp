#pragma once

#include <Eigen/Dense>

#include "bwb/rng.hpp"
#include "bwb/sym_matrix.hpp"

namespace bwbtest {

inline Eigen::MatrixXd random_gaussian(bwb::Rng& rng, int rows, int cols) {
  Eigen::MatrixXd g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = rng.normal();
  }
  return g;
}

inline Eigen::MatrixXd random_orthogonal(bwb::Rng& rng, int d) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_gaussian(rng, d, d));
  return qr.householderQ();
}

inline Eigen::MatrixXd random_symmetric(bwb::Rng& rng, int d, double scale = 1.0) {
  const Eigen::MatrixXd g = random_gaussian(rng, d, d);
  return scale * 0.5 * (g + g.transpose());
}

/// Random PD matrix with eigenvalues drawn uniformly from [lo, hi].
inline bwb::SymMatrix random_pd(bwb::Rng& rng, int d, double lo = 0.5, double hi = 2.0) {
  const Eigen::MatrixXd v = random_orthogonal(rng, d);
  Eigen::VectorXd lambda(d);
  for (int i = 0; i < d; ++i) lambda(i) = rng.uniform(lo, hi);
  return bwb::SymMatrix::FromSymmetric(v * lambda.asDiagonal() * v.transpose());
}

/// Random PSD matrix with exactly `rank` positive eigenvalues.
inline bwb::SymMatrix random_psd_rank(bwb::Rng& rng, int d, int rank, double lo = 0.5,
                                      double hi = 2.0) {
  const Eigen::MatrixXd v = random_orthogonal(rng, d);
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < rank; ++i) lambda(i) = rng.uniform(lo, hi);
  return bwb::SymMatrix::FromSymmetric(v * lambda.asDiagonal() * v.transpose());
}

}  // namespace bwbtest
