// Copyright 2026 The ncfr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <limits>

#include "ncfr/laurent.hpp"

namespace ncfr {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool hermitian_within(const CMatrix& m, double tol) {
  return max_abs(m - m.adjoint()) <= tol;
}

/// N x N section with entries p_{i-j}.
inline CMatrix toeplitz_truncation(const LaurentPoly& p, Eigen::Index n) {
  CMatrix t = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      t(i, j) = p.coeff(static_cast<int>(i - j));
  return t;
}

/// rows x cols section with entries y_{i-j} (zero for i < j).
inline CMatrix analytic_band(const AnalyticPolynomial& q, Eigen::Index rows,
                             Eigen::Index cols) {
  CMatrix t = CMatrix::Zero(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j <= i && j < cols; ++j)
      t(i, j) = q.coeff(static_cast<int>(i - j));
  return t;
}

struct ForwardCholesky {
  CMatrix factor;      // lower triangular, real nonnegative diagonal
  double min_pivot;    // smallest Schur pivot encountered
  bool ok;             // false when a pivot fell below -neg_tol
  Eigen::Index fail_index;
};

/// Column-oriented forward Cholesky M = L L* for hermitian M.
/// Pivots d with d < -neg_tol abort; pivots with d <= zero_tol zero the
/// whole column, which keeps the factor valid for exactly semidefinite
/// inputs.
inline ForwardCholesky semidefinite_forward_cholesky(const CMatrix& m,
                                                     double neg_tol,
                                                     double zero_tol) {
  const Eigen::Index n = m.rows();
  CMatrix l = CMatrix::Zero(n, n);
  double min_pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; ++j) {
    Complex s = m(j, j);
    for (Eigen::Index k = 0; k < j; ++k) s -= l(j, k) * std::conj(l(j, k));
    const double d = std::real(s);
    min_pivot = std::min(min_pivot, d);
    if (d < -neg_tol) return {std::move(l), min_pivot, false, j};
    if (d <= zero_tol) continue;  // column zeroed
    const double root = std::sqrt(d);
    l(j, j) = root;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Complex t = m(i, j);
      for (Eigen::Index k = 0; k < j; ++k) t -= l(i, k) * std::conj(l(j, k));
      l(i, j) = t / root;
    }
  }
  if (n == 0) min_pivot = 0.0;
  return {std::move(l), min_pivot, true, -1};
}

/// Smallest eigenvalue of a hermitian matrix (input is symmetrized first);
/// optionally returns the corresponding eigenvector.
inline double min_eigenvalue(const CMatrix& m, CVector* eigvec = nullptr) {
  CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(
      h, eigvec ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (eigvec) *eigvec = es.eigenvectors().col(0);
  return es.eigenvalues()(0);
}

}  // namespace ncfr
