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

#include <span>
#include <vector>

#include "ncfr/factorize.hpp"

namespace ncfr {

/// Smallest eigenvalue of the hermitian N x N section. Compressions of
/// nonnegative operators are nonnegative, so a strictly negative value
/// certifies non-positivity; positivity is accepted asymptotically.
inline double truncated_min_eig(const AlgebraElement& x,
                                Eigen::Index n = kDefaultTruncation,
                                CVector* eigvec = nullptr,
                                double tol = kDefaultTol) {
  if (n < x.cut() + 1)
    throw std::invalid_argument("truncation must cover the finite corner");
  if (!x.is_hermitian(tol * element_scale(x)))
    throw NotHermitian("truncated_min_eig requires a hermitian element");
  return min_eigenvalue(x.truncate(n), eigvec);
}

/// First row index r0 >= width from which the shift-aligned band rows of m
/// all coincide within tol_abs; -1 when even the last pair differs. Rows
/// of an element of the algebra become *exactly* constant past the cut,
/// while rows that merely converge keep measurable differences.
inline Eigen::Index band_constant_from(const CMatrix& m, Eigen::Index width,
                                       double tol_abs) {
  const Eigen::Index n = m.rows();
  Eigen::Index start = -1;
  for (Eigen::Index r = n - 1; r >= width; --r) {
    double diff = 0;
    for (Eigen::Index j = 0; j < width && j <= r - 1; ++j)
      diff = std::max(diff, std::abs(m(r, r - j) - m(r - 1, r - 1 - j)));
    if (diff <= tol_abs)
      start = r - 1;
    else
      break;
  }
  return start;
}

/// Side-by-side comparison of the forward (LL*) Cholesky of a matrix
/// section against the backward (UL) factor from factorize. The forward
/// diagonal of a banded-plus-corner operator generally drifts forever,
/// while the backward factor is exactly stationary past the cut.
struct ForwardBackwardReport {
  std::vector<double> forward_diagonal;
  Eigen::Index forward_stationary_row;   // -1 when the band never settles
  bool forward_stationary;
  Eigen::Index backward_stationary_row;
  bool backward_stationary;
  TriangularElement factor;
  double factor_residual;
};

inline ForwardBackwardReport forward_vs_backward(const AlgebraElement& x,
                                                 Eigen::Index n = kDefaultTruncation,
                                                 double tol = kDefaultTol) {
  const double scale = element_scale(x);
  if (truncated_min_eig(x, n, nullptr, tol) < -tol * std::max(scale, 1.0))
    throw NotPSD("section has a negative eigenvalue beyond tolerance");
  const CMatrix t = x.truncate(n);
  const auto fc = semidefinite_forward_cholesky(
      t, tol * max_abs(t), kPivotRelTol * max_abs(t));
  if (!fc.ok) throw NotPSD("forward Cholesky failed", fc.min_pivot);

  PositivityCertificate cert = factorize(x, tol);
  if (cert.verdict != Verdict::positive || !cert.factor)
    throw NotPSD("backward construction reports a non-positive element");

  ForwardBackwardReport rep{std::vector<double>(static_cast<size_t>(n)),
                            -1,
                            false,
                            -1,
                            false,
                            std::move(*cert.factor),
                            cert.diagnostics.residual};
  for (Eigen::Index i = 0; i < n; ++i)
    rep.forward_diagonal[static_cast<size_t>(i)] = std::real(fc.factor(i, i));

  const Eigen::Index width = x.cut() + 1;
  const double band_tol = 1e-12 * std::max(1.0, max_abs(t));
  rep.forward_stationary_row = band_constant_from(fc.factor, width, band_tol);
  rep.forward_stationary = rep.forward_stationary_row >= 0;
  rep.backward_stationary_row =
      band_constant_from(rep.factor.truncate(n), width, band_tol);
  rep.backward_stationary = rep.backward_stationary_row >= 0;
  return rep;
}

inline constexpr std::array<int, 6> kDensitySchedule{8, 16, 32, 64, 128, 256};

/// Least-squares residuals ||T_N(q) u - e_0||^2 over u supported on the
/// first N coordinates (the section is rectangular so spill past N counts).
/// For outer q the sequence is nonincreasing and, without circle roots,
/// decays geometrically with ratio |1/root|^2 per step.
inline std::vector<double> density_proxy(
    const AnalyticPolynomial& q,
    std::span<const int> sizes = kDensitySchedule) {
  std::vector<double> out;
  out.reserve(sizes.size());
  const int d = q.degree();
  for (const int n : sizes) {
    const CMatrix a = analytic_band(q, n + d, n);
    CVector b = CVector::Zero(n + d);
    b(0) = 1.0;
    const CVector u = a.colPivHouseholderQr().solve(b);
    out.push_back((a * u - b).squaredNorm());
  }
  return out;
}

}  // namespace ncfr
