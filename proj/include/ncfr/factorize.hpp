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

#include <optional>
#include <vector>

#include "ncfr/algebra.hpp"
#include "ncfr/dense.hpp"
#include "ncfr/spectral.hpp"

namespace ncfr {

/// Block partition of a hermitian element at the canonical cut n:
/// corner = leading (n+1)x(n+1) section, tail_rows = the only nonzero rows
/// of the lower-left block (rows n+1..2n over columns 0..n, pure band by
/// canonicality), symbol = the Toeplitz part, which is the whole tail.
struct BlockPartition {
  Eigen::Index cut;
  CMatrix corner;      // (n+1) x (n+1), hermitian
  CMatrix tail_rows;   // n x (n+1); row i is absolute row n+1+i
  LaurentPoly symbol;
};

inline BlockPartition partition(const AlgebraElement& x,
                                double tol = kDefaultTol) {
  if (!x.is_hermitian(tol * element_scale(x)))
    throw NotHermitian("partition requires a hermitian element");
  const Eigen::Index n = x.cut();
  CMatrix b = CMatrix::Zero(n, n + 1);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= n; ++j)
      b(i, j) = x.symbol().coeff(static_cast<int>(n + 1 + i - j));
  return {n, x.truncate(n + 1), std::move(b), x.symbol()};
}

/// The lower-triangular Toeplitz tail of a factor: band y_0..y_d.
struct TailFactor {
  AnalyticPolynomial band;
  CMatrix block(Eigen::Index rows, Eigen::Index cols) const {
    return analytic_band(band, rows, cols);
  }
};

struct VWPair {
  CMatrix v;  // n x (n+1): the tail rows of the factor over the corner
  TailFactor w;
};

/// The blocks below the corner of a lower-triangular factor with tail
/// band q: v(i, j) = y_{(n+1+i)-j}, w = the Toeplitz tail itself.
inline VWPair build_vw(const AnalyticPolynomial& q, Eigen::Index cut) {
  if (q.degree() > cut)
    throw std::invalid_argument("factor degree exceeds the cut");
  CMatrix v = CMatrix::Zero(cut, cut + 1);
  for (Eigen::Index i = 0; i < cut; ++i)
    for (Eigen::Index j = 0; j <= cut; ++j)
      v(i, j) = q.coeff(static_cast<int>(cut + 1 + i - j));
  return {std::move(v), TailFactor{q}};
}

/// Verifies the identity V*W = B (adjoint of the stored lower-left band).
/// The identity holds exactly when the tail band factors the symbol; it is
/// checked per instance rather than assumed.
inline bool check_b_consistency(const BlockPartition& part, const CMatrix& v,
                                const TailFactor& w, double tol) {
  const Eigen::Index n = part.cut;
  if (n == 0) return true;
  const CMatrix lhs = v.adjoint() * w.block(n, n);
  return max_abs(lhs - part.tail_rows.adjoint()) <= tol;
}

/// Factor of the backward (UL) Cholesky decomposition M = U*U.
struct ULFactor {
  CMatrix matrix;    // lower triangular, real nonnegative diagonal
  double min_pivot;  // smallest Schur pivot seen during elimination
};

/// Backward semidefinite Cholesky: lower-triangular U with M = U*U,
/// computed by index-reversal reduction to the forward factorization.
/// Pivots within pivot_tol * max-norm of zero are zeroed with their
/// column; a pivot below the negative tolerance raises NotPSD.
inline ULFactor backward_cholesky(const CMatrix& m,
                                  double pivot_tol = kPivotRelTol) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("backward_cholesky requires a square matrix");
  const Eigen::Index n = m.rows();
  const CMatrix h = 0.5 * (m + m.adjoint());
  const double tau = pivot_tol * max_abs(h);
  const CMatrix flipped = h.reverse();
  const auto fc = semidefinite_forward_cholesky(flipped, tau, tau);
  if (!fc.ok)
    throw NotPSD("matrix is not positive semidefinite", fc.min_pivot,
                 static_cast<long>(n - 1 - fc.fail_index));
  CMatrix u(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      u(i, j) = std::conj(fc.factor(n - 1 - j, n - 1 - i));
  return {std::move(u), fc.min_pivot};
}

enum class ProjectorMode { identity, computed };

/// Finite-dimensional check of the range-projection bound: when the block
/// matrix (A, V*W; W*V, W*W) is PSD then A >= V* P V with P the projector
/// onto Ran W. Given a factor U with A - V*P V = U*U, the assembled
/// product ((U,0),(PV,W))* ((U,0),(PV,W)) reproduces the block matrix.
struct BlockBoundReport {
  bool precondition_psd;
  bool bound_holds;
  double full_min_eig;
  double schur_min_eig;
  CMatrix assembled;        // empty unless a factor was supplied
  double reassembly_error;  // max-norm gap to the original block matrix
};

inline CMatrix range_projector(const CMatrix& w) {
  Eigen::JacobiSVD<CMatrix> svd(w, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  const double cutoff = sv.size() ? 1e-12 * sv(0) : 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  const CMatrix basis = svd.matrixU().leftCols(rank);
  return basis * basis.adjoint();
}

inline BlockBoundReport block_bound_check(const CMatrix& a, const CMatrix& v,
                                          const CMatrix& w, ProjectorMode mode,
                                          double tol,
                                          const CMatrix* ul = nullptr) {
  const Eigen::Index h = a.rows(), k = w.rows();
  if (a.cols() != h || v.rows() != k || v.cols() != h || w.cols() != k)
    throw std::invalid_argument("block dimensions are inconsistent");
  CMatrix full(h + k, h + k);
  full.topLeftCorner(h, h) = a;
  full.topRightCorner(h, k) = v.adjoint() * w;
  full.bottomLeftCorner(k, h) = w.adjoint() * v;
  full.bottomRightCorner(k, k) = w.adjoint() * w;

  BlockBoundReport rep;
  rep.full_min_eig = min_eigenvalue(full);
  rep.precondition_psd = rep.full_min_eig >= -tol;
  const CMatrix proj = mode == ProjectorMode::identity
                           ? CMatrix::Identity(k, k)
                           : range_projector(w);
  rep.schur_min_eig = min_eigenvalue(a - v.adjoint() * proj * v);
  rep.bound_holds = rep.schur_min_eig >= -tol;
  rep.reassembly_error = 0.0;
  if (ul) {
    CMatrix g(h + k, h + k);
    g.setZero();
    g.topLeftCorner(h, h) = *ul;
    g.bottomLeftCorner(k, h) = proj * v;
    g.bottomRightCorner(k, k) = w;
    rep.assembled = g.adjoint() * g;
    rep.reassembly_error = max_abs(rep.assembled - full);
  }
  return rep;
}

enum class Verdict { positive, not_positive };

struct CircleWitness {
  double angle;
  double value;  // symbol value at the angle, strictly negative
};

struct VectorWitness {
  CVector v;     // finitely supported vector
  double value;  // <Xv, v>, strictly negative
};

struct Diagnostics {
  double residual = 0.0;          // max deviation of Y*Y from the input
  std::vector<Complex> q_roots;   // roots of the spectral factor
  double min_pivot = 0.0;         // smallest UL pivot
  double symbol_min = 0.0;        // minimum of the symbol on the circle
};

/// Either a triangular factor Y with X = Y*Y, or a checkable witness of
/// non-positivity (a circle point with negative symbol value, or a finite
/// vector with negative quadratic form).
struct PositivityCertificate {
  Verdict verdict;
  std::optional<TriangularElement> factor;
  std::optional<CircleWitness> circle_witness;
  std::optional<VectorWitness> vector_witness;
  Diagnostics diagnostics;
};

namespace detail {

inline double quadratic_form(const AlgebraElement& x, const CVector& v) {
  const Eigen::Index n = v.size();
  const CMatrix t = x.truncate(std::max<Eigen::Index>(n, 1));
  return std::real(
      (v.adjoint() * t.topLeftCorner(n, n) * v)(0, 0));
}

/// Materializes a finite vector with negative quadratic form once the
/// corner Schur complement M = A - V*V has a negative eigenvalue. Small
/// matrix sections usually expose one directly; otherwise the eigenvector
/// of M is extended by a least-squares tail solve so that the tail block
/// nearly reproduces V phi, which drives the form down to <M phi, phi>.
inline VectorWitness lift_negative_witness(const AlgebraElement& x,
                                           const CMatrix& schur,
                                           const CMatrix& v,
                                           const AnalyticPolynomial& q,
                                           double scale) {
  const double accept = -1e-13 * std::max(scale, 1e-12);
  const Eigen::Index cut = x.cut();
  for (Eigen::Index n :
       {cut + 2, 2 * cut + 8, Eigen::Index(32), Eigen::Index(64),
        Eigen::Index(128), Eigen::Index(200), Eigen::Index(400)}) {
    if (n <= cut) continue;
    CVector vec;
    const double lam = min_eigenvalue(x.truncate(n), &vec);
    if (lam < accept) {
      const double val = quadratic_form(x, vec);
      if (val < 0.0) return {std::move(vec), val};
    }
  }

  CVector phi;
  min_eigenvalue(schur, &phi);
  const int d = q.degree();
  for (const int tail : {64, 128, 256, 512}) {
    const Eigen::Index rows = tail + d;
    const CMatrix w = analytic_band(q, rows, tail);
    CVector b = CVector::Zero(rows);
    if (v.rows() > 0) b.head(v.rows()) = v * phi;
    const CVector psi = w.colPivHouseholderQr().solve(b);
    const Eigen::Index total = cut + 1 + rows;
    auto assemble = [&](double t) {
      CVector full = CVector::Zero(total);
      full.head(cut + 1) = phi;
      full.segment(cut + 1, tail) = t * psi;
      return full;
    };
    // quadratic in t: recover the minimizer from three evaluations
    const double f0 = quadratic_form(x, assemble(0.0));
    const double fp = quadratic_form(x, assemble(1.0));
    const double fm = quadratic_form(x, assemble(-1.0));
    const double curve = 0.5 * (fp + fm) - f0;
    const double slope = 0.5 * (fp - fm);
    const double tstar = curve > 0.0 ? -slope / (2.0 * curve) : 1.0;
    const CVector cand = assemble(tstar);
    const double val = quadratic_form(x, cand);
    if (val < accept) return {cand, val};
  }
  throw InternalInconsistency(
      "failed to materialize a negative witness for an indefinite element");
}

inline PositivityCertificate not_positive_at_angle(double angle, double value,
                                                   Diagnostics diag) {
  PositivityCertificate cert;
  cert.verdict = Verdict::not_positive;
  cert.circle_witness = CircleWitness{angle, value};
  cert.diagnostics = std::move(diag);
  return cert;
}

}  // namespace detail

/// Assembles the triangular factor from the UL corner and the tail band.
inline TriangularElement assemble_factor(const CMatrix& ul_corner,
                                         const AnalyticPolynomial& q) {
  return TriangularElement::from_corner_and_tail(ul_corner, q);
}

/// Decides nonnegativity of a hermitian element and, when it holds,
/// constructs the lower-triangular factor Y with X = Y*Y:
///
///   1. partition at the canonical cut;
///   2. zero symbol: the operator is the corner alone, UL-factor it;
///   3. reject if the symbol goes negative on the circle;
///   4. spectral factor q of the symbol;
///   5. tail blocks V, W from q;
///   6. verify V*W matches the lower-left band;
///   7. Schur complement M = A - V*V (the tail range is dense since q is
///      outer, so no range projector is needed);
///   8. backward Cholesky of M;
///   9. assemble Y;
///  10. verify Y*Y = X by exact algebra multiplication.
///
/// Non-positivity exits carry a witness that recomputes negative.
inline PositivityCertificate factorize(const AlgebraElement& x,
                                       double tol = kDefaultTol) {
  const double scale = element_scale(x);
  if (!x.is_hermitian(tol * scale))
    throw NotHermitian("factorize requires a hermitian element");
  const BlockPartition part = partition(x, tol);
  Diagnostics diag;

  if (part.symbol.is_zero()) {
    // Corner-only operator. Canonical representation forces the lower-left
    // band to vanish with the symbol, so positivity is the corner's.
    if (max_abs(part.tail_rows) > tol * scale)
      throw InternalInconsistency(
          "zero symbol with a nonzero band contradicts canonical form");
    try {
      const ULFactor ul = backward_cholesky(part.corner, kPivotRelTol);
      diag.min_pivot = ul.min_pivot;
      TriangularElement y = assemble_factor(ul.matrix, AnalyticPolynomial());
      const AlgebraElement square = adjoint(y.element()) * y.element();
      diag.residual = deviation(square, x);
      if (!equals(square, x, std::max(tol * scale, 1e-14)))
        throw InternalInconsistency("factor does not reproduce the element");
      PositivityCertificate cert;
      cert.verdict = Verdict::positive;
      cert.factor = std::move(y);
      cert.diagnostics = std::move(diag);
      return cert;
    } catch (const NotPSD& e) {
      diag.min_pivot = e.pivot();
      CVector vec;
      const double lam = min_eigenvalue(part.corner, &vec);
      if (!(lam < 0.0))
        throw InternalInconsistency(
            "corner failed Cholesky but has no negative eigenvalue");
      PositivityCertificate cert;
      cert.verdict = Verdict::not_positive;
      cert.vector_witness = VectorWitness{vec, lam};
      cert.diagnostics = std::move(diag);
      return cert;
    }
  }

  const auto symbol = HermitianLaurentSymbol::from_laurent(part.symbol, tol * scale);
  const CircleMin mn = min_on_circle(symbol, 4096);
  diag.symbol_min = mn.value;
  if (mn.value < -tol * scale)
    return detail::not_positive_at_angle(mn.angle, mn.value, std::move(diag));

  AnalyticPolynomial q;
  try {
    q = fejer_riesz_roots(symbol, tol);
  } catch (const NotNonnegative&) {
    // Borderline symbol (e.g. an odd-order sign change below the sampled
    // minimum). Hunt for a strictly negative circle point.
    const CircleMin fine = min_on_circle(symbol, 1 << 18);
    if (fine.value < 0.0)
      return detail::not_positive_at_angle(fine.angle, fine.value,
                                           std::move(diag));
    throw;
  }
  diag.q_roots = polynomial_roots(q.coeffs());

  const VWPair vw = build_vw(q, part.cut);
  if (!check_b_consistency(part, vw.v, vw.w, tol * scale))
    throw InternalInconsistency(
        "tail factor does not reproduce the lower-left band");

  const CMatrix schur = part.corner - vw.v.adjoint() * vw.v;
  ULFactor ul;
  try {
    ul = backward_cholesky(schur, kPivotRelTol);
  } catch (const NotPSD& e) {
    diag.min_pivot = e.pivot();
    VectorWitness wit =
        detail::lift_negative_witness(x, schur, vw.v, q, scale);
    PositivityCertificate cert;
    cert.verdict = Verdict::not_positive;
    cert.vector_witness = std::move(wit);
    cert.diagnostics = std::move(diag);
    return cert;
  }
  diag.min_pivot = ul.min_pivot;

  TriangularElement y = assemble_factor(ul.matrix, q);
  const AlgebraElement square = adjoint(y.element()) * y.element();
  diag.residual = deviation(square, x);
  if (!equals(square, x, std::max(tol * scale, 1e-14)))
    throw InternalInconsistency("factor does not reproduce the element");

  PositivityCertificate cert;
  cert.verdict = Verdict::positive;
  cert.factor = std::move(y);
  cert.diagnostics = std::move(diag);
  return cert;
}

}  // namespace ncfr
