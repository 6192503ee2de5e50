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

#include "ncfr/dense.hpp"
#include "ncfr/laurent.hpp"

namespace ncfr {

/// An operator on one-sided sequences written in the normal form
/// "banded Toeplitz part + finite top-left corner":
///
///   entry(i, j) = p_{i-j} + F(i, j) [for i, j <= cut]
///
/// where p is the symbol and F the finite block. The representation is
/// canonical: the cut is the smallest n with n >= band degree of p such
/// that everything outside the (n+1)x(n+1) corner is pure Toeplitz, and F
/// holds exactly what remains after subtracting the band in the corner.
/// Canonicality makes equality testing meaningful.
///
/// Values are immutable; all operations below are pure.
class AlgebraElement {
 public:
  AlgebraElement()
      : cut_(0), block_(CMatrix::Zero(1, 1)), symbol_() {}

  /// Canonical element equal to (Toeplitz part of p) + (block embedded in
  /// the top-left corner). Idempotent: re-canonicalizing changes nothing.
  static AlgebraElement from_parts(const CMatrix& block,
                                   const LaurentPoly& symbol) {
    if (block.rows() != block.cols())
      throw std::invalid_argument("finite block must be square");
    Eigen::Index extent = -1;
    for (Eigen::Index i = 0; i < block.rows(); ++i)
      for (Eigen::Index j = 0; j < block.cols(); ++j)
        if (block(i, j) != Complex{}) extent = std::max({extent, i, j});
    const Eigen::Index cut =
        std::max<Eigen::Index>(symbol.is_zero() ? 0 : symbol.band_degree(),
                               std::max<Eigen::Index>(extent, 0));
    CMatrix f = CMatrix::Zero(cut + 1, cut + 1);
    const Eigen::Index m = std::min(cut + 1, block.rows());
    f.topLeftCorner(m, m) = block.topLeftCorner(m, m);
    return AlgebraElement(cut, std::move(f), symbol);
  }

  static AlgebraElement identity() {
    return from_parts(CMatrix::Zero(1, 1), LaurentPoly::constant(1.0));
  }
  /// The isometry mapping e_k to e_{k+1}; symbol z, empty corner.
  static AlgebraElement shift() {
    return from_parts(CMatrix::Zero(1, 1), LaurentPoly::monomial(1));
  }
  static AlgebraElement toeplitz(const LaurentPoly& symbol) {
    return from_parts(CMatrix::Zero(1, 1), symbol);
  }
  /// The rank-one matrix unit with a single 1 at (row, col).
  static AlgebraElement corner_unit(Eigen::Index row, Eigen::Index col) {
    const Eigen::Index n = std::max(row, col);
    CMatrix f = CMatrix::Zero(n + 1, n + 1);
    f(row, col) = 1.0;
    return from_parts(f, LaurentPoly());
  }

  Eigen::Index cut() const { return cut_; }
  const CMatrix& finite_block() const { return block_; }
  const LaurentPoly& symbol() const { return symbol_; }

  Complex entry(Eigen::Index i, Eigen::Index j) const {
    Complex v = symbol_.coeff(static_cast<int>(i - j));
    if (i <= cut_ && j <= cut_) v += block_(i, j);
    return v;
  }

  /// The N x N matrix section with respect to the standard basis.
  CMatrix truncate(Eigen::Index n) const {
    if (n < 1) throw std::invalid_argument("truncation size must be >= 1");
    CMatrix t(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) t(i, j) = entry(i, j);
    return t;
  }

  bool is_hermitian(double tol) const {
    return hermitian_within(block_, tol) && ncfr::is_hermitian(symbol_, tol);
  }

 private:
  AlgebraElement(Eigen::Index cut, CMatrix block, LaurentPoly symbol)
      : cut_(cut), block_(std::move(block)), symbol_(std::move(symbol)) {}

  Eigen::Index cut_;
  CMatrix block_;
  LaurentPoly symbol_;
};

inline AlgebraElement adjoint(const AlgebraElement& x) {
  return AlgebraElement::from_parts(x.finite_block().adjoint(),
                                    involute(x.symbol()));
}

inline AlgebraElement operator+(const AlgebraElement& a,
                                const AlgebraElement& b) {
  const Eigen::Index n = std::max(a.cut(), b.cut());
  CMatrix f = CMatrix::Zero(n + 1, n + 1);
  f.topLeftCorner(a.cut() + 1, a.cut() + 1) += a.finite_block();
  f.topLeftCorner(b.cut() + 1, b.cut() + 1) += b.finite_block();
  return AlgebraElement::from_parts(f, a.symbol() + b.symbol());
}

inline AlgebraElement operator*(Complex s, const AlgebraElement& x) {
  return AlgebraElement::from_parts(s * x.finite_block(), s * x.symbol());
}

inline AlgebraElement operator-(const AlgebraElement& x) {
  return Complex(-1.0) * x;
}

inline AlgebraElement operator-(const AlgebraElement& a,
                                const AlgebraElement& b) {
  return a + (-b);
}

/// Operator product, staying in the normal form. The symbol multiplies;
/// the finite part is read off a padded matrix section. Entries of the
/// product section are exact wherever every contributing index fits inside
/// the padding, and all exact entries beyond the corner window of size
/// cut_a + cut_b must already be Toeplitz -- checked, not assumed.
inline AlgebraElement operator*(const AlgebraElement& a,
                                const AlgebraElement& b) {
  const Eigen::Index na = a.cut(), nb = b.cut();
  const Eigen::Index window = na + nb;
  const Eigen::Index pad = 2 * window + 2;
  const CMatrix prod = a.truncate(pad) * b.truncate(pad);
  const LaurentPoly symbol = a.symbol() * b.symbol();

  const Eigen::Index exact = pad - std::max(na, nb);
  const double scale = (max_abs(a.finite_block()) + l1_norm(a.symbol())) *
                       (max_abs(b.finite_block()) + l1_norm(b.symbol()));
  for (Eigen::Index i = 0; i < exact; ++i)
    for (Eigen::Index j = 0; j < exact; ++j) {
      if (i <= window && j <= window) continue;
      if (std::abs(prod(i, j) - symbol.coeff(static_cast<int>(i - j))) >
          1e-12 * scale)
        throw InternalInconsistency(
            "product has non-Toeplitz residue beyond the corner window");
    }

  CMatrix f(window + 1, window + 1);
  for (Eigen::Index i = 0; i <= window; ++i)
    for (Eigen::Index j = 0; j <= window; ++j)
      f(i, j) = prod(i, j) - symbol.coeff(static_cast<int>(i - j));
  return AlgebraElement::from_parts(f, symbol);
}

/// True iff the canonical forms agree within tol in max-norm on both the
/// finite block and the symbol coefficients.
inline bool equals(const AlgebraElement& a, const AlgebraElement& b,
                   double tol) {
  const Eigen::Index n = std::max(a.cut(), b.cut());
  CMatrix fa = CMatrix::Zero(n + 1, n + 1), fb = fa;
  fa.topLeftCorner(a.cut() + 1, a.cut() + 1) = a.finite_block();
  fb.topLeftCorner(b.cut() + 1, b.cut() + 1) = b.finite_block();
  return max_abs(fa - fb) <= tol &&
         coeff_distance(a.symbol(), b.symbol()) <= tol;
}

/// Max deviation between two elements (block and symbol, max-norm).
inline double deviation(const AlgebraElement& a, const AlgebraElement& b) {
  const Eigen::Index n = std::max(a.cut(), b.cut());
  CMatrix fa = CMatrix::Zero(n + 1, n + 1), fb = fa;
  fa.topLeftCorner(a.cut() + 1, a.cut() + 1) = a.finite_block();
  fb.topLeftCorner(b.cut() + 1, b.cut() + 1) = b.finite_block();
  return std::max(max_abs(fa - fb), coeff_distance(a.symbol(), b.symbol()));
}

/// max(corner max-norm, symbol l1 norm) -- the reference scale for all
/// relative tolerances on an element.
inline double element_scale(const AlgebraElement& x) {
  return std::max(max_abs(x.truncate(x.cut() + 1)), l1_norm(x.symbol()));
}

/// An element whose finite block is lower triangular and whose symbol is
/// analytic, so that every matrix section is lower triangular.
class TriangularElement {
 public:
  explicit TriangularElement(AlgebraElement e) : e_(std::move(e)) {
    if (!e_.symbol().is_zero() && e_.symbol().min_degree() < 0)
      throw std::invalid_argument(
          "triangular element requires an analytic symbol");
    const CMatrix& f = e_.finite_block();
    for (Eigen::Index i = 0; i < f.rows(); ++i)
      for (Eigen::Index j = i + 1; j < f.cols(); ++j)
        if (f(i, j) != Complex{})
          throw std::invalid_argument(
              "triangular element requires a lower-triangular block");
  }

  /// Builds the element whose leading corner is the given lower-triangular
  /// matrix and whose rows below carry the Toeplitz band of `tail`.
  static TriangularElement from_corner_and_tail(
      const CMatrix& corner, const AnalyticPolynomial& tail) {
    if (corner.rows() != corner.cols())
      throw std::invalid_argument("corner must be square");
    const Eigen::Index n =
        std::max<Eigen::Index>(corner.rows() - 1, tail.degree());
    CMatrix f = CMatrix::Zero(n + 1, n + 1);
    f.topLeftCorner(corner.rows(), corner.cols()) = corner;
    f -= analytic_band(tail, n + 1, n + 1);
    return TriangularElement(
        AlgebraElement::from_parts(f, tail.to_laurent()));
  }

  const AlgebraElement& element() const { return e_; }
  Eigen::Index cut() const { return e_.cut(); }
  CMatrix truncate(Eigen::Index n) const { return e_.truncate(n); }

 private:
  AlgebraElement e_;
};

}  // namespace ncfr
