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

#include <array>
#include <span>
#include <vector>

#include "ncfr/dense.hpp"
#include "ncfr/laurent.hpp"

namespace ncfr {

enum class RootLocation { inside, circle, outside };

/// A group of numerically coincident polynomial roots. Circle clusters
/// carry a representative projected radially onto |z| = 1.
struct RootCluster {
  Complex representative;
  int multiplicity;
  RootLocation location;
};

/// Roots of sum_k c_k z^k (ascending coefficients) via companion-matrix
/// eigenvalues. Exact zero coefficients at the origin become zero roots.
inline std::vector<Complex> polynomial_roots(std::vector<Complex> c) {
  while (c.size() > 1 && c.back() == Complex{}) c.pop_back();
  std::vector<Complex> roots;
  if (c.size() <= 1) return roots;
  size_t lead = 0;
  while (lead + 1 < c.size() && c[lead] == Complex{}) ++lead;
  roots.assign(lead, Complex{});
  const Eigen::Index m = static_cast<Eigen::Index>(c.size() - 1 - lead);
  if (m == 0) return roots;
  CMatrix comp = CMatrix::Zero(m, m);
  for (Eigen::Index i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < m; ++i)
    comp(i, m - 1) = -c[lead + static_cast<size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
  for (Eigen::Index i = 0; i < m; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

/// Greedy merge of roots within eps_cluster (relative to magnitude), then
/// classification of each cluster centroid against the unit circle.
inline std::vector<RootCluster> cluster_roots(
    const std::vector<Complex>& roots, double eps_circle = kEpsCircle,
    double eps_cluster = kEpsCluster) {
  const size_t n = roots.size();
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      const double lim = eps_cluster * std::max({1.0, std::abs(roots[i]),
                                                 std::abs(roots[j])});
      if (std::abs(roots[i] - roots[j]) <= lim) parent[find(i)] = find(j);
    }
  std::vector<RootCluster> out;
  std::vector<bool> done(n, false);
  for (size_t i = 0; i < n; ++i) {
    const size_t r = find(i);
    if (done[r]) continue;
    done[r] = true;
    Complex centroid{};
    int mult = 0;
    for (size_t j = 0; j < n; ++j)
      if (find(j) == r) {
        centroid += roots[j];
        ++mult;
      }
    centroid /= static_cast<double>(mult);
    const double rad = std::abs(centroid);
    RootCluster cl{centroid, mult, RootLocation::outside};
    if (std::abs(rad - 1.0) <= eps_circle * std::max(1.0, rad)) {
      cl.location = RootLocation::circle;
      cl.representative = centroid / rad;  // project onto the circle
    } else if (rad < 1.0) {
      cl.location = RootLocation::inside;
    }
    out.push_back(cl);
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& a,
                                       const RootCluster& b) {
    if (a.representative.real() != b.representative.real())
      return a.representative.real() < b.representative.real();
    return a.representative.imag() < b.representative.imag();
  });
  return out;
}

/// True iff every root satisfies |z| >= 1 - eps_circle, so multiplication
/// by q has dense range on the Hardy space.
inline bool is_outer(const AnalyticPolynomial& q,
                     double eps_circle = kEpsCircle) {
  if (q.is_zero())
    throw std::invalid_argument("is_outer requires a nonzero polynomial");
  for (const Complex& r : polynomial_roots(q.coeffs()))
    if (std::abs(r) < 1.0 - eps_circle) return false;
  return true;
}

namespace detail {

inline std::vector<Complex> monic_from_roots(
    const std::vector<Complex>& roots) {
  std::vector<Complex> m{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(m.size() + 1, Complex{});
    for (size_t i = 0; i < m.size(); ++i) {
      next[i + 1] += m[i];
      next[i] -= r * m[i];
    }
    m = std::move(next);
  }
  return m;
}

/// Fixes the scalar of a monic root product so that the factor matches
/// x_0 = sum |y_k|^2 in magnitude and has positive real constant term.
inline AnalyticPolynomial scaled_factor(const std::vector<Complex>& monic,
                                        double x0, double scale) {
  if (!(x0 > 0.0))
    throw DegenerateSymbol("mean of the symbol vanishes; no normalized factor");
  double msq = 0;
  for (const Complex& v : monic) msq += std::norm(v);
  const Complex m0 = monic[0];
  const double m0a = std::abs(m0);
  if (m0a < 1e-12 * scale)
    throw DegenerateSymbol("constant coefficient of the factor underflows");
  const Complex c = std::sqrt(x0 / msq) * (std::conj(m0) / m0a);
  std::vector<Complex> y(monic.size());
  for (size_t i = 0; i < monic.size(); ++i) y[i] = c * monic[i];
  return AnalyticPolynomial(std::move(y), true);
}

}  // namespace detail

/// Fejer-Riesz spectral factorization by root selection: for a symbol p
/// nonnegative on the unit circle, returns the unique analytic q of the
/// effective band degree with conj-reflect(q) * q = p, no root inside the
/// open disk, and q(0) > 0.
///
/// Roots of z^d p(z) come in conjugate-reciprocal pairs; the factor keeps
/// every outside root and half of each (necessarily even) circle cluster.
inline AnalyticPolynomial fejer_riesz_roots(const HermitianLaurentSymbol& p,
                                            double tol = kDefaultTol) {
  if (p.is_zero()) throw DegenerateSymbol("zero symbol has no spectral factor");
  const double scale = p.coeff_scale();
  const CircleMin mn = min_on_circle(p, std::max(2048, 8 * (p.band_degree() + 1)));
  if (mn.value < -tol * scale)
    throw NotNonnegative("symbol attains a negative value on the circle",
                         mn.angle, mn.value);
  const int d = p.effective_degree();
  const double x0 = p.coeff(0).real();
  if (d == 0) {
    if (!(x0 > 0.0))
      throw DegenerateSymbol("constant symbol is not strictly positive");
    return AnalyticPolynomial({std::sqrt(x0)}, true);
  }

  std::vector<Complex> lifted(static_cast<size_t>(2 * d) + 1);
  for (int k = -d; k <= d; ++k) lifted[static_cast<size_t>(k + d)] = p.coeff(k);
  const auto clusters = cluster_roots(polynomial_roots(std::move(lifted)));

  std::vector<Complex> selected;
  for (const RootCluster& cl : clusters) {
    if (cl.location == RootLocation::outside) {
      selected.insert(selected.end(), static_cast<size_t>(cl.multiplicity),
                      cl.representative);
    } else if (cl.location == RootLocation::circle) {
      if (cl.multiplicity % 2 != 0)
        throw NotNonnegative(
            "odd-order circle zero: the symbol changes sign",
            std::arg(cl.representative), 0.0);
      selected.insert(selected.end(),
                      static_cast<size_t>(cl.multiplicity / 2),
                      cl.representative);
    }
  }
  if (static_cast<int>(selected.size()) != d)
    throw NotNonnegative("root pairing across the unit circle is unbalanced",
                         mn.angle, mn.value);

  AnalyticPolynomial q =
      detail::scaled_factor(detail::monic_from_roots(selected), x0, scale);
  const double res =
      coeff_distance(involute(q.to_laurent()) * q.to_laurent(), p.to_laurent());
  if (res > tol * scale)
    throw InternalInconsistency("spectral factor residual exceeds tolerance");
  return q;
}

inline constexpr std::array<int, 5> kBauerSchedule{32, 64, 128, 256, 512};

/// Bauer iteration: the forward Cholesky factor of growing Toeplitz
/// sections has last rows converging (for strictly positive symbols) to the
/// reversed coefficient band of the outer factor. Independent of the
/// root-based construction above.
inline AnalyticPolynomial bauer_factor(
    const HermitianLaurentSymbol& p,
    std::span<const int> schedule = kBauerSchedule, double tol = kDefaultTol) {
  if (p.is_zero()) throw DegenerateSymbol("zero symbol has no spectral factor");
  const double scale = p.coeff_scale();
  const int d = p.effective_degree();
  if (d == 0) {
    const double x0 = p.coeff(0).real();
    if (x0 < -tol * scale)
      throw NotNonnegative("constant symbol is negative", 0.0, x0);
    if (!(x0 > 0.0))
      throw DegenerateSymbol("constant symbol is not strictly positive");
    return AnalyticPolynomial({std::sqrt(x0)}, true);
  }
  const LaurentPoly lp = p.to_laurent();
  std::vector<Complex> prev;
  for (const int n : schedule) {
    if (n < d + 2) continue;
    const CMatrix t = toeplitz_truncation(lp, n);
    const auto fc =
        semidefinite_forward_cholesky(t, tol * max_abs(t), 0.0);
    if (!fc.ok)
      throw NotNonnegative("Toeplitz section is not positive semidefinite",
                           0.0, fc.min_pivot);
    std::vector<Complex> band(static_cast<size_t>(d) + 1);
    for (int j = 0; j <= d; ++j)
      band[static_cast<size_t>(j)] = fc.factor(n - 1, n - 1 - j);
    if (!prev.empty()) {
      double diff = 0, mag = 0;
      for (size_t j = 0; j < band.size(); ++j) {
        diff = std::max(diff, std::abs(band[j] - prev[j]));
        mag = std::max(mag, std::abs(band[j]));
      }
      if (diff <= tol * std::max(1.0, mag)) {
        AnalyticPolynomial q(std::move(band), true);
        if (!is_outer(q))
          throw NotConverged("stationary band is not yet an outer factor");
        const double res = coeff_distance(
            involute(q.to_laurent()) * q.to_laurent(), p.to_laurent());
        if (res > tol * scale)
          throw NotConverged("stationary band does not reproduce the symbol");
        return q;
      }
    }
    prev = std::move(band);
  }
  throw NotConverged(
      "Cholesky band not stationary within the truncation schedule");
}

}  // namespace ncfr
