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

#include <random>

#include "ncfr/oracle.hpp"

namespace ncfr {

inline Complex unit_complex_gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, std::numbers::sqrt2 / 2.0);
  return {g(rng), g(rng)};
}

/// Analytic polynomial with roots sampled at radius in [radius_lo,
/// radius_hi] (with probability circle_prob, exactly on the unit circle at
/// well-separated angles) and a positive real constant term.
inline AnalyticPolynomial random_outer_poly(std::mt19937_64& rng, int degree,
                                            double radius_lo = 1.0,
                                            double radius_hi = 3.0,
                                            double circle_prob = 0.0) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> radius(radius_lo, radius_hi);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<Complex> roots;
  std::vector<double> circle_angles;
  for (int i = 0; i < degree; ++i) {
    const bool on_circle = u01(rng) < circle_prob;
    double th = angle(rng);
    if (on_circle) {
      // keep circle roots apart so their doubled clusters stay resolvable
      bool clash = true;
      while (clash) {
        clash = false;
        for (double prev : circle_angles)
          if (std::abs(std::remainder(th - prev, 2.0 * std::numbers::pi)) <
              0.05) {
            clash = true;
            th = angle(rng);
            break;
          }
      }
      circle_angles.push_back(th);
    }
    roots.push_back(std::polar(on_circle ? 1.0 : radius(rng), th));
  }
  const auto monic = detail::monic_from_roots(roots);
  const double s = 0.3 + 1.7 * u01(rng);
  const Complex m0 = monic[0];
  const Complex c = s * (std::conj(m0) / std::abs(m0));
  std::vector<Complex> y(monic.size());
  for (size_t i = 0; i < monic.size(); ++i) y[i] = c * monic[i];
  return AnalyticPolynomial(std::move(y), true);
}

/// Lower-triangular element: Gaussian corner of the given cut plus an
/// outer-normalized tail band of degree <= cut.
inline TriangularElement random_triangular_element(std::mt19937_64& rng,
                                                   int cut,
                                                   double circle_prob = 0.15) {
  std::uniform_int_distribution<int> deg(0, cut);
  const AnalyticPolynomial q =
      random_outer_poly(rng, deg(rng), 1.0, 3.0, circle_prob);
  CMatrix corner = CMatrix::Zero(cut + 1, cut + 1);
  for (Eigen::Index i = 0; i <= cut; ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      corner(i, j) = unit_complex_gaussian(rng);
  return TriangularElement::from_corner_and_tail(corner, q);
}

struct PsdInstance {
  TriangularElement factor;
  AlgebraElement element;  // adjoint(factor) * factor
};

inline PsdInstance random_psd_instance(std::mt19937_64& rng, int cut) {
  TriangularElement y = random_triangular_element(rng, cut);
  AlgebraElement x = adjoint(y.element()) * y.element();
  return {std::move(y), std::move(x)};
}

/// General (not necessarily hermitian) element, for ring-operation tests.
inline AlgebraElement random_element(std::mt19937_64& rng, int cut) {
  std::uniform_int_distribution<int> deg(0, cut);
  const int d = deg(rng);
  CMatrix block(cut + 1, cut + 1);
  for (Eigen::Index i = 0; i <= cut; ++i)
    for (Eigen::Index j = 0; j <= cut; ++j)
      block(i, j) = unit_complex_gaussian(rng);
  std::vector<Complex> c(static_cast<size_t>(2 * d) + 1);
  for (auto& v : c) v = unit_complex_gaussian(rng);
  return AlgebraElement::from_parts(block, LaurentPoly(-d, std::move(c)));
}

inline AlgebraElement random_hermitian_element(std::mt19937_64& rng, int cut) {
  std::uniform_int_distribution<int> deg(0, cut);
  const int d = deg(rng);
  CMatrix g(cut + 1, cut + 1);
  for (Eigen::Index i = 0; i <= cut; ++i)
    for (Eigen::Index j = 0; j <= cut; ++j)
      g(i, j) = unit_complex_gaussian(rng);
  const CMatrix block = 0.5 * (g + g.adjoint());
  std::vector<Complex> upper(static_cast<size_t>(d) + 1);
  std::normal_distribution<double> real_g(0.0, 1.0);
  upper[0] = Complex(real_g(rng), 0.0);
  for (int k = 1; k <= d; ++k)
    upper[static_cast<size_t>(k)] = unit_complex_gaussian(rng);
  return AlgebraElement::from_parts(
      block, HermitianLaurentSymbol(std::move(upper)).to_laurent());
}

/// Hermitian element confirmed indefinite by the truncated eigenvalue
/// oracle with a clear margin; resamples until the oracle agrees.
inline AlgebraElement random_indefinite_instance(
    std::mt19937_64& rng, int cut, Eigen::Index oracle_n = kDefaultTruncation) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    AlgebraElement x = random_hermitian_element(rng, cut);
    const double scale = element_scale(x);
    if (scale <= 0.0) continue;
    const Eigen::Index n = std::max<Eigen::Index>(oracle_n, x.cut() + 1);
    if (truncated_min_eig(x, n) < -1e-6 * scale) return x;
  }
  throw std::runtime_error("failed to sample an indefinite instance");
}

/// The worked corner-plus-band example: corner [[8,6],[6,4]] on top of the
/// tridiagonal band (1, 2, 1), i.e. sections [[10,7,0,..],[7,6,1,0,..],
/// [0,1,2,1,..],...].
inline AlgebraElement example_corner_plus_band() {
  CMatrix f(2, 2);
  f << 8.0, 6.0, 6.0, 4.0;
  return AlgebraElement::from_parts(f, LaurentPoly(-1, {1.0, 2.0, 1.0}));
}

/// The banded (not lower-triangular) square root of the worked example:
/// corner [[3,2],[1,1]] continued by the band (1, 1).
inline AlgebraElement example_banded_root() {
  CMatrix f(2, 2);
  f << 2.0, 2.0, 0.0, 0.0;
  return AlgebraElement::from_parts(f, LaurentPoly(0, {1.0, 1.0}));
}

}  // namespace ncfr
