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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <utility>
#include <vector>

#include "ncfr/common.hpp"

namespace ncfr {

/// Laurent polynomial sum_k a_k z^k with complex coefficients and finite
/// support, stored densely as (min_degree, ascending coefficient list).
///
/// The zero polynomial has an empty list. Construction trims coefficients
/// that are *exactly* zero at both ends; trimming at a floating tolerance
/// would silently change the band degree, so it is a separate, explicit
/// operation (trimmed()).
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(int min_degree, std::vector<Complex> coeffs)
      : min_(min_degree), c_(std::move(coeffs)) {
    normalize();
  }

  static LaurentPoly constant(Complex a) { return {0, {a}}; }
  static LaurentPoly monomial(int degree, Complex a = 1.0) {
    return {degree, {a}};
  }

  bool is_zero() const { return c_.empty(); }
  int min_degree() const { return c_.empty() ? 0 : min_; }
  int max_degree() const {
    return c_.empty() ? 0 : min_ + static_cast<int>(c_.size()) - 1;
  }
  /// max(|min_degree|, |max_degree|); 0 for the zero polynomial.
  int band_degree() const {
    if (c_.empty()) return 0;
    return std::max(std::abs(min_degree()), std::abs(max_degree()));
  }

  Complex coeff(int k) const {
    if (c_.empty() || k < min_ || k > max_degree()) return {};
    return c_[static_cast<size_t>(k - min_)];
  }
  const std::vector<Complex>& coeffs() const { return c_; }

  /// Explicit degree reduction: drops end coefficients with |a| <= tol.
  LaurentPoly trimmed(double tol) const {
    size_t lo = 0, hi = c_.size();
    while (lo < hi && std::abs(c_[lo]) <= tol) ++lo;
    while (hi > lo && std::abs(c_[hi - 1]) <= tol) --hi;
    if (lo == 0 && hi == c_.size()) return *this;
    return {min_ + static_cast<int>(lo),
            std::vector<Complex>(c_.begin() + static_cast<long>(lo),
                                 c_.begin() + static_cast<long>(hi))};
  }

 private:
  void normalize() {
    size_t lo = 0, hi = c_.size();
    while (lo < hi && c_[lo] == Complex{}) ++lo;
    while (hi > lo && c_[hi - 1] == Complex{}) --hi;
    if (lo == hi) {
      c_.clear();
      min_ = 0;
      return;
    }
    if (lo > 0 || hi < c_.size()) {
      c_ = std::vector<Complex>(c_.begin() + static_cast<long>(lo),
                                c_.begin() + static_cast<long>(hi));
      min_ += static_cast<int>(lo);
    }
  }

  int min_ = 0;
  std::vector<Complex> c_;
};

/// The involution p -> conj-reflect: coefficient at -k becomes conj(a_k).
inline LaurentPoly involute(const LaurentPoly& p) {
  if (p.is_zero()) return {};
  const auto& c = p.coeffs();
  std::vector<Complex> out(c.size());
  for (size_t i = 0; i < c.size(); ++i) out[i] = std::conj(c[c.size() - 1 - i]);
  return {-p.max_degree(), std::move(out)};
}

inline LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int lo = std::min(a.min_degree(), b.min_degree());
  const int hi = std::max(a.max_degree(), b.max_degree());
  std::vector<Complex> out(static_cast<size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k)
    out[static_cast<size_t>(k - lo)] = a.coeff(k) + b.coeff(k);
  return {lo, std::move(out)};
}

inline LaurentPoly operator*(Complex s, const LaurentPoly& p) {
  if (p.is_zero() || s == Complex{}) return {};
  std::vector<Complex> out(p.coeffs());
  for (auto& v : out) v *= s;
  return {p.min_degree(), std::move(out)};
}

inline LaurentPoly operator*(const LaurentPoly& p, Complex s) { return s * p; }

inline LaurentPoly operator-(const LaurentPoly& p) {
  return Complex(-1.0) * p;
}

inline LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
  return a + (-b);
}

/// Coefficient convolution; degree bounds add.
inline LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  std::vector<Complex> out(ca.size() + cb.size() - 1, Complex{});
  for (size_t i = 0; i < ca.size(); ++i)
    for (size_t j = 0; j < cb.size(); ++j) out[i + j] += ca[i] * cb[j];
  return {a.min_degree() + b.min_degree(), std::move(out)};
}

/// sum_k a_k e^{ikt}; real up to roundoff for hermitian p.
inline Complex evaluate_on_circle(const LaurentPoly& p, double t) {
  Complex acc{};
  const int lo = p.min_degree();
  const auto& c = p.coeffs();
  for (size_t i = 0; i < c.size(); ++i)
    acc += c[i] * std::polar(1.0, (lo + static_cast<int>(i)) * t);
  return acc;
}

/// True iff |a_{-k} - conj(a_k)| <= tol for all k.
inline bool is_hermitian(const LaurentPoly& p, double tol) {
  const int d = p.band_degree();
  for (int k = 0; k <= d; ++k)
    if (std::abs(p.coeff(-k) - std::conj(p.coeff(k))) > tol) return false;
  return true;
}

inline double l1_norm(const LaurentPoly& p) {
  double s = 0;
  for (const auto& c : p.coeffs()) s += std::abs(c);
  return s;
}

/// Max coefficient deviation over the union of supports.
inline double coeff_distance(const LaurentPoly& a, const LaurentPoly& b) {
  const int lo = std::min(a.min_degree(), b.min_degree());
  const int hi = std::max(a.max_degree(), b.max_degree());
  double m = 0;
  for (int k = lo; k <= hi; ++k)
    m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
  return m;
}

/// Hermitian Laurent symbol: coefficients x_0..x_n with the negative side
/// implied by x_{-k} = conj(x_k) and x_0 real. This is the band of a
/// selfadjoint Toeplitz operator.
class HermitianLaurentSymbol {
 public:
  /// Takes the one-sided coefficients x_0..x_n.
  explicit HermitianLaurentSymbol(std::vector<Complex> upper)
      : x_(std::move(upper)) {
    if (x_.empty()) x_.push_back(Complex{});
    double s = 0;
    for (const auto& v : x_) s += std::abs(v);
    if (std::abs(x_[0].imag()) > 1e-12 * std::max(s, 1.0))
      throw NotHermitian("constant coefficient x_0 must be real");
    x_[0] = Complex(x_[0].real(), 0.0);
  }

  static HermitianLaurentSymbol from_laurent(const LaurentPoly& p,
                                             double tol) {
    if (!is_hermitian(p, tol))
      throw NotHermitian("symbol is not hermitian within tolerance");
    const int d = p.band_degree();
    std::vector<Complex> xs(static_cast<size_t>(d) + 1);
    xs[0] = Complex(p.coeff(0).real(), 0.0);
    for (int k = 1; k <= d; ++k)
      xs[static_cast<size_t>(k)] =
          0.5 * (p.coeff(k) + std::conj(p.coeff(-k)));
    return HermitianLaurentSymbol(std::move(xs));
  }

  int band_degree() const { return static_cast<int>(x_.size()) - 1; }
  /// Largest k with x_k exactly nonzero (0 if the symbol vanishes).
  int effective_degree() const {
    int d = band_degree();
    while (d > 0 && x_[static_cast<size_t>(d)] == Complex{}) --d;
    return d;
  }
  Complex coeff(int k) const {
    const int a = std::abs(k);
    if (a > band_degree()) return {};
    const Complex v = x_[static_cast<size_t>(a)];
    return k < 0 ? std::conj(v) : v;
  }
  const std::vector<Complex>& upper_coeffs() const { return x_; }
  bool is_zero() const {
    return std::all_of(x_.begin(), x_.end(),
                       [](Complex v) { return v == Complex{}; });
  }
  /// |x_0| + 2 sum_{k>=1} |x_k|, an upper bound for |p| on the circle.
  double coeff_scale() const {
    double s = std::abs(x_[0]);
    for (size_t k = 1; k < x_.size(); ++k) s += 2.0 * std::abs(x_[k]);
    return s;
  }
  LaurentPoly to_laurent() const {
    const int d = band_degree();
    std::vector<Complex> c(static_cast<size_t>(2 * d) + 1);
    for (int k = -d; k <= d; ++k) c[static_cast<size_t>(k + d)] = coeff(k);
    return {-d, std::move(c)};
  }

 private:
  std::vector<Complex> x_;
};

/// Analytic polynomial q(z) = sum_{k>=0} y_k z^k. The outer_normalized
/// flag records that the producer certified q root-free in the open unit
/// disk with q(0) real and positive; is_outer() re-derives the root part.
class AnalyticPolynomial {
 public:
  AnalyticPolynomial() : y_{Complex{}} {}
  explicit AnalyticPolynomial(std::vector<Complex> y,
                              bool outer_normalized = false)
      : y_(std::move(y)), outer_(outer_normalized) {
    if (y_.empty()) y_.push_back(Complex{});
    while (y_.size() > 1 && y_.back() == Complex{}) y_.pop_back();
    if (outer_) {
      double m = 0;
      for (const auto& v : y_) m = std::max(m, std::abs(v));
      if (!(y_[0].real() > 0.0) ||
          std::abs(y_[0].imag()) > 1e-12 * std::max(m, 1.0))
        throw std::invalid_argument(
            "outer-normalized polynomial requires q(0) real and positive");
    }
  }

  int degree() const { return static_cast<int>(y_.size()) - 1; }
  Complex coeff(int k) const {
    if (k < 0 || k > degree()) return {};
    return y_[static_cast<size_t>(k)];
  }
  const std::vector<Complex>& coeffs() const { return y_; }
  bool is_zero() const { return y_.size() == 1 && y_[0] == Complex{}; }
  bool outer_normalized() const { return outer_; }

  Complex eval(Complex z) const {
    Complex acc = y_.back();
    for (size_t i = y_.size() - 1; i-- > 0;) acc = acc * z + y_[i];
    return acc;
  }
  LaurentPoly to_laurent() const { return {0, y_}; }

 private:
  std::vector<Complex> y_;
  bool outer_ = false;
};

struct CircleMin {
  double value;
  double angle;
};

/// Minimum of a hermitian symbol on the unit circle: a uniform sample grid
/// refined by golden-section search around the best grid point.
inline CircleMin min_on_circle(const HermitianLaurentSymbol& p,
                               int samples = 2048) {
  const LaurentPoly lp = p.to_laurent();
  const auto f = [&lp](double t) {
    return std::real(evaluate_on_circle(lp, t));
  };
  const double two_pi = 2.0 * std::numbers::pi;
  samples = std::max(samples, 4 * (p.band_degree() + 1));

  double best_t = 0.0, best_v = f(0.0);
  for (int i = 1; i < samples; ++i) {
    const double t = two_pi * i / samples;
    const double v = f(t);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }

  const double h = two_pi / samples;
  double a = best_t - h, b = best_t + h;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  double tm = 0.5 * (a + b), fm = f(tm);
  if (best_v < fm) {
    fm = best_v;
    tm = best_t;
  }
  tm = std::fmod(tm + two_pi, two_pi);
  return {fm, tm};
}

}  // namespace ncfr
