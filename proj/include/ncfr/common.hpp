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

#include <complex>
#include <stdexcept>
#include <string>

namespace ncfr {

using Complex = std::complex<double>;

/// Default relative tolerance; multiplied by a scale at every use site.
inline constexpr double kDefaultTol = 1e-9;
/// Roots with | |z| - 1 | below this are treated as unit-circle roots.
inline constexpr double kEpsCircle = 1e-7;
/// Pairwise merge distance for root clusters.
inline constexpr double kEpsCluster = 1e-6;
/// Semidefinite Cholesky pivot cutoff, relative to the matrix max-norm.
inline constexpr double kPivotRelTol = 1e-10;
/// Default truncation size for brute-force positivity checks.
inline constexpr int kDefaultTruncation = 200;

/// A symbol takes a value below -tol*scale somewhere on the unit circle,
/// or its root structure is incompatible with nonnegativity.
class NotNonnegative : public std::runtime_error {
 public:
  explicit NotNonnegative(const std::string& what, double angle = 0.0,
                          double value = 0.0)
      : std::runtime_error(what), angle_(angle), value_(value) {}
  double angle() const { return angle_; }
  double value() const { return value_; }

 private:
  double angle_;
  double value_;
};

/// The zero symbol (or a factor whose constant term underflows).
class DegenerateSymbol : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method exhausted its schedule without stabilizing.
class NotConverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation required a hermitian input and did not get one.
class NotHermitian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Cholesky pivot fell below the negative tolerance.
class NotPSD : public std::runtime_error {
 public:
  explicit NotPSD(const std::string& what, double pivot = 0.0,
                  long index = -1)
      : std::runtime_error(what), pivot_(pivot), index_(index) {}
  double pivot() const { return pivot_; }
  long index() const { return index_; }

 private:
  double pivot_;
  long index_;
};

/// An internal identity that must hold for valid inputs failed; this
/// signals an implementation bug, not a user error.
class InternalInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ncfr
