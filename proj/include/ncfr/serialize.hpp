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

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "ncfr/algebra.hpp"
#include "ncfr/factorize.hpp"

namespace ncfr {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All floating output goes through one formatter with 17 significant
// digits, so equal inputs always serialize to identical bytes and every
// value round-trips exactly.
namespace jsonfmt {

inline std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string num(long v) { return std::to_string(v); }

inline std::string cplx(Complex c) {
  return "[" + num(c.real()) + "," + num(c.imag()) + "]";
}

inline std::string cplx_list(const std::vector<Complex>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += cplx(v[i]);
  }
  return s + "]";
}

inline std::string cplx_list(const CVector& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += cplx(v(i));
  }
  return s + "]";
}

inline std::string matrix(const CMatrix& m) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) s += ",";
    s += "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += cplx(m(i, j));
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace jsonfmt

inline std::string to_json(const LaurentPoly& p) {
  return "{\"min_degree\": " + std::to_string(p.min_degree()) +
         ", \"coeffs\": " + jsonfmt::cplx_list(p.coeffs()) + "}";
}

inline std::string to_json(const AnalyticPolynomial& q) {
  return "{\"coeffs\": " + jsonfmt::cplx_list(q.coeffs()) + "}";
}

inline std::string to_json(const AlgebraElement& x) {
  std::string s = "{\n";
  s += "  \"cut\": " + std::to_string(x.cut()) + ",\n";
  s += "  \"finite_block\": " + jsonfmt::matrix(x.finite_block()) + ",\n";
  s += "  \"symbol\": " + to_json(x.symbol()) + "\n";
  return s + "}";
}

inline std::string to_json(const PositivityCertificate& cert) {
  std::string s = "{\n";
  s += std::string("  \"verdict\": ") +
       (cert.verdict == Verdict::positive ? "\"positive\""
                                          : "\"not_positive\"") +
       ",\n";
  if (cert.factor) {
    std::string body = to_json(cert.factor->element());
    // indent the nested element by two spaces
    std::string indented;
    for (char c : body) {
      indented += c;
      if (c == '\n') indented += "  ";
    }
    s += "  \"factor\": " + indented + ",\n";
  }
  if (cert.circle_witness) {
    s += "  \"witness\": {\"type\": \"circle_point\", \"angle\": " +
         jsonfmt::num(cert.circle_witness->angle) +
         ", \"value\": " + jsonfmt::num(cert.circle_witness->value) + "},\n";
  } else if (cert.vector_witness) {
    s += "  \"witness\": {\"type\": \"vector\", \"v\": " +
         jsonfmt::cplx_list(cert.vector_witness->v) +
         ", \"value\": " + jsonfmt::num(cert.vector_witness->value) + "},\n";
  }
  s += "  \"diagnostics\": {\"residual\": " +
       jsonfmt::num(cert.diagnostics.residual) +
       ", \"q_roots\": " + jsonfmt::cplx_list(cert.diagnostics.q_roots) +
       ", \"min_pivot\": " + jsonfmt::num(cert.diagnostics.min_pivot) +
       ", \"symbol_min\": " + jsonfmt::num(cert.diagnostics.symbol_min) +
       "}\n";
  return s + "}";
}

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j,
                                           const char* field) {
  if (!j.is_object() || !j.contains(field))
    throw ParseError(std::string("missing field '") + field + "'");
  return j.at(field);
}

inline Complex complex_from_json(const nlohmann::json& j, const char* field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number())
    throw ParseError(std::string("field '") + field +
                     "' must contain [re, im] number pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline LaurentPoly laurent_from_json(const nlohmann::json& j) {
  const auto& md = detail::require_field(j, "min_degree");
  if (!md.is_number_integer())
    throw ParseError("field 'min_degree' must be an integer");
  const auto& cs = detail::require_field(j, "coeffs");
  if (!cs.is_array()) throw ParseError("field 'coeffs' must be an array");
  std::vector<Complex> c;
  c.reserve(cs.size());
  for (const auto& e : cs) c.push_back(detail::complex_from_json(e, "coeffs"));
  return {md.get<int>(), std::move(c)};
}

inline AnalyticPolynomial analytic_from_json(const nlohmann::json& j) {
  const auto& cs = detail::require_field(j, "coeffs");
  if (!cs.is_array()) throw ParseError("field 'coeffs' must be an array");
  std::vector<Complex> c;
  for (const auto& e : cs) c.push_back(detail::complex_from_json(e, "coeffs"));
  return AnalyticPolynomial(std::move(c));
}

inline AlgebraElement element_from_json(const nlohmann::json& j) {
  const auto& cut = detail::require_field(j, "cut");
  if (!cut.is_number_integer() || cut.get<long>() < 0)
    throw ParseError("field 'cut' must be a nonnegative integer");
  const auto& fb = detail::require_field(j, "finite_block");
  if (!fb.is_array() || fb.empty())
    throw ParseError("field 'finite_block' must be a nonempty array of rows");
  const size_t rows = fb.size();
  CMatrix block(static_cast<Eigen::Index>(rows),
                static_cast<Eigen::Index>(rows));
  for (size_t i = 0; i < rows; ++i) {
    if (!fb[i].is_array() || fb[i].size() != rows)
      throw ParseError("field 'finite_block' must be a square matrix");
    for (size_t k = 0; k < rows; ++k)
      block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          detail::complex_from_json(fb[i][k], "finite_block");
  }
  const LaurentPoly symbol =
      laurent_from_json(detail::require_field(j, "symbol"));
  return AlgebraElement::from_parts(block, symbol);
}

}  // namespace ncfr
