#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ncfr/generate.hpp"
#include "ncfr/serialize.hpp"

using namespace ncfr;

TEST_CASE("floating output uses seventeen significant digits") {
  REQUIRE(jsonfmt::num(0.1) == "0.10000000000000001");
  REQUIRE(jsonfmt::num(1.0) == "1");
  REQUIRE(jsonfmt::num(-2.5) == "-2.5");
  const double pi = 3.14159265358979323846;
  REQUIRE(std::stod(jsonfmt::num(pi)) == pi);
}

TEST_CASE("laurent polynomials round trip as a fixed point") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Complex> c(5);
    for (auto& v : c) v = unit_complex_gaussian(rng);
    const LaurentPoly p(-2, c);
    const std::string s1 = to_json(p);
    const LaurentPoly q = laurent_from_json(nlohmann::json::parse(s1));
    REQUIRE(coeff_distance(p, q) == 0.0);
    REQUIRE(to_json(q) == s1);
  }
  // zero polynomial
  const std::string z = to_json(LaurentPoly());
  REQUIRE(laurent_from_json(nlohmann::json::parse(z)).is_zero());
}

TEST_CASE("elements round trip as a fixed point") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const AlgebraElement x = random_element(rng, 1 + trial % 5);
    const std::string s1 = to_json(x);
    const AlgebraElement y = element_from_json(nlohmann::json::parse(s1));
    REQUIRE(equals(x, y, 0.0));
    REQUIRE(to_json(y) == s1);
  }
}

TEST_CASE("parsing a padded block re-canonicalizes") {
  const std::string padded = R"({
    "cut": 3,
    "finite_block": [[[1,0],[0,0],[0,0],[0,0]],
                     [[0,0],[0,0],[0,0],[0,0]],
                     [[0,0],[0,0],[0,0],[0,0]],
                     [[0,0],[0,0],[0,0],[0,0]]],
    "symbol": {"min_degree": 0, "coeffs": [[1,0]]}
  })";
  const AlgebraElement x = element_from_json(nlohmann::json::parse(padded));
  REQUIRE(x.cut() == 0);
  REQUIRE(x.entry(0, 0) == Complex(2.0));
}

TEST_CASE("parse errors name the offending field") {
  auto expect_error = [](const char* text, const char* needle) {
    try {
      element_from_json(nlohmann::json::parse(text));
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      REQUIRE(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error(R"({"finite_block": [[[0,0]]],
                   "symbol": {"min_degree": 0, "coeffs": []}})",
               "cut");
  expect_error(R"({"cut": 0, "symbol": {"min_degree": 0, "coeffs": []}})",
               "finite_block");
  expect_error(R"({"cut": 0, "finite_block": [[[0,0],[0,0]]],
                   "symbol": {"min_degree": 0, "coeffs": []}})",
               "finite_block");
  expect_error(R"({"cut": 0, "finite_block": [[[0,0]]],
                   "symbol": {"coeffs": []}})",
               "min_degree");
}

TEST_CASE("certificates serialize with witness and diagnostics") {
  const PositivityCertificate pos = factorize(example_corner_plus_band());
  const std::string s = to_json(pos);
  const auto j = nlohmann::json::parse(s);
  REQUIRE(j.at("verdict") == "positive");
  REQUIRE(j.contains("factor"));
  REQUIRE_FALSE(j.contains("witness"));
  REQUIRE(j.at("diagnostics").contains("residual"));
  REQUIRE(j.at("diagnostics").at("q_roots").size() == 1);
  const AlgebraElement y = element_from_json(j.at("factor"));
  REQUIRE(equals(adjoint(y) * y, example_corner_plus_band(), 1e-10));

  const PositivityCertificate neg = factorize(
      AlgebraElement::toeplitz(LaurentPoly(-1, {1.0, 0.0, 1.0})));
  const auto jn = nlohmann::json::parse(to_json(neg));
  REQUIRE(jn.at("verdict") == "not_positive");
  REQUIRE(jn.at("witness").at("type") == "circle_point");
  REQUIRE_FALSE(jn.contains("factor"));
}
