#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "ncfr/spectral.hpp"

using namespace ncfr;

namespace {

// Independent construction of a factorable symbol: expand conj-reflect(q)*q
// from explicitly chosen roots, never through the code under test.
struct KnownFactor {
  AnalyticPolynomial q;
  HermitianLaurentSymbol symbol;
};

KnownFactor symbol_from_roots(const std::vector<Complex>& roots,
                              double lead_scale) {
  std::vector<Complex> monic{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(monic.size() + 1, Complex{});
    for (size_t i = 0; i < monic.size(); ++i) {
      next[i + 1] += monic[i];
      next[i] -= r * monic[i];
    }
    monic = std::move(next);
  }
  const Complex m0 = monic[0];
  const Complex c = lead_scale * std::conj(m0) / std::abs(m0);
  std::vector<Complex> y(monic.size());
  for (size_t i = 0; i < monic.size(); ++i) y[i] = c * monic[i];
  AnalyticPolynomial q(y, true);
  const LaurentPoly p = involute(q.to_laurent()) * q.to_laurent();
  return {q, HermitianLaurentSymbol::from_laurent(p, 1e-12 * l1_norm(p))};
}

double factor_distance(const AnalyticPolynomial& a,
                       const AnalyticPolynomial& b) {
  double m = 0;
  const int d = std::max(a.degree(), b.degree());
  for (int k = 0; k <= d; ++k) m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
  return m;
}

}  // namespace

TEST_CASE("root-selection factorization on closed forms") {
  // z^{-1} + 2 + z = (1 + z^{-1})(1 + z): circle root at -1
  const HermitianLaurentSymbol a({2.0, 1.0});
  const AnalyticPolynomial qa = fejer_riesz_roots(a);
  REQUIRE(qa.degree() == 1);
  REQUIRE(std::abs(qa.coeff(0) - 1.0) < 1e-10);
  REQUIRE(std::abs(qa.coeff(1) - 1.0) < 1e-10);

  // 2 z^{-1} + 5 + 2 z = (2 + z^{-1})(2 + z): root at -2
  const HermitianLaurentSymbol b({5.0, 2.0});
  const AnalyticPolynomial qb = fejer_riesz_roots(b);
  REQUIRE(std::abs(qb.coeff(0) - 2.0) < 1e-12);
  REQUIRE(std::abs(qb.coeff(1) - 1.0) < 1e-12);

  const HermitianLaurentSymbol one({1.0});
  REQUIRE(fejer_riesz_roots(one).degree() == 0);
  REQUIRE(fejer_riesz_roots(one).coeff(0) == Complex(1.0));
}

TEST_CASE("factorization errors") {
  REQUIRE_THROWS_AS(fejer_riesz_roots(HermitianLaurentSymbol({0.0})),
                    DegenerateSymbol);
  // z + z^{-1} is negative at pi
  REQUIRE_THROWS_AS(fejer_riesz_roots(HermitianLaurentSymbol({0.0, 1.0})),
                    NotNonnegative);
  try {
    fejer_riesz_roots(HermitianLaurentSymbol({0.0, 1.0}));
  } catch (const NotNonnegative& e) {
    REQUIRE(e.value() == Catch::Approx(-2.0).margin(1e-10));
    REQUIRE(e.angle() == Catch::Approx(std::numbers::pi).margin(1e-6));
  }
}

TEST_CASE("round trip recovers a known outer factor") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> rad(1.0, 3.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + trial % 6;
    std::vector<Complex> roots;
    for (int i = 0; i < d; ++i)
      roots.push_back(std::polar(rad(rng), ang(rng)));
    const KnownFactor known = symbol_from_roots(roots, 0.5 + u01(rng));
    const AnalyticPolynomial q = fejer_riesz_roots(known.symbol);
    REQUIRE(q.degree() == known.q.degree());
    REQUIRE(factor_distance(q, known.q) < 1e-8);
  }
}

TEST_CASE("degree equals the effective band degree after trimming") {
  // x_2 exactly zero: band degree 2, effective degree 1
  const HermitianLaurentSymbol s({5.0, 2.0, 0.0});
  const AnalyticPolynomial q = fejer_riesz_roots(s);
  REQUIRE(q.degree() == 1);
  REQUIRE(std::abs(q.coeff(0) - 2.0) < 1e-12);
}

TEST_CASE("factor identity holds coefficientwise") {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> rad(1.0, 2.5);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + trial % 5;
    std::vector<Complex> roots;
    for (int i = 0; i < d; ++i)
      roots.push_back(std::polar(trial % 3 == 0 && i == 0 ? 1.0 : rad(rng),
                                 ang(rng)));
    const KnownFactor known = symbol_from_roots(roots, 1.0);
    const AnalyticPolynomial q = fejer_riesz_roots(known.symbol);
    const double res =
        coeff_distance(involute(q.to_laurent()) * q.to_laurent(),
                       known.symbol.to_laurent());
    REQUIRE(res <= 1e-9 * known.symbol.coeff_scale());
    REQUIRE(is_outer(q));
  }
}

TEST_CASE("bauer iteration agrees with the root construction") {
  const HermitianLaurentSymbol b({5.0, 2.0});
  const AnalyticPolynomial q = bauer_factor(b);
  REQUIRE(std::abs(q.coeff(0) - 2.0) < 1e-6);
  REQUIRE(std::abs(q.coeff(1) - 1.0) < 1e-6);

  const AnalyticPolynomial one = bauer_factor(HermitianLaurentSymbol({1.0}));
  REQUIRE(one.degree() == 0);
  REQUIRE(one.coeff(0) == Complex(1.0));
}

TEST_CASE("bauer does not converge across a circle zero") {
  // (1+z^{-1})(1+z) vanishes at -1; the band drifts like 1/N
  const HermitianLaurentSymbol s({2.0, 1.0});
  REQUIRE_THROWS_AS(bauer_factor(s), NotConverged);
}

TEST_CASE("bauer rejects negative symbols") {
  REQUIRE_THROWS_AS(bauer_factor(HermitianLaurentSymbol({-1.0})),
                    NotNonnegative);
  REQUIRE_THROWS_AS(bauer_factor(HermitianLaurentSymbol({0.0, 1.0})),
                    NotNonnegative);
}

TEST_CASE("backends agree on strictly positive symbols") {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> rad(1.05, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 8;
    std::vector<Complex> roots;
    for (int i = 0; i < d; ++i)
      roots.push_back(std::polar(rad(rng), ang(rng)));
    const KnownFactor known = symbol_from_roots(roots, 1.0);
    const AnalyticPolynomial qr = fejer_riesz_roots(known.symbol);
    const AnalyticPolynomial qb = bauer_factor(known.symbol);
    REQUIRE(factor_distance(qr, qb) < 1e-6);
  }
}

TEST_CASE("uniqueness: both backends return the normalized factor") {
  const KnownFactor known =
      symbol_from_roots({Complex(1.3, 0.4), Complex(-1.8, 0.0)}, 0.7);
  REQUIRE(factor_distance(fejer_riesz_roots(known.symbol), known.q) < 1e-6);
  REQUIRE(factor_distance(bauer_factor(known.symbol), known.q) < 1e-6);
}

TEST_CASE("outer test by root location") {
  REQUIRE(is_outer(AnalyticPolynomial({1.0, 1.0})));   // root -1
  REQUIRE_FALSE(is_outer(AnalyticPolynomial({0.0, 1.0})));  // root 0
  REQUIRE(is_outer(AnalyticPolynomial({2.0, 1.0})));   // root -2
  REQUIRE(is_outer(AnalyticPolynomial({1.0})));        // no roots
  REQUIRE_THROWS_AS(is_outer(AnalyticPolynomial({0.0})),
                    std::invalid_argument);
}

TEST_CASE("root clustering merges a split double circle root") {
  const double delta = 1e-8;
  const std::vector<Complex> roots{std::polar(1.0 + delta, 2.0),
                                   std::polar(1.0 - delta, 2.0),
                                   Complex(2.0, 0.0), Complex(0.25, 0.0)};
  const auto clusters = cluster_roots(roots);
  REQUIRE(clusters.size() == 3);
  int circle = 0, inside = 0, outside = 0;
  for (const auto& c : clusters) {
    if (c.location == RootLocation::circle) {
      ++circle;
      REQUIRE(c.multiplicity == 2);
      REQUIRE(std::abs(std::abs(c.representative) - 1.0) < 1e-15);
    }
    if (c.location == RootLocation::inside) ++inside;
    if (c.location == RootLocation::outside) ++outside;
  }
  REQUIRE(circle == 1);
  REQUIRE(inside == 1);
  REQUIRE(outside == 1);
}
