#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polydtn/error.hpp"
#include "polydtn/exact_response.hpp"
#include "polydtn/sc_verify.hpp"

using namespace polydtn;

TEST_CASE("Beta integrals") {
  const double pi = std::numbers::pi;
  CHECK(std::abs(singular_quadrature(0, 1, [](double) { return 1.0; }).value - pi) < 1e-12);
  CHECK(std::abs(singular_quadrature(-1, 1, [](double) { return 1.0; }).value - pi) < 1e-12);
  CHECK(std::abs(singular_quadrature(0, 1, [](double w) { return w; }).value - pi / 2) < 1e-12);
  // integral_0^1 w^2 / sqrt(w(1-w)) = 3 pi / 8
  CHECK(std::abs(singular_quadrature(0, 1, [](double w) { return w * w; }).value - 3 * pi / 8) < 1e-12);
  CHECK_THROWS_AS(singular_quadrature(1, 0, [](double) { return 1.0; }), InvalidInput);
}

TEST_CASE("refinement estimates settle") {
  // nearby pole outside the interval needs several doublings
  const auto f = [](double w) { return 1.0 / (w - 1.05); };
  const QuadratureResult r = singular_quadrature(0, 1, f);
  REQUIRE(r.estimates.size() >= 2);
  const double last = r.estimates.back(), prev = r.estimates[r.estimates.size() - 2];
  CHECK(std::abs(last - prev) <= 1e-10 * std::abs(last));
  CHECK(r.value == last);
  QuadratureOptions fine;
  fine.min_panels = 64;
  CHECK(std::abs(singular_quadrature(0, 1, f, fine).value - r.value) < 1e-9 * std::abs(r.value));
}

TEST_CASE("non-convergence is reported") {
  QuadratureOptions o;
  o.max_refinements = 1;
  o.rel_tol = 1e-16;
  CHECK_THROWS_AS(singular_quadrature(0, 1, [](double w) { return std::sqrt(std::abs(w - 0.3)); }, o), NumericalFailure);
}

TEST_CASE("octagon prevertices") {
  const auto x = octagon_prevertices();
  CHECK(x[3] == doctest::Approx(1.0 / std::tan(-7 * std::numbers::pi / 16)));
  CHECK(x[2] == doctest::Approx(1.0 / std::tan(-5 * std::numbers::pi / 16)));
  for (int i = 1; i < 8; ++i) CHECK(x[i - 1] < x[i]);
}

TEST_CASE("b^2 is a weighted mean of w^2 on (x3, x4)") {
  const auto x = octagon_prevertices();
  const double b2 = octagon_b_squared();
  CHECK(b2 > std::min(x[2] * x[2], x[3] * x[3]));
  CHECK(b2 < std::max(x[2] * x[2], x[3] * x[3]));
  QuadratureOptions fine;
  fine.min_panels = 16;
  CHECK(std::abs(octagon_b_squared(fine) - b2) < 1e-8);
}

TEST_CASE("octagon ratio equals 1/2 - 1/sqrt 2") {
  const OctagonReport r = octagon_offdiag_via_sc();
  CHECK(std::abs(r.lambda - (0.5 - 1 / std::sqrt(2.0))) < 1e-6);
  CHECK(std::abs(r.lambda - lambda_entry(4, 1, 3)) < 1e-6);
  CHECK(r.refinement_change < 1e-8);
  CHECK(r.phase_consistent);
  CHECK(r.numerator > 0);
  CHECK(r.denominator > 0);
  for (int k = 0; k < 8; ++k) CHECK(r.permutation[static_cast<std::size_t>(k)] == k + 1);
}

TEST_CASE("slit positions are affine in cotangents of evenly spaced angles") {
  for (int n : {2, 3, 4, 7, 16, 64}) {
    const SlitReport r = slit_position_check(n);
    CHECK(r.consistent);
    CHECK(r.endpoints.front() == 0.0);
    CHECK(r.scale == doctest::Approx(1.0 / n));
    CHECK(r.endpoints.back() == doctest::Approx(lambda_entry(n, 0, 0)));
  }
  CHECK_THROWS_AS(slit_position_check(1), InvalidInput);
}
