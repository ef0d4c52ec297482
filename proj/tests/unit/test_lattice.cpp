#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polydtn/error.hpp"
#include "polydtn/exact_response.hpp"
#include "polydtn/polygon_lattice.hpp"

using namespace polydtn;

TEST_CASE("polygon geometry") {
  for (int n : {2, 3, 5}) {
    const PolygonSpec p{n, 0.0};
    CHECK(p.side_count() == static_cast<std::size_t>(2 * n));
    CHECK(p.vertex_radius() == doctest::Approx(1.0 / std::cos(std::numbers::pi / (2 * n))));
    const auto u = p.normal(2);
    CHECK(u[0] == doctest::Approx(std::cos(2 * std::numbers::pi / n)));
    // A polygon vertex sits at distance 1 from both adjacent side lines.
    const double r = p.vertex_radius(), t = std::numbers::pi * 1.5 / n;
    const auto u1 = p.normal(1), u2 = p.normal(2);
    CHECK(r * (std::cos(t) * u1[0] + std::sin(t) * u1[1]) == doctest::Approx(1.0));
    CHECK(r * (std::cos(t) * u2[0] + std::sin(t) * u2[1]) == doctest::Approx(1.0));
  }
  CHECK(PolygonSpec::wired(2));
  CHECK_FALSE(PolygonSpec::wired(3));
}

TEST_CASE("the square is reproduced exactly") {
  for (double eps : {0.2, 0.1, 0.05}) {
    const LatticeDiscretization lat = build_lattice(2, eps);
    const DtnMatrix d = dirichlet_to_neumann(lat.network);
    CHECK(d.matrix(0, 1) == doctest::Approx(-1.0).epsilon(1e-10));
  }
}

TEST_CASE("lattice networks are well formed") {
  const LatticeDiscretization lat = build_lattice(3, 0.05);
  CHECK(lat.network.node_count() == 3);
  CHECK(lat.network.circular_planar());
  CHECK(lat.grid_points.size() + 3 == lat.network.vertex_count());
  for (std::size_t c : lat.node_couplings) CHECK(c >= 2);
  for (const auto& p : lat.grid_points) {
    const double x = p[0] * 0.05, y = p[1] * 0.05;
    CHECK(std::hypot(x, y) <= lat.polygon.vertex_radius() + 0.05);
  }
  const Eigen::MatrixXd d = dirichlet_to_neumann(lat.network).matrix;
  CHECK((d - d.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(d.rowwise().sum().cwiseAbs().maxCoeff() < 1e-9);
  CHECK(d(0, 1) < 0);
  CHECK(d(0, 2) < 0);
}

TEST_CASE("bad parameters are rejected") {
  CHECK_THROWS_AS(build_lattice(1, 0.1), InvalidInput);
  CHECK_THROWS_AS(build_lattice(3, 0.0), InvalidInput);
  CHECK_THROWS_AS(build_lattice(3, -0.1), InvalidInput);
  CHECK_THROWS_AS(build_lattice(3, 1.5), InvalidInput);  // too coarse
  CHECK_THROWS_AS(build_lattice(12, 0.4), InvalidInput);
  CHECK_THROWS_AS(convergence_study(3, {0.05, 0.05}), InvalidInput);
  CHECK_THROWS_AS(convergence_study(3, {0.02, 0.04}), InvalidInput);
  CHECK_THROWS_AS(convergence_study(3, {}), InvalidInput);
}

TEST_CASE("refinement reduces the error for n = 3 and n = 4") {
  for (int n : {3, 4}) {
    const ConvergenceStudy s = convergence_study(n, {0.04, 0.02, 0.01}, 0.0, 1);
    CHECK(s.strictly_decreasing());
    CHECK(s.weakly_decreasing());
    CHECK(s.levels.back().max_rel_error < 0.05);
    CHECK(s.observed_rates().size() == 2);
    for (double r : s.observed_rates()) CHECK(r > 0);
  }
}

TEST_CASE("n = 6 at a fine grid is within 5% on Lambda_1") {
  const ConvergenceStudy s = convergence_study(6, {0.01}, 0.0, 1);
  CHECK(std::abs(s.levels[0].generator[1] / lambda_entry(6, 1, 0) - 1.0) < 0.05);
}

TEST_CASE("an axis-aligned square grid keeps the n = 4 response circulant") {
  const ConvergenceStudy s = convergence_study(4, {0.04, 0.02}, 0.0, 1);
  for (const auto& level : s.levels) CHECK(level.circulant_spread < 1e-9);
}

TEST_CASE("rotation is supported and the anisotropy is reported") {
  const ConvergenceStudy s = convergence_study(4, {0.02}, 0.3, 1);
  CHECK(s.levels[0].circulant_spread > 0.0);
  CHECK(s.levels[0].max_rel_error < 0.05);
}

TEST_CASE("compare_with_exact on the exact matrix") {
  const StudyLevel l = compare_with_exact(ResponseMatrix(5).dense());
  CHECK(l.max_abs_error < 1e-15);
  CHECK(l.circulant_spread < 1e-15);
}
