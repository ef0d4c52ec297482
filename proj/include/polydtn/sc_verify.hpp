#pragma once

// Schwarz-Christoffel integrals for the regular octagon and the slit-position
// check for the rectangle picture of the response matrix.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace polydtn {

struct QuadratureOptions {
  int min_panels = 1;
  int max_refinements = 16;
  double rel_tol = 1e-10;
};

struct QuadratureResult {
  double value = 0.0;
  std::vector<double> estimates;  // one per panel doubling
  int panels = 0;
};

/// Integral over (a, b) of smooth(w) / sqrt((w - a)(b - w)). Substitutes
/// w = mid + half sin(theta), which removes both endpoint singularities, then
/// applies composite 20-point Gauss-Legendre, doubling the panel count until
/// two estimates agree to rel_tol. Throws NumericalFailure otherwise.
QuadratureResult singular_quadrature(double a, double b, const std::function<double(double)>& smooth,
                                     const QuadratureOptions& options = {});

/// x_l = cot((1/2 - l) pi / 8) for l = 1..8, in l order.
std::array<double, 8> octagon_prevertices();

/// Magnitude integral over (x_i, x_{i+1}) (1-based, sorted prevertices) of
/// |numerator(w)| / prod_l |w - x_l|^{1/2}.
QuadratureResult octagon_interval_integral(int i, const std::function<double(double)>& numerator,
                                           const QuadratureOptions& options = {});

/// Ratio over (x_3, x_4) of the w^2 and 1 integrals.
double octagon_b_squared(const QuadratureOptions& options = {});

struct OctagonReport {
  std::array<double, 8> prevertices{};   // sorted increasing
  std::array<int, 8> permutation{};      // sorted position k holds x_{permutation[k]}
  double b_squared = 0.0;
  double numerator = 0.0;                // |integral over (x_4, x_5)| of |w^2 - b^2| / prod
  double denominator = 0.0;              // |integral over (x_7, x_8)| of |w^2 - b^2| / prod
  int numerator_quarter_turns = 0;       // phase of the signed integral, in units of i
  int denominator_quarter_turns = 0;
  bool phase_consistent = false;         // relative phase is +-i (a width against a height)
  double lambda = 0.0;                   // -numerator / denominator
  double exact = 0.0;                    // closed-form Lambda_{j,j+2}, n = 4
  double difference = 0.0;
  double refinement_change = 0.0;        // |lambda - lambda with doubled panels|
};

/// Throws NumericalFailure when w^2 - b^2 changes sign inside either
/// interval or the quadrature does not converge.
OctagonReport octagon_offdiag_via_sc(const QuadratureOptions& options = {});

struct SlitReport {
  int n = 0;
  std::vector<double> endpoints;  // cumulative -Lambda_{1,1+d}, d = 0..n-1
  std::vector<double> cotangents; // cot((1/2 - l) pi / n), l = 1..n
  double scale = 0.0;             // endpoints ~ scale * cotangents + offset
  double offset = 0.0;
  double max_residual = 0.0;
  bool consistent = false;        // max_residual <= 1e-9
};

/// Builds interval widths -Lambda_{1,k} from one row of the response matrix
/// and fits one affine map to the cotangent sequence.
SlitReport slit_position_check(int n);

}  // namespace polydtn
