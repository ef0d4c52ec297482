#include "polydtn/sc_verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "polydtn/error.hpp"
#include "polydtn/exact_response.hpp"

namespace polydtn {

namespace {

double composite_gauss(const std::function<double(double)>& g, double lo, double hi, int panels) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const double width = (hi - lo) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    sum += Rule::integrate(g, a, p + 1 == panels ? hi : a + width);
  }
  return sum;
}

double cot(double x) { return std::cos(x) / std::sin(x); }

std::array<double, 8> sorted_prevertices(std::array<int, 8>* permutation = nullptr) {
  const auto x = octagon_prevertices();
  std::array<int, 8> order{};
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return x[a] < x[b]; });
  std::array<double, 8> out{};
  for (int k = 0; k < 8; ++k) {
    out[k] = x[order[k]];
    if (permutation) (*permutation)[k] = order[k] + 1;
  }
  return out;
}

}  // namespace

QuadratureResult singular_quadrature(double a, double b, const std::function<double(double)>& smooth,
                                     const QuadratureOptions& options) {
  if (!(a < b)) throw InvalidInput("quadrature interval must satisfy a < b");
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const auto g = [&](double theta) { return smooth(mid + half * std::sin(theta)); };
  const double lo = -0.5 * std::numbers::pi, hi = 0.5 * std::numbers::pi;

  QuadratureResult out;
  int panels = std::max(1, options.min_panels);
  double previous = composite_gauss(g, lo, hi, panels);
  out.estimates.push_back(previous);
  for (int r = 0; r < options.max_refinements; ++r) {
    panels *= 2;
    const double current = composite_gauss(g, lo, hi, panels);
    out.estimates.push_back(current);
    if (std::abs(current - previous) <= options.rel_tol * std::abs(current)) {
      out.value = current;
      out.panels = panels;
      return out;
    }
    previous = current;
  }
  const auto n = out.estimates.size();
  throw NumericalFailure("quadrature did not converge on (" + std::to_string(a) + ", " + std::to_string(b) +
                         "): last estimates " + std::to_string(out.estimates[n - 2]) + ", " +
                         std::to_string(out.estimates[n - 1]));
}

std::array<double, 8> octagon_prevertices() {
  std::array<double, 8> x{};
  for (int l = 1; l <= 8; ++l) x[l - 1] = cot((0.5 - l) * std::numbers::pi / 8.0);
  return x;
}

QuadratureResult octagon_interval_integral(int i, const std::function<double(double)>& numerator,
                                           const QuadratureOptions& options) {
  if (i < 1 || i > 7) throw InvalidInput("octagon interval index must be 1..7");
  const auto x = sorted_prevertices();
  const double a = x[i - 1], b = x[i];
  const auto smooth = [&](double w) {
    double prod = 1.0;
    for (int l = 0; l < 8; ++l) {
      if (l != i - 1 && l != i) prod *= std::abs(w - x[l]);
    }
    return std::abs(numerator(w)) / std::sqrt(prod);
  };
  return singular_quadrature(a, b, smooth, options);
}

double octagon_b_squared(const QuadratureOptions& options) {
  const double num = octagon_interval_integral(3, [](double w) { return w * w; }, options).value;
  const double den = octagon_interval_integral(3, [](double) { return 1.0; }, options).value;
  return num / den;
}

OctagonReport octagon_offdiag_via_sc(const QuadratureOptions& options) {
  OctagonReport r;
  r.prevertices = sorted_prevertices(&r.permutation);
  r.b_squared = octagon_b_squared(options);
  const double b = std::sqrt(r.b_squared);
  const double a4 = r.prevertices[3], a5 = r.prevertices[4];
  for (int i : {4, 7}) {
    const double lo = r.prevertices[i - 1], hi = r.prevertices[i];
    if ((b > lo && b < hi) || (-b > lo && -b < hi)) {
      throw NumericalFailure("w^2 - b^2 changes sign inside (x" + std::to_string(i) + ", x" + std::to_string(i + 1) +
                             "); the integral has no single phase");
    }
  }
  const double bsq = r.b_squared;
  const auto numerator_fn = [bsq](double w) { return w * w - bsq; };

  const QuadratureResult num = octagon_interval_integral(4, numerator_fn, options);
  const QuadratureResult den = octagon_interval_integral(7, numerator_fn, options);
  r.numerator = num.value;
  r.denominator = den.value;

  // Each factor (w - x_l)^{1/2} with w < x_l contributes a factor i.
  auto negatives = [&](int i) {
    const double w = 0.5 * (r.prevertices[i - 1] + r.prevertices[i]);
    return static_cast<int>(std::count_if(r.prevertices.begin(), r.prevertices.end(), [&](double x) { return w < x; }));
  };
  const double mid = 0.5 * (a4 + a5);
  const int sign_turns = numerator_fn(mid) < 0 ? 2 : 0;
  r.numerator_quarter_turns = ((sign_turns - negatives(4)) % 4 + 4) % 4;
  const int den_sign_turns = numerator_fn(0.5 * (r.prevertices[6] + r.prevertices[7])) < 0 ? 2 : 0;
  r.denominator_quarter_turns = ((den_sign_turns - negatives(7)) % 4 + 4) % 4;
  r.phase_consistent = ((r.numerator_quarter_turns - r.denominator_quarter_turns) % 2 + 2) % 2 == 1;

  r.lambda = -(r.numerator / r.denominator);
  r.exact = lambda_entry(4, 0, 2);
  r.difference = std::abs(r.lambda - r.exact);

  QuadratureOptions finer = options;
  finer.min_panels = 2 * std::max(num.panels, den.panels);
  const double bsq_fine = octagon_b_squared(finer);
  const double num_fine = octagon_interval_integral(4, [bsq_fine](double w) { return w * w - bsq_fine; }, finer).value;
  const double den_fine = octagon_interval_integral(7, [bsq_fine](double w) { return w * w - bsq_fine; }, finer).value;
  r.refinement_change = std::abs(r.lambda + num_fine / den_fine);
  return r;
}

SlitReport slit_position_check(int n) {
  if (n < 2) throw InvalidInput("slit check needs n >= 2");
  SlitReport r;
  r.n = n;
  const ResponseMatrix lambda(n);
  double position = 0.0;
  for (int d = 0; d < n; ++d) {
    if (d > 0) position -= lambda.generator()[static_cast<std::size_t>(d)];
    r.endpoints.push_back(position);
    r.cotangents.push_back(cot((0.5 - (d + 1)) * std::numbers::pi / n));
  }
  // Least-squares line endpoints ~ scale * cot + offset.
  const double m = n;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < n; ++k) {
    const double x = r.cotangents[static_cast<std::size_t>(k)], y = r.endpoints[static_cast<std::size_t>(k)];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  r.scale = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  r.offset = (sy - r.scale * sx) / m;
  for (int k = 0; k < n; ++k) {
    const double fit = r.scale * r.cotangents[static_cast<std::size_t>(k)] + r.offset;
    r.max_residual = std::max(r.max_residual, std::abs(fit - r.endpoints[static_cast<std::size_t>(k)]));
  }
  r.consistent = r.max_residual <= 1e-9;
  return r;
}

}  // namespace polydtn
