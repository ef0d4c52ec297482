#include "polydtn/polygon_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <queue>
#include <string>

#include "polydtn/error.hpp"
#include "polydtn/exact_response.hpp"
#include "polydtn/parallel.hpp"

namespace polydtn {

std::array<double, 2> PolygonSpec::normal(int side) const {
  const double angle = std::numbers::pi * side / n + rotation;
  return {std::cos(angle), std::sin(angle)};
}

double PolygonSpec::vertex_radius() const { return 1.0 / std::cos(std::numbers::pi / (2.0 * n)); }

namespace {

constexpr double kOnSide = 1e-9;
constexpr double kMinTheta = 1e-3;

struct Geometry {
  int sides = 0;
  double eps = 0.0;
  std::vector<double> ux, uy, limit;
  std::vector<char> wired;

  // Fraction of the dual face (length eps along `dir`, centred at (mx, my))
  // inside the polygon.
  double face_fraction(double mx, double my, double dx, double dy) const {
    double lo = -0.5, hi = 0.5;
    for (int k = 0; k < sides; ++k) {
      const double c = mx * ux[k] + my * uy[k];
      const double s = eps * (dx * ux[k] + dy * uy[k]);
      if (std::abs(s) < 1e-15) {
        if (c > 1.0 + 1e-12) return 0.0;
        continue;
      }
      const double t = (1.0 - c) / s;
      if (s > 0) {
        hi = std::min(hi, t);
      } else {
        lo = std::max(lo, t);
      }
    }
    return std::max(0.0, hi - lo);
  }
};

}  // namespace

LatticeDiscretization build_lattice(int n, double epsilon, double rotation) {
  if (n < 2) throw InvalidInput("polygon needs n >= 2, got " + std::to_string(n));
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidInput("grid spacing must be positive");
  if (!std::isfinite(rotation)) throw InvalidInput("rotation must be finite");
  const PolygonSpec polygon{n, rotation};
  const double radius = polygon.vertex_radius();
  if (radius / epsilon > 20000.0) throw InvalidInput("grid spacing too fine (more than 1.6e9 grid points)");

  Geometry g;
  g.sides = 2 * n;
  g.eps = epsilon;
  for (int k = 0; k < g.sides; ++k) {
    const int side = k + 1;
    const auto u = polygon.normal(side);
    g.ux.push_back(u[0]);
    g.uy.push_back(u[1]);
    g.wired.push_back(PolygonSpec::wired(side) ? 1 : 0);
    g.limit.push_back(PolygonSpec::wired(side) ? 1.0 + kOnSide : 1.0 + epsilon / 2.0);
  }

  const long m = static_cast<long>(std::ceil(radius / epsilon)) + 3;
  const long width = 2 * m + 1;
  auto coord = [&](long a) { return static_cast<double>(a - m) * epsilon; };

  // label: -2 outside, >= 0 vertex id (nodes 0..n-1, interior n..).
  std::vector<std::int64_t> label(static_cast<std::size_t>(width * width), -2);
  std::vector<std::array<int, 2>> points;
  std::int64_t next_id = n;
  for (long a = 0; a < width; ++a) {
    for (long b = 0; b < width; ++b) {
      const double x = coord(a), y = coord(b);
      bool inside = true;
      int node = -1;
      for (int k = 0; k < g.sides && inside; ++k) {
        const double s = x * g.ux[k] + y * g.uy[k];
        if (s > g.limit[k]) inside = false;
        if (g.wired[k] && node < 0 && std::abs(s - 1.0) <= kOnSide) node = k / 2;
      }
      if (!inside) continue;
      auto& slot = label[static_cast<std::size_t>(a * width + b)];
      if (node >= 0) {
        slot = node;
      } else {
        slot = next_id++;
        points.push_back({static_cast<int>(a - m), static_cast<int>(b - m)});
      }
    }
  }
  if (points.empty()) throw InvalidInput("lattice has no interior vertices at eps=" + std::to_string(epsilon));

  std::vector<Edge> edges;
  constexpr int kDirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (long a = 1; a + 1 < width; ++a) {
    for (long b = 1; b + 1 < width; ++b) {
      const std::int64_t id = label[static_cast<std::size_t>(a * width + b)];
      if (id < n) continue;
      const double x = coord(a), y = coord(b);
      for (const auto& dir : kDirs) {
        const long a2 = a + dir[0], b2 = b + dir[1];
        const std::int64_t other = label[static_cast<std::size_t>(a2 * width + b2)];
        const double px = std::abs(dir[1]), py = std::abs(dir[0]);
        if (other >= 0) {
          if (other >= n && other < id) continue;
          const double c = g.face_fraction((x + coord(a2)) / 2, (y + coord(b2)) / 2, px, py);
          if (c > 0) edges.push_back({static_cast<std::size_t>(id), static_cast<std::size_t>(other), c});
          continue;
        }
        // First side crossed on the way to the excluded neighbour.
        const double sx = dir[0] * epsilon, sy = dir[1] * epsilon;
        double best = 2.0;
        int side = -1;
        for (int k = 0; k < g.sides; ++k) {
          const double s = sx * g.ux[k] + sy * g.uy[k];
          if (s <= 1e-15) continue;
          const double t = (g.limit[k] - (x * g.ux[k] + y * g.uy[k])) / s;
          if (t < best) {
            best = t;
            side = k;
          }
        }
        if (side < 0 || !g.wired[side]) continue;
        const double theta = std::max(best, kMinTheta);
        const double c = g.face_fraction(x + sx * theta / 2, y + sy * theta / 2, px, py);
        if (c > 0) {
          edges.push_back({static_cast<std::size_t>(side / 2), static_cast<std::size_t>(id), c / theta});
        }
      }
    }
  }

  // Keep only vertices reachable from a node.
  const auto total = static_cast<std::size_t>(next_id);
  std::vector<std::vector<std::size_t>> adj(total);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> reached(total, 0);
  std::queue<std::size_t> queue;
  for (int j = 0; j < n; ++j) {
    reached[static_cast<std::size_t>(j)] = 1;
    queue.push(static_cast<std::size_t>(j));
  }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    for (std::size_t w : adj[v]) {
      if (!reached[w]) {
        reached[w] = 1;
        queue.push(w);
      }
    }
  }
  std::vector<std::size_t> relabel(total, 0);
  std::vector<std::array<int, 2>> kept_points;
  std::size_t count = static_cast<std::size_t>(n);
  for (std::size_t v = 0; v < total; ++v) {
    if (v < static_cast<std::size_t>(n)) {
      relabel[v] = v;
    } else if (reached[v]) {
      relabel[v] = count++;
      kept_points.push_back(points[v - static_cast<std::size_t>(n)]);
    }
  }
  if (kept_points.empty()) throw InvalidInput("lattice has no interior vertices at eps=" + std::to_string(epsilon));

  std::vector<std::size_t> couplings(static_cast<std::size_t>(n), 0);
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (const Edge& e : edges) {
    if (!reached[e.u] || !reached[e.v]) continue;
    if (e.u < static_cast<std::size_t>(n)) ++couplings[e.u];
    if (e.v < static_cast<std::size_t>(n)) ++couplings[e.v];
    kept.push_back({relabel[e.u], relabel[e.v], e.conductance});
  }
  for (int j = 0; j < n; ++j) {
    if (couplings[static_cast<std::size_t>(j)] < 2) {
      throw InvalidInput("grid spacing eps=" + std::to_string(epsilon) + " too coarse: node " + std::to_string(j + 1) +
                         " has " + std::to_string(couplings[static_cast<std::size_t>(j)]) + " grid couplings");
    }
  }

  std::vector<std::size_t> boundary(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) boundary[static_cast<std::size_t>(j)] = static_cast<std::size_t>(j);
  std::string name = "lattice n=" + std::to_string(n) + " eps=" + std::to_string(epsilon);
  try {
    ResistorNetwork network(count, std::move(kept), std::move(boundary), std::move(name));
    network.declare_circular_planar();
    return LatticeDiscretization{polygon, epsilon, std::move(network), std::move(kept_points), std::move(couplings)};
  } catch (const InvalidInput& e) {
    throw InvalidInput("grid spacing eps=" + std::to_string(epsilon) + " too coarse: " + e.what());
  }
}

StudyLevel compare_with_exact(const Eigen::MatrixXd& lambda, double epsilon) {
  const auto n = static_cast<int>(lambda.rows());
  if (n < 2 || lambda.cols() != lambda.rows()) throw InvalidInput("response matrix must be square with n >= 2");
  const ResponseMatrix exact(n);
  StudyLevel level;
  level.epsilon = epsilon;
  level.generator.assign(static_cast<std::size_t>(n), 0.0);
  level.worst_error.assign(static_cast<std::size_t>(n), 0.0);
  for (int d = 0; d < n; ++d) {
    const double target = exact.generator()[static_cast<std::size_t>(d)];
    double lo = INFINITY, hi = -INFINITY, sum = 0.0, worst = 0.0;
    for (int j = 0; j < n; ++j) {
      const double v = lambda(j, ((j - d) % n + n) % n);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
      worst = std::max(worst, std::abs(v - target));
    }
    level.generator[static_cast<std::size_t>(d)] = sum / n;
    level.worst_error[static_cast<std::size_t>(d)] = worst;
    level.max_abs_error = std::max(level.max_abs_error, worst);
    level.max_rel_error = std::max(level.max_rel_error, worst / std::abs(target));
    level.circulant_spread = std::max(level.circulant_spread, hi - lo);
  }
  return level;
}

bool ConvergenceStudy::weakly_decreasing() const {
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i].max_abs_error > levels[i - 1].max_abs_error) return false;
  }
  return true;
}

bool ConvergenceStudy::strictly_decreasing() const {
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i].max_abs_error < levels[i - 1].max_abs_error)) return false;
  }
  return true;
}

std::vector<double> ConvergenceStudy::observed_rates() const {
  std::vector<double> rates;
  for (std::size_t i = 1; i < levels.size(); ++i) {
    rates.push_back(std::log(levels[i - 1].max_abs_error / levels[i].max_abs_error) /
                    std::log(levels[i - 1].epsilon / levels[i].epsilon));
  }
  return rates;
}

ConvergenceStudy convergence_study(int n, const std::vector<double>& eps_list, double rotation, std::size_t threads,
                                   const SolveOptions& options) {
  if (eps_list.empty()) throw InvalidInput("convergence study needs at least one grid spacing");
  for (std::size_t i = 1; i < eps_list.size(); ++i) {
    if (!(eps_list[i] < eps_list[i - 1])) throw InvalidInput("grid spacings must be strictly decreasing");
  }
  ConvergenceStudy study;
  study.n = n;
  study.rotation = rotation;
  study.exact = ResponseMatrix(n).generator();
  study.levels.resize(eps_list.size());
  parallel_for(eps_list.size(), threads ? threads : default_thread_count(), [&](std::size_t i) {
    const LatticeDiscretization lattice = build_lattice(n, eps_list[i], rotation);
    const DtnMatrix dtn = dirichlet_to_neumann(lattice.network, options);
    StudyLevel level = compare_with_exact(dtn.matrix, eps_list[i]);
    level.vertices = lattice.network.vertex_count();
    study.levels[i] = std::move(level);
  });
  return study;
}

}  // namespace polydtn
