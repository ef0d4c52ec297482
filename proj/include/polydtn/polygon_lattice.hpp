#pragma once

// Square-grid discretization of the regular 2n-gon with wired even sides and
// insulated odd sides, and convergence studies of its response matrix.

#include <array>
#include <cstddef>
#include <vector>

#include "polydtn/network.hpp"

namespace polydtn {

/// Regular 2n-gon with side midpoints at exp(i pi s / n), s = 1..2n. Side 2j
/// is wired to node j; odd sides are free.
struct PolygonSpec {
  int n = 2;
  double rotation = 0.0;  // polygon angle relative to the grid axes

  std::size_t side_count() const { return 2 * static_cast<std::size_t>(n); }
  static bool wired(int side) { return side % 2 == 0; }
  /// Outward unit normal of side s (1-based), in grid coordinates.
  std::array<double, 2> normal(int side) const;
  /// 1 / cos(pi / 2n).
  double vertex_radius() const;
};

struct LatticeDiscretization {
  PolygonSpec polygon;
  double epsilon = 0.0;
  /// Nodes are vertices 0..n-1 (node j+1 of the polygon is vertex j); the
  /// rest are interior grid points.
  ResistorNetwork network;
  /// Grid coordinates (multiples of epsilon) of each interior vertex, in
  /// network vertex order starting at n.
  std::vector<std::array<int, 2>> grid_points;
  /// Number of edges attached to each node.
  std::vector<std::size_t> node_couplings;
};

/// Grid points k*eps inside the polygon (with a half-cell margin past the
/// free sides). Points exactly on a wired side are merged into its node, and
/// grid edges cut by a wired side attach to the node with conductance scaled
/// by 1/theta, theta being the fraction of the edge inside. Every edge
/// carries the fraction of its dual face that lies inside the polygon.
///
/// Throws InvalidInput when eps is too coarse (some node gets fewer than two
/// couplings) or nothing is left inside.
LatticeDiscretization build_lattice(int n, double epsilon, double rotation = 0.0);

struct StudyLevel {
  double epsilon = 0.0;
  std::size_t vertices = 0;
  std::vector<double> generator;      // discrete Lambda_d, averaged over the diagonal d
  std::vector<double> worst_error;    // max_j |Lambda_{j,j-d} - exact Lambda_d|
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;         // relative to |exact Lambda_d|
  double circulant_spread = 0.0;      // max_d (max_j - min_j) of Lambda_{j,j-d}
};

struct ConvergenceStudy {
  int n = 0;
  double rotation = 0.0;
  std::vector<double> exact;          // closed-form generator row
  std::vector<StudyLevel> levels;

  bool weakly_decreasing() const;
  bool strictly_decreasing() const;
  /// log(e_i / e_{i+1}) / log(eps_i / eps_{i+1}) for consecutive levels.
  std::vector<double> observed_rates() const;
};

/// Levels run as independent tasks; `threads` == 0 uses default_thread_count().
/// eps_list must be strictly decreasing.
ConvergenceStudy convergence_study(int n, const std::vector<double>& eps_list, double rotation = 0.0,
                                   std::size_t threads = 0, const SolveOptions& options = {});

/// Generator statistics of any n-node response matrix against the exact one.
StudyLevel compare_with_exact(const Eigen::MatrixXd& lambda, double epsilon = 0.0);

}  // namespace polydtn
