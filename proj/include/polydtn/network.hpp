#pragma once

// Finite resistor networks: Laplacian assembly, harmonic extension, the
// Schur-complement Dirichlet-to-Neumann map, effective resistance and exact
// matrix-tree counts.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "polydtn/exact.hpp"

namespace polydtn {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double conductance = 1.0;
};

/// Connected weighted multigraph with an ordered list of boundary nodes.
/// Vertex ids are dense and 0-based; node i of the response matrix is
/// boundary()[i]. Immutable once constructed.
class ResistorNetwork {
 public:
  /// Throws InvalidInput on self-loops, non-positive conductances, bad ids,
  /// empty or repeated boundary lists, and disconnected graphs.
  ResistorNetwork(std::size_t vertex_count, std::vector<Edge> edges, std::vector<std::size_t> boundary,
                  std::string name = {});

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& boundary() const { return boundary_; }
  const std::vector<std::size_t>& interior() const { return interior_; }
  std::size_t node_count() const { return boundary_.size(); }
  const std::string& name() const { return name_; }

  /// Position of v in boundary(), if v is a node.
  std::optional<std::size_t> node_index(std::size_t v) const;

  /// True when every conductance is exactly 1.
  bool unit_conductances() const;

  /// Planar embedding with the nodes on the outer face in the declared
  /// (counterclockwise) order. Only a declaration; not verified.
  bool circular_planar() const { return circular_planar_; }
  ResistorNetwork& declare_circular_planar(bool value = true) {
    circular_planar_ = value;
    return *this;
  }

 private:
  std::size_t vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> boundary_;
  std::vector<std::size_t> interior_;
  std::vector<std::ptrdiff_t> node_index_;
  std::string name_;
  bool circular_planar_ = false;
};

enum class SolverKind { Direct, ConjugateGradient };

struct SolveOptions {
  SolverKind kind = SolverKind::Direct;
  /// Relative residual target for the iterative path.
  double rel_tol = 1e-10;
  /// 0 picks a size-dependent default.
  std::size_t max_iterations = 0;
};

/// Symmetric Laplacian factor/solve wrapper around either a sparse LDL^T
/// factorization or Jacobi-preconditioned conjugate gradients.
class LaplacianSolver {
 public:
  LaplacianSolver(Eigen::SparseMatrix<double> a, SolveOptions options = {});
  ~LaplacianSolver();
  LaplacianSolver(LaplacianSolver&&) noexcept;
  LaplacianSolver& operator=(LaplacianSolver&&) noexcept;

  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;
  /// Largest relative residual seen by the last solve().
  double last_relative_residual() const { return last_residual_; }
  std::size_t last_iterations() const { return last_iterations_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  mutable double last_residual_ = 0.0;
  mutable std::size_t last_iterations_ = 0;
};

Eigen::SparseMatrix<double> laplacian(const ResistorNetwork& network);

/// Potentials equal to `boundary_voltages` (in boundary() order) on the nodes
/// and discrete-harmonic at every interior vertex.
std::vector<double> harmonic_extension(const ResistorNetwork& network, std::span<const double> boundary_voltages,
                                       const SolveOptions& options = {});

struct DtnMatrix {
  Eigen::MatrixXd matrix;
  std::string source;
  std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// L_BB - L_BI L_II^{-1} L_IB.
DtnMatrix dirichlet_to_neumann(const ResistorNetwork& network, const SolveOptions& options = {});

/// Same Schur complement in exact rational arithmetic (small networks).
exact::RationalMatrix dirichlet_to_neumann_exact(const ResistorNetwork& network);

/// (e_a - e_b)^T L^+ (e_a - e_b), with a and b vertex ids.
double effective_resistance(const ResistorNetwork& network, std::size_t a, std::size_t b);

/// Weighted matrix-tree count sum_T prod_{e in T} c_e of a multigraph, exact.
/// Self-loops are ignored. Zero when the graph is disconnected.
exact::Rational weighted_tree_count(std::size_t vertex_count, std::span<const Edge> edges);

/// Spanning-tree count of the network (integer when conductances are 1).
exact::Rational spanning_tree_count(const ResistorNetwork& network);

/// Edges of `network` with the listed vertices identified into one vertex.
/// Returns the new vertex count; the merged vertex gets id 0.
std::size_t merge_vertices(const ResistorNetwork& network, std::span<const std::size_t> merged,
                           std::vector<Edge>& edges_out);

struct KirchhoffCheck {
  exact::Rational trees;
  exact::Rational two_tree_forests;  // forests of two trees separating the nodes
  exact::Rational ratio;
  exact::Rational neg_lambda12;      // -Lambda_{1,2}, exact
  double neg_lambda12_float = 0.0;   // -Lambda_{1,2}, floating-point solver
  bool exact_match() const { return ratio == neg_lambda12; }
};

/// Requires exactly two boundary nodes.
KirchhoffCheck kirchhoff_ratio_check(const ResistorNetwork& network);

}  // namespace polydtn
