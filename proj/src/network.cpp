#include "polydtn/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "polydtn/error.hpp"

namespace polydtn {

ResistorNetwork::ResistorNetwork(std::size_t vertex_count, std::vector<Edge> edges,
                                 std::vector<std::size_t> boundary, std::string name)
    : vertex_count_(vertex_count), edges_(std::move(edges)), boundary_(std::move(boundary)), name_(std::move(name)) {
  if (vertex_count_ == 0) throw InvalidInput("network needs at least one vertex");
  if (boundary_.empty()) throw InvalidInput("network needs at least one boundary node");
  for (const Edge& e : edges_) {
    if (e.u >= vertex_count_ || e.v >= vertex_count_) {
      throw InvalidInput("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") references a missing vertex");
    }
    if (e.u == e.v) throw InvalidInput("self-loop at vertex " + std::to_string(e.u));
    if (!(e.conductance > 0.0) || !std::isfinite(e.conductance)) {
      throw InvalidInput("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                         ") has a non-positive conductance");
    }
  }
  node_index_.assign(vertex_count_, -1);
  for (std::size_t i = 0; i < boundary_.size(); ++i) {
    const std::size_t v = boundary_[i];
    if (v >= vertex_count_) throw InvalidInput("boundary node " + std::to_string(v) + " is not a vertex");
    if (node_index_[v] >= 0) throw InvalidInput("boundary node " + std::to_string(v) + " listed twice");
    node_index_[v] = static_cast<std::ptrdiff_t>(i);
  }
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    if (node_index_[v] < 0) interior_.push_back(v);
  }

  // Connectivity.
  std::vector<std::vector<std::size_t>> adj(vertex_count_);
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(vertex_count_, 0);
  std::queue<std::size_t> queue;
  queue.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        queue.push(w);
      }
    }
  }
  if (reached != vertex_count_) {
    throw InvalidInput("network is disconnected (" + std::to_string(vertex_count_ - reached) +
                       " vertices unreachable from vertex 0)");
  }
}

std::optional<std::size_t> ResistorNetwork::node_index(std::size_t v) const {
  if (v >= vertex_count_ || node_index_[v] < 0) return std::nullopt;
  return static_cast<std::size_t>(node_index_[v]);
}

bool ResistorNetwork::unit_conductances() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.conductance == 1.0; });
}

Eigen::SparseMatrix<double> laplacian(const ResistorNetwork& network) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(network.edges().size() * 4);
  for (const Edge& e : network.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    triplets.emplace_back(u, u, e.conductance);
    triplets.emplace_back(v, v, e.conductance);
    triplets.emplace_back(u, v, -e.conductance);
    triplets.emplace_back(v, u, -e.conductance);
  }
  const auto n = static_cast<Eigen::Index>(network.vertex_count());
  Eigen::SparseMatrix<double> l(n, n);
  l.setFromTriplets(triplets.begin(), triplets.end());
  return l;
}

namespace {

// Splits the Laplacian into boundary/interior blocks.
struct Blocks {
  Eigen::MatrixXd bb;
  Eigen::SparseMatrix<double> bi;
  Eigen::SparseMatrix<double> ii;
};

Blocks split_blocks(const ResistorNetwork& network) {
  const std::size_t nb = network.node_count();
  const std::size_t ni = network.interior().size();
  std::vector<std::ptrdiff_t> interior_index(network.vertex_count(), -1);
  for (std::size_t i = 0; i < ni; ++i) interior_index[network.interior()[i]] = static_cast<std::ptrdiff_t>(i);

  Blocks blocks;
  blocks.bb = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nb));
  std::vector<Eigen::Triplet<double>> bi, ii;
  auto add = [&](std::size_t a, std::size_t b, double value) {
    const auto na = network.node_index(a);
    const auto nbi = network.node_index(b);
    if (na && nbi) {
      blocks.bb(static_cast<Eigen::Index>(*na), static_cast<Eigen::Index>(*nbi)) += value;
    } else if (na) {
      bi.emplace_back(static_cast<Eigen::Index>(*na), interior_index[b], value);
    } else if (!nbi) {
      ii.emplace_back(interior_index[a], interior_index[b], value);
    }
  };
  for (const Edge& e : network.edges()) {
    add(e.u, e.u, e.conductance);
    add(e.v, e.v, e.conductance);
    add(e.u, e.v, -e.conductance);
    add(e.v, e.u, -e.conductance);
  }
  blocks.bi.resize(static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(ni));
  blocks.bi.setFromTriplets(bi.begin(), bi.end());
  blocks.ii.resize(static_cast<Eigen::Index>(ni), static_cast<Eigen::Index>(ni));
  blocks.ii.setFromTriplets(ii.begin(), ii.end());
  return blocks;
}

}  // namespace

std::vector<double> harmonic_extension(const ResistorNetwork& network, std::span<const double> boundary_voltages,
                                       const SolveOptions& options) {
  if (boundary_voltages.size() != network.node_count()) {
    throw InvalidInput("expected " + std::to_string(network.node_count()) + " boundary voltages, got " +
                       std::to_string(boundary_voltages.size()));
  }
  std::vector<double> potential(network.vertex_count(), 0.0);
  for (std::size_t i = 0; i < network.node_count(); ++i) potential[network.boundary()[i]] = boundary_voltages[i];
  if (network.interior().empty()) return potential;

  Blocks blocks = split_blocks(network);
  Eigen::VectorXd vb(static_cast<Eigen::Index>(network.node_count()));
  for (std::size_t i = 0; i < network.node_count(); ++i) vb(static_cast<Eigen::Index>(i)) = boundary_voltages[i];
  // L_II x = -L_IB v_B
  Eigen::MatrixXd rhs = -(blocks.bi.transpose() * vb);
  LaplacianSolver solver(std::move(blocks.ii), options);
  const Eigen::MatrixXd x = solver.solve(rhs);
  for (std::size_t i = 0; i < network.interior().size(); ++i) {
    potential[network.interior()[i]] = x(static_cast<Eigen::Index>(i), 0);
  }
  return potential;
}

DtnMatrix dirichlet_to_neumann(const ResistorNetwork& network, const SolveOptions& options) {
  Blocks blocks = split_blocks(network);
  DtnMatrix out{blocks.bb, network.name()};
  if (network.interior().empty()) return out;
  const Eigen::MatrixXd ib = Eigen::MatrixXd(blocks.bi.transpose());
  LaplacianSolver solver(std::move(blocks.ii), options);
  const Eigen::MatrixXd x = solver.solve(ib);
  out.matrix -= blocks.bi * x;
  // Symmetrize away rounding so downstream invariants hold exactly.
  out.matrix = 0.5 * (out.matrix + out.matrix.transpose()).eval();
  return out;
}

exact::RationalMatrix dirichlet_to_neumann_exact(const ResistorNetwork& network) {
  using exact::Rational;
  const std::size_t nb = network.node_count();
  const std::size_t ni = network.interior().size();
  std::vector<std::ptrdiff_t> interior_index(network.vertex_count(), -1);
  for (std::size_t i = 0; i < ni; ++i) interior_index[network.interior()[i]] = static_cast<std::ptrdiff_t>(i);

  exact::RationalMatrix bb(nb, nb), bi(nb, ni), ii(ni, ni);
  auto add = [&](std::size_t a, std::size_t b, const Rational& value) {
    const auto na = network.node_index(a);
    const auto nbi = network.node_index(b);
    if (na && nbi) {
      bb(*na, *nbi) += value;
    } else if (na) {
      bi(*na, static_cast<std::size_t>(interior_index[b])) += value;
    } else if (!nbi) {
      ii(static_cast<std::size_t>(interior_index[a]), static_cast<std::size_t>(interior_index[b])) += value;
    }
  };
  for (const Edge& e : network.edges()) {
    const Rational c = exact::from_double(e.conductance);
    add(e.u, e.u, c);
    add(e.v, e.v, c);
    add(e.u, e.v, -c);
    add(e.v, e.u, -c);
  }
  if (ni == 0) return bb;
  exact::RationalMatrix ib(ni, nb);
  for (std::size_t r = 0; r < ni; ++r)
    for (std::size_t c = 0; c < nb; ++c) ib(r, c) = bi(c, r);
  const exact::RationalMatrix x = exact::solve(ii, ib);
  for (std::size_t r = 0; r < nb; ++r) {
    for (std::size_t c = 0; c < nb; ++c) {
      Rational s(0);
      for (std::size_t k = 0; k < ni; ++k) s += bi(r, k) * x(k, c);
      bb(r, c) -= s;
    }
  }
  return bb;
}

double effective_resistance(const ResistorNetwork& network, std::size_t a, std::size_t b) {
  const std::size_t n = network.vertex_count();
  if (a >= n || b >= n) throw InvalidInput("effective_resistance: vertex out of range");
  if (a == b) throw InvalidInput("effective_resistance needs two distinct vertices");
  // Ground b and inject a unit current at a; R is the potential at a.
  const Eigen::SparseMatrix<double> l = laplacian(network);
  std::vector<Eigen::Index> index(n, -1);
  Eigen::Index next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (v != b) index[v] = next++;
  }
  std::vector<Eigen::Triplet<double>> trips;
  for (int k = 0; k < l.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(l, k); it; ++it) {
      const auto r = index[static_cast<std::size_t>(it.row())];
      const auto c = index[static_cast<std::size_t>(it.col())];
      if (r >= 0 && c >= 0) trips.emplace_back(r, c, it.value());
    }
  }
  Eigen::SparseMatrix<double> reduced(next, next);
  reduced.setFromTriplets(trips.begin(), trips.end());
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(next, 1);
  rhs(index[a], 0) = 1.0;
  LaplacianSolver solver(std::move(reduced));
  return solver.solve(rhs)(index[a], 0);
}

exact::Rational weighted_tree_count(std::size_t vertex_count, std::span<const Edge> edges) {
  using exact::Rational;
  if (vertex_count <= 1) return Rational(1);
  // Reduced Laplacian: drop vertex 0.
  exact::RationalMatrix l(vertex_count - 1, vertex_count - 1);
  for (const Edge& e : edges) {
    if (e.u == e.v) continue;
    const Rational c = exact::from_double(e.conductance);
    if (e.u > 0) l(e.u - 1, e.u - 1) += c;
    if (e.v > 0) l(e.v - 1, e.v - 1) += c;
    if (e.u > 0 && e.v > 0) {
      l(e.u - 1, e.v - 1) -= c;
      l(e.v - 1, e.u - 1) -= c;
    }
  }
  return exact::determinant(l);
}

exact::Rational spanning_tree_count(const ResistorNetwork& network) {
  return weighted_tree_count(network.vertex_count(), network.edges());
}

std::size_t merge_vertices(const ResistorNetwork& network, std::span<const std::size_t> merged,
                           std::vector<Edge>& edges_out) {
  const std::size_t n = network.vertex_count();
  std::vector<std::size_t> relabel(n, 0);
  std::vector<char> is_merged(n, 0);
  for (std::size_t v : merged) is_merged.at(v) = 1;
  std::size_t next = 1;
  for (std::size_t v = 0; v < n; ++v) relabel[v] = is_merged[v] ? 0 : next++;
  edges_out.clear();
  for (const Edge& e : network.edges()) {
    const std::size_t u = relabel[e.u];
    const std::size_t v = relabel[e.v];
    if (u != v) edges_out.push_back({u, v, e.conductance});
  }
  return next;
}

KirchhoffCheck kirchhoff_ratio_check(const ResistorNetwork& network) {
  if (network.node_count() != 2) {
    throw InvalidInput("Kirchhoff check needs exactly two boundary nodes, got " +
                       std::to_string(network.node_count()));
  }
  KirchhoffCheck out;
  out.trees = spanning_tree_count(network);
  std::vector<Edge> merged_edges;
  const std::size_t merged_n = merge_vertices(network, network.boundary(), merged_edges);
  out.two_tree_forests = weighted_tree_count(merged_n, merged_edges);
  out.ratio = out.trees / out.two_tree_forests;
  out.neg_lambda12 = -dirichlet_to_neumann_exact(network)(0, 1);
  out.neg_lambda12_float = -dirichlet_to_neumann(network).matrix(0, 1);
  return out;
}

}  // namespace polydtn
