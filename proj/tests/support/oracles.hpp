#pragma once

// Brute-force reference computations for small networks, written without
// the library's enumeration code: every edge subset is checked directly.

#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polydtn/exact.hpp"
#include "polydtn/network.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

struct SubsetCounts {
  Rational spanning_trees;
  Rational two_tree_forests;                 // nodes 1 and 2 in different trees (two-node networks)
  std::map<std::string, Rational> groves;    // partition text -> weight
  Rational grove_total;
};

inline std::size_t find(std::vector<std::size_t>& p, std::size_t v) {
  while (p[v] != v) v = p[v] = p[p[v]];
  return v;
}

// "1|23" style text: blocks ordered by smallest node, members ascending.
inline std::string partition_text(const std::vector<std::size_t>& block_of_node) {
  const std::size_t n = block_of_node.size();
  std::vector<int> seen(n, 0);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    if (!out.empty()) out += '|';
    for (std::size_t j = i; j < n; ++j) {
      if (block_of_node[j] == block_of_node[i]) {
        seen[j] = 1;
        if (n > 9 && out.back() != '|' && j != i) out += ',';
        out += std::to_string(j + 1);
      }
    }
  }
  return out;
}

inline SubsetCounts enumerate_subsets(const polydtn::ResistorNetwork& net) {
  const std::size_t m = net.edges().size();
  const std::size_t v = net.vertex_count();
  SubsetCounts out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::size_t> parent(v);
    std::iota(parent.begin(), parent.end(), 0);
    bool cycle = false;
    std::size_t used = 0;
    Rational weight = 1;
    for (std::size_t e = 0; e < m && !cycle; ++e) {
      if (!(mask >> e & 1)) continue;
      const auto& edge = net.edges()[e];
      const std::size_t a = find(parent, edge.u), b = find(parent, edge.v);
      if (a == b) {
        cycle = true;
      } else {
        parent[a] = b;
        ++used;
        weight *= polydtn::exact::from_double(edge.conductance);
      }
    }
    if (cycle) continue;
    const std::size_t components = v - used;
    if (components == 1) out.spanning_trees += weight;
    // Every component must hold a node.
    std::vector<char> has_node(v, 0);
    for (std::size_t b : net.boundary()) has_node[find(parent, b)] = 1;
    bool grove = true;
    for (std::size_t x = 0; x < v; ++x) grove = grove && has_node[find(parent, x)];
    if (!grove) continue;
    std::vector<std::size_t> block;
    for (std::size_t b : net.boundary()) block.push_back(find(parent, b));
    out.groves[partition_text(block)] += weight;
    out.grove_total += weight;
    if (net.node_count() == 2 && components == 2 && block[0] != block[1]) out.two_tree_forests += weight;
  }
  return out;
}

// Spanning trees of the graph with every node merged into one vertex,
// again by checking each edge subset.
inline Rational contracted_tree_count(const polydtn::ResistorNetwork& net) {
  const std::size_t v = net.vertex_count();
  std::vector<std::size_t> id(v);
  std::iota(id.begin(), id.end(), 0);
  for (std::size_t b : net.boundary()) id[b] = net.boundary()[0];
  const std::size_t merged = v - net.node_count() + 1;
  const std::size_t m = net.edges().size();
  Rational total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != merged - 1) continue;
    std::vector<std::size_t> parent(v);
    std::iota(parent.begin(), parent.end(), 0);
    bool ok = true;
    Rational weight = 1;
    for (std::size_t e = 0; e < m && ok; ++e) {
      if (!(mask >> e & 1)) continue;
      const auto& edge = net.edges()[e];
      const std::size_t a = find(parent, id[edge.u]), b = find(parent, id[edge.v]);
      if (a == b) ok = false;
      parent[a] = b;
      weight *= polydtn::exact::from_double(edge.conductance);
    }
    if (ok) total += weight;
  }
  return total;
}

// Schur complement onto the nodes by plain Gauss-Jordan over the rationals.
inline std::vector<std::vector<Rational>> schur_complement(const polydtn::ResistorNetwork& net) {
  const std::size_t v = net.vertex_count();
  std::vector<std::vector<Rational>> l(v, std::vector<Rational>(v, Rational(0)));
  for (const auto& e : net.edges()) {
    const Rational c = polydtn::exact::from_double(e.conductance);
    l[e.u][e.u] += c;
    l[e.v][e.v] += c;
    l[e.u][e.v] -= c;
    l[e.v][e.u] -= c;
  }
  std::vector<char> is_node(v, 0);
  for (std::size_t b : net.boundary()) is_node[b] = 1;
  // eliminate interior vertices one at a time
  for (std::size_t p = 0; p < v; ++p) {
    if (is_node[p]) continue;
    const Rational piv = l[p][p];
    for (std::size_t i = 0; i < v; ++i) {
      if (i == p || l[i][p] == 0) continue;
      const Rational f = l[i][p] / piv;
      for (std::size_t j = 0; j < v; ++j) l[i][j] -= f * l[p][j];
    }
  }
  const auto& bd = net.boundary();
  std::vector<std::vector<Rational>> out(bd.size(), std::vector<Rational>(bd.size()));
  for (std::size_t i = 0; i < bd.size(); ++i)
    for (std::size_t j = 0; j < bd.size(); ++j) out[i][j] = l[bd[i]][bd[j]];
  return out;
}

}  // namespace oracle
