#pragma once

// Groves: spanning forests in which every tree holds at least one boundary
// node. Exact enumeration, partition formulas in terms of the response
// matrix, tree-count polynomials, and an exact sampler.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polydtn/exact.hpp"
#include "polydtn/network.hpp"

namespace polydtn {

/// Blocks of 0-based node indices, sorted by minimum, elements ascending.
using Partition = std::vector<std::vector<int>>;

/// Block label of each node (restricted growth string) -> canonical partition.
Partition partition_from_labels(const std::vector<int>& labels);
/// 1-based text form, e.g. "1|23"; labels inside a block are comma-separated
/// when node_count > 9 ("1,10|2").
std::string encode_partition(const Partition& partition, std::size_t node_count);
Partition decode_partition(const std::string& text, std::size_t node_count);
/// Noncrossing with respect to the cyclic order 1..n.
bool is_noncrossing(const Partition& partition);

struct GroveEnumeration {
  std::size_t node_count = 0;
  std::size_t grove_subsets = 0;                      // unweighted number of groves
  std::map<std::string, exact::Rational> partitions;  // weighted counts by encoded partition
  std::vector<exact::Rational> tree_counts;           // index t - 1
  exact::Rational total;                              // weighted number of groves
  exact::Rational size_weighted_total;                // sum_F prod_i k_i(F) w(F), k_i = nodes in tree i

  exact::Rational count(const std::string& key) const;
};

/// Brute force over all 2^|E| edge subsets. Throws InvalidInput above 24 edges.
GroveEnumeration enumerate_groves(const ResistorNetwork& network);

/// Two exact counting identities tying groves to spanning trees:
///  - groves whose partition is all singletons <-> spanning trees of the
///    graph with the nodes merged into one vertex;
///  - sum_F prod_i k_i(F) w(F) <-> spanning trees of the graph plus one extra
///    vertex joined to every node by a unit edge.
struct GroveCountIdentities {
  exact::Rational singleton_groves;
  exact::Rational contracted_trees;
  exact::Rational size_weighted_groves;
  exact::Rational rooted_trees;
  bool holds() const { return singleton_groves == contracted_trees && size_weighted_groves == rooted_trees; }
};

GroveCountIdentities grove_count_identities(const ResistorNetwork& network, const GroveEnumeration& groves);

struct TwoNodeReport {
  exact::Rational connected;     // partition 12
  exact::Rational separated;     // partition 1|2
  exact::Rational ratio;
  exact::Rational neg_lambda12;  // exact Schur complement
  double neg_lambda12_float = 0.0;
  bool exact_match() const { return ratio == neg_lambda12; }
  double abs_error() const;
};

/// Requires two nodes and at most 24 edges.
TwoNodeReport verify_two_node_formula(const ResistorNetwork& network);

struct PartitionRatio {
  std::string partition;
  exact::Rational enumerated;  // count(sigma) / count(1|2|3)
  exact::Rational formula;     // polynomial in exact response entries
  double formula_float = 0.0;  // same polynomial in floating-point response entries
};

struct ThreeNodeReport {
  std::vector<PartitionRatio> ratios;  // 123, 1|23, 2|13, 3|12, 1|2|3
  bool exact_match() const;
  double max_abs_error() const;
};

/// pu{123} = L12 L13 + L12 L23 + L13 L23, pu{1|23} = -L23 (and rotations),
/// pu{1|2|3} = 1. Requires three nodes and at most 24 edges.
ThreeNodeReport verify_three_node_formulas(const ResistorNetwork& network);

/// Coefficients c_k = Pr[n-k trees] / Pr[n trees], k = 0..n-1.
struct TreeCountPolynomial {
  int n = 0;
  std::vector<double> coefficients;

  bool palindromic(double tol = 1e-12) const;
  double operator()(double q) const;
};

TreeCountPolynomial p3_polynomial(double lambda1);
TreeCountPolynomial p4_polynomial(double lambda1, double lambda2);
/// Printed limit polynomials for the regular 2n-gon, n = 2..6.
TreeCountPolynomial reference_polynomial(int n);
std::map<int, TreeCountPolynomial> reference_polynomials();

struct Grove {
  std::vector<std::size_t> edges;  // indices into network.edges()
  Partition partition;
  std::size_t tree_count = 0;
};

/// Checks acyclicity, full coverage and that every component holds a node.
bool is_grove(const ResistorNetwork& network, const std::vector<std::size_t>& edge_indices);

/// Exact sampler for groves with probability proportional to the product of
/// conductances. Draws a weighted spanning tree of the network plus a root
/// vertex tied to every node (Wilson's algorithm), drops the root edges, and
/// accepts with probability 1 / prod_i k_i. Keeps scratch buffers: use one
/// instance per thread.
class GroveSampler {
 public:
  explicit GroveSampler(const ResistorNetwork& network);

  Grove sample(std::mt19937_64& rng) const;
  /// Block label per node (restricted growth string); returns the tree count.
  std::size_t sample_labels(std::mt19937_64& rng, std::vector<int>& labels) const;
  std::uint64_t proposals() const { return proposals_; }

 private:
  struct Step {
    double cumulative;
    std::uint32_t target;
    std::uint32_t edge;
  };
  std::size_t draw_tree(std::mt19937_64& rng, std::vector<std::uint32_t>& next_edge) const;
  std::size_t labels_from_tree(const std::vector<std::uint32_t>& next_edge, std::vector<int>& labels) const;

  const ResistorNetwork* network_;
  std::size_t vertices_;
  // Bits per step when all steps out of a vertex have equal weight, else -1.
  std::vector<std::int8_t> equal_bits_;
  std::size_t root_;
  std::vector<std::size_t> offsets_;
  std::vector<Step> steps_;
  mutable std::uint64_t proposals_ = 0;
  mutable std::vector<std::uint32_t> scratch_next_;
  mutable std::vector<std::uint32_t> scratch_walk_;
  mutable std::vector<char> scratch_in_tree_;
};

/// Uniform in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng);
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream);

Grove sample_grove(const ResistorNetwork& network, std::uint64_t seed);

struct SampleTally {
  std::size_t node_count = 0;
  std::map<std::string, std::uint64_t> partitions;
  std::vector<std::uint64_t> tree_counts;  // index t - 1
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t proposals = 0;

  void merge(const SampleTally& other);
};

inline constexpr std::size_t kMonteCarloStreams = 16;

/// Splits `samples` over kMonteCarloStreams seeded streams, so the result
/// does not depend on `threads` (0 = default_thread_count()). When the
/// network is declared circular planar, a crossing partition throws
/// NumericalFailure.
SampleTally sample_groves(const ResistorNetwork& network, std::uint64_t samples, std::uint64_t seed,
                          std::size_t threads = 0);

struct TreeCountEstimate {
  int n = 0;
  double epsilon = 0.0;
  std::size_t lattice_vertices = 0;
  SampleTally tally;
  std::vector<double> ratios;       // Pr[t] / Pr[n], t = 1..n
  std::vector<double> ratio_sigma;
  std::vector<double> limit;        // printed limit ratios for t = 1..n (when n <= 6)
  std::vector<double> duality_gap;  // Pr[t] - Pr[n+1-t], t = 1..n
  std::vector<double> duality_sigma;
  /// Exact finite-eps ratios Pr[t]/Pr[n] from the lattice's own response
  /// matrix, when a formula is available (n <= 3). Otherwise only the
  /// (n-1)-tree ratio -sum_{j<k} Lambda_jk is filled and the rest are NaN.
  std::vector<double> discrete_prediction;
};

TreeCountEstimate tree_count_monte_carlo(int n, double epsilon, std::uint64_t samples, std::uint64_t seed,
                                         std::size_t threads = 0, double rotation = 0.0);

}  // namespace polydtn
