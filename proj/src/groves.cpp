#include "polydtn/groves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "polydtn/error.hpp"
#include "polydtn/exact_response.hpp"
#include "polydtn/parallel.hpp"
#include "polydtn/polygon_lattice.hpp"

namespace polydtn {

using exact::Rational;

Partition partition_from_labels(const std::vector<int>& labels) {
  Partition blocks;
  std::vector<int> remap;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int label = labels[i];
    if (label < 0) throw InvalidInput("negative block label");
    if (static_cast<std::size_t>(label) >= remap.size()) remap.resize(static_cast<std::size_t>(label) + 1, -1);
    int& block = remap[static_cast<std::size_t>(label)];
    if (block < 0) {
      block = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(block)].push_back(static_cast<int>(i));
  }
  return blocks;
}

std::string encode_partition(const Partition& partition, std::size_t node_count) {
  const bool separate = node_count > 9;
  std::string out;
  for (std::size_t b = 0; b < partition.size(); ++b) {
    if (b) out += '|';
    for (std::size_t i = 0; i < partition[b].size(); ++i) {
      if (separate && i) out += ',';
      out += std::to_string(partition[b][i] + 1);
    }
  }
  return out;
}

Partition decode_partition(const std::string& text, std::size_t node_count) {
  std::vector<int> labels(node_count, -1);
  std::stringstream blocks(text);
  std::string block;
  int index = 0;
  while (std::getline(blocks, block, '|')) {
    std::vector<int> members;
    if (node_count > 9) {
      std::stringstream items(block);
      std::string item;
      while (std::getline(items, item, ',')) members.push_back(std::stoi(item));
    } else {
      for (char c : block) {
        if (c < '1' || c > '9') throw InvalidInput("bad partition text: " + text);
        members.push_back(c - '0');
      }
    }
    if (members.empty()) throw InvalidInput("empty block in partition: " + text);
    for (int m : members) {
      if (m < 1 || static_cast<std::size_t>(m) > node_count || labels[static_cast<std::size_t>(m - 1)] >= 0) {
        throw InvalidInput("bad partition text: " + text);
      }
      labels[static_cast<std::size_t>(m - 1)] = index;
    }
    ++index;
  }
  if (std::find(labels.begin(), labels.end(), -1) != labels.end()) {
    throw InvalidInput("partition does not cover every node: " + text);
  }
  return partition_from_labels(labels);
}

bool is_noncrossing(const Partition& partition) {
  // a < b < c < d with a, c in one block and b, d in another is a crossing.
  std::vector<int> owner;
  for (std::size_t b = 0; b < partition.size(); ++b) {
    for (int v : partition[b]) {
      if (static_cast<std::size_t>(v) >= owner.size()) owner.resize(static_cast<std::size_t>(v) + 1, -1);
      owner[static_cast<std::size_t>(v)] = static_cast<int>(b);
    }
  }
  const auto n = static_cast<int>(owner.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        if (owner[a] != owner[c] || owner[a] == owner[b]) continue;
        for (int d = c + 1; d < n; ++d) {
          if (owner[d] == owner[b]) return false;
        }
      }
  return true;
}

Rational GroveEnumeration::count(const std::string& key) const {
  const auto it = partitions.find(key);
  return it == partitions.end() ? Rational(0) : it->second;
}

namespace {

class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }
  std::size_t find(std::size_t v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }
  // Returns false (and records nothing) when u, v are already joined.
  bool unite(std::size_t u, std::size_t v) {
    u = find(u);
    v = find(v);
    if (u == v) return false;
    if (size_[u] < size_[v]) std::swap(u, v);
    parent_[v] = u;
    size_[u] += size_[v];
    history_.push_back(v);
    return true;
  }
  void undo() {
    const std::size_t v = history_.back();
    history_.pop_back();
    size_[parent_[v]] -= size_[v];
    parent_[v] = v;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> history_;
};

struct Enumerator {
  const ResistorNetwork& net;
  bool unit;
  std::vector<Rational> conductance;
  RollbackUnionFind uf;
  std::size_t chosen = 0;
  std::vector<Rational> weight_stack;
  std::map<std::vector<int>, std::uint64_t> unit_counts;
  std::map<std::vector<int>, Rational> weighted_counts;
  std::size_t subsets = 0;

  explicit Enumerator(const ResistorNetwork& network)
      : net(network), unit(network.unit_conductances()), uf(network.vertex_count()) {
    for (const Edge& e : net.edges()) conductance.push_back(exact::from_double(e.conductance));
    weight_stack.push_back(Rational(1));
  }

  void leaf() {
    const std::size_t n = net.node_count();
    const std::size_t components = net.vertex_count() - chosen;
    std::vector<std::size_t> roots;
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = uf.find(net.boundary()[i]);
      auto it = std::find(roots.begin(), roots.end(), r);
      labels[i] = static_cast<int>(it - roots.begin());
      if (it == roots.end()) roots.push_back(r);
    }
    if (roots.size() != components) return;  // some tree has no node
    ++subsets;
    if (unit) {
      ++unit_counts[labels];
    } else {
      weighted_counts[labels] += weight_stack.back();
    }
  }

  void recurse(std::size_t index) {
    if (index == net.edges().size()) {
      leaf();
      return;
    }
    recurse(index + 1);
    const Edge& e = net.edges()[index];
    if (uf.unite(e.u, e.v)) {
      ++chosen;
      if (!unit) weight_stack.push_back(weight_stack.back() * conductance[index]);
      recurse(index + 1);
      if (!unit) weight_stack.pop_back();
      --chosen;
      uf.undo();
    }
  }
};

}  // namespace

GroveEnumeration enumerate_groves(const ResistorNetwork& network) {
  if (network.edges().size() > 24) {
    throw InvalidInput("grove enumeration limited to 24 edges, network has " + std::to_string(network.edges().size()));
  }
  Enumerator en(network);
  en.recurse(0);

  GroveEnumeration out;
  out.node_count = network.node_count();
  out.grove_subsets = en.subsets;
  out.tree_counts.assign(out.node_count, Rational(0));
  auto record = [&](const std::vector<int>& labels, const Rational& weight) {
    const Partition p = partition_from_labels(labels);
    out.partitions[encode_partition(p, out.node_count)] += weight;
    out.tree_counts[p.size() - 1] += weight;
    out.total += weight;
    Rational sizes(1);
    for (const auto& block : p) sizes *= static_cast<long>(block.size());
    out.size_weighted_total += sizes * weight;
  };
  for (const auto& [labels, count] : en.unit_counts) record(labels, Rational(count));
  for (const auto& [labels, weight] : en.weighted_counts) record(labels, weight);
  return out;
}

GroveCountIdentities grove_count_identities(const ResistorNetwork& network, const GroveEnumeration& groves) {
  GroveCountIdentities out;
  std::vector<int> singletons(network.node_count());
  for (std::size_t i = 0; i < singletons.size(); ++i) singletons[i] = static_cast<int>(i);
  out.singleton_groves = groves.count(encode_partition(partition_from_labels(singletons), network.node_count()));
  std::vector<Edge> merged;
  const std::size_t merged_n = merge_vertices(network, network.boundary(), merged);
  out.contracted_trees = weighted_tree_count(merged_n, merged);
  out.size_weighted_groves = groves.size_weighted_total;
  std::vector<Edge> rooted = network.edges();
  const std::size_t root = network.vertex_count();
  for (std::size_t v : network.boundary()) rooted.push_back({v, root, 1.0});
  out.rooted_trees = weighted_tree_count(root + 1, rooted);
  return out;
}

double TwoNodeReport::abs_error() const { return std::abs(exact::to_double(ratio) - neg_lambda12_float); }

TwoNodeReport verify_two_node_formula(const ResistorNetwork& network) {
  if (network.node_count() != 2) throw InvalidInput("two-node formula needs exactly two nodes");
  const GroveEnumeration groves = enumerate_groves(network);
  TwoNodeReport out;
  out.connected = groves.count("12");
  out.separated = groves.count("1|2");
  out.ratio = out.connected / out.separated;
  out.neg_lambda12 = -dirichlet_to_neumann_exact(network)(0, 1);
  out.neg_lambda12_float = -dirichlet_to_neumann(network).matrix(0, 1);
  return out;
}

bool ThreeNodeReport::exact_match() const {
  return std::all_of(ratios.begin(), ratios.end(), [](const PartitionRatio& r) { return r.enumerated == r.formula; });
}

double ThreeNodeReport::max_abs_error() const {
  double worst = 0.0;
  for (const auto& r : ratios) worst = std::max(worst, std::abs(exact::to_double(r.enumerated) - r.formula_float));
  return worst;
}

ThreeNodeReport verify_three_node_formulas(const ResistorNetwork& network) {
  if (network.node_count() != 3) throw InvalidInput("three-node formulas need exactly three nodes");
  const GroveEnumeration groves = enumerate_groves(network);
  const exact::RationalMatrix q = dirichlet_to_neumann_exact(network);
  const Eigen::MatrixXd f = dirichlet_to_neumann(network).matrix;
  const Rational base = groves.count("1|2|3");
  ThreeNodeReport out;
  auto add = [&](const std::string& key, Rational formula, double formula_float) {
    out.ratios.push_back({key, groves.count(key) / base, std::move(formula), formula_float});
  };
  add("123", q(0, 1) * q(0, 2) + q(0, 1) * q(1, 2) + q(0, 2) * q(1, 2),
      f(0, 1) * f(0, 2) + f(0, 1) * f(1, 2) + f(0, 2) * f(1, 2));
  add("1|23", -q(1, 2), -f(1, 2));
  add("13|2", -q(0, 2), -f(0, 2));
  add("12|3", -q(0, 1), -f(0, 1));
  add("1|2|3", Rational(1), 1.0);
  return out;
}

bool TreeCountPolynomial::palindromic(double tol) const {
  const std::size_t m = coefficients.size();
  for (std::size_t k = 0; k < m; ++k) {
    if (std::abs(coefficients[k] - coefficients[m - 1 - k]) > tol) return false;
  }
  return true;
}

double TreeCountPolynomial::operator()(double q) const {
  double value = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) value = value * q + *it;
  return value;
}

TreeCountPolynomial p3_polynomial(double l1) { return {3, {1.0, -3.0 * l1, 3.0 * l1 * l1}}; }

TreeCountPolynomial p4_polynomial(double l1, double l2) {
  return {4,
          {1.0, -(4 * l1 + 2 * l2), 6 * l1 * l1 + 8 * l1 * l2 + 2 * l2 * l2,
           -(4 * l1 * l1 * l1 + 8 * l1 * l1 * l2 + 4 * l1 * l2 * l2)}};
}

TreeCountPolynomial reference_polynomial(int n) {
  const double r3 = std::numbers::sqrt3;
  const double r2 = std::numbers::sqrt2;
  const double r5 = std::sqrt(5.0);
  switch (n) {
    case 2:
      return {2, {1.0, 1.0}};
    case 3:
      return {3, {1.0, r3, 1.0}};
    case 4:
      return {4, {1.0, 1.0 + r2, 1.0 + r2, 1.0}};
    case 5: {
      const double a = std::sqrt(5.0 + 2.0 * r5);
      return {5, {1.0, a, 2.0 + r5, a, 1.0}};
    }
    case 6:
      return {6, {1.0, 2.0 + r3, 3.0 + 2.0 * r3, 3.0 + 2.0 * r3, 2.0 + r3, 1.0}};
    default:
      throw InvalidInput("reference polynomials exist for n = 2..6 only, got " + std::to_string(n));
  }
}

std::map<int, TreeCountPolynomial> reference_polynomials() {
  std::map<int, TreeCountPolynomial> out;
  for (int n = 2; n <= 6; ++n) out.emplace(n, reference_polynomial(n));
  return out;
}

bool is_grove(const ResistorNetwork& network, const std::vector<std::size_t>& edge_indices) {
  RollbackUnionFind uf(network.vertex_count());
  for (std::size_t i : edge_indices) {
    if (i >= network.edges().size()) return false;
    const Edge& e = network.edges()[i];
    if (!uf.unite(e.u, e.v)) return false;
  }
  std::vector<char> has_node(network.vertex_count(), 0);
  for (std::size_t v : network.boundary()) has_node[uf.find(v)] = 1;
  for (std::size_t v = 0; v < network.vertex_count(); ++v) {
    if (!has_node[uf.find(v)]) return false;
  }
  return true;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

namespace {
constexpr std::uint32_t kRootEdge = 0xffffffffu;
constexpr std::uint32_t kNone = 0xfffffffeu;
}  // namespace

GroveSampler::GroveSampler(const ResistorNetwork& network)
    : network_(&network), vertices_(network.vertex_count()), root_(network.vertex_count()) {
  if (vertices_ >= kNone) throw InvalidInput("network too large for the grove sampler");
  std::vector<std::vector<Step>> adj(vertices_);
  for (std::size_t i = 0; i < network.edges().size(); ++i) {
    const Edge& e = network.edges()[i];
    adj[e.u].push_back({e.conductance, static_cast<std::uint32_t>(e.v), static_cast<std::uint32_t>(i)});
    adj[e.v].push_back({e.conductance, static_cast<std::uint32_t>(e.u), static_cast<std::uint32_t>(i)});
  }
  for (std::size_t v : network.boundary()) adj[v].push_back({1.0, static_cast<std::uint32_t>(root_), kRootEdge});
  offsets_.push_back(0);
  for (auto& list : adj) {
    std::int8_t bits = -1;
    const bool equal = std::all_of(list.begin(), list.end(), [&](const Step& s) { return s.cumulative == list[0].cumulative; });
    if (equal && list.size() <= 64) {
      bits = 0;
      while ((std::size_t{1} << bits) < list.size()) ++bits;
    }
    equal_bits_.push_back(bits);
    double sum = 0.0;
    for (Step s : list) {
      sum += s.cumulative;
      s.cumulative = sum;
      steps_.push_back(s);
    }
    offsets_.push_back(steps_.size());
  }
  scratch_next_.assign(vertices_ + 1, kNone);
  scratch_in_tree_.assign(vertices_ + 1, 0);
}

// Wilson's algorithm rooted at the extra vertex; next_edge[v] is the step
// index taken out of v. Returns the number of nodes attached to the root.
std::size_t GroveSampler::draw_tree(std::mt19937_64& rng, std::vector<std::uint32_t>& next) const {
  // Equal-weight choices consume a few bits of a buffered 64-bit draw.
  std::uint64_t word = 0;
  int left = 0;
  auto bits = [&](int count) {
    if (left < count) {
      word = rng();
      left = 64;
    }
    const std::uint64_t out = word & ((std::uint64_t{1} << count) - 1);
    word >>= count;
    left -= count;
    return static_cast<std::size_t>(out);
  };
  std::fill(scratch_in_tree_.begin(), scratch_in_tree_.end(), 0);
  scratch_in_tree_[root_] = 1;
  next.assign(vertices_ + 1, kNone);
  for (std::size_t start = 0; start < vertices_; ++start) {
    std::size_t v = start;
    while (!scratch_in_tree_[v]) {
      const std::size_t lo = offsets_[v], hi = offsets_[v + 1];
      std::size_t k = lo;
      if (const int b = equal_bits_[v]; b >= 0) {
        std::size_t pick = b ? bits(b) : 0;
        while (pick >= hi - lo) pick = bits(b);
        k += pick;
      } else {
        const double u = uniform01(rng) * steps_[hi - 1].cumulative;
        while (k + 1 < hi && steps_[k].cumulative <= u) ++k;
      }
      next[v] = static_cast<std::uint32_t>(k);
      v = steps_[k].target;
    }
    v = start;
    while (!scratch_in_tree_[v]) {
      scratch_in_tree_[v] = 1;
      v = steps_[next[v]].target;
    }
  }
  std::size_t anchors = 0;
  for (std::size_t b : network_->boundary()) anchors += steps_[next[b]].edge == kRootEdge;
  return anchors;
}

std::size_t GroveSampler::labels_from_tree(const std::vector<std::uint32_t>& next, std::vector<int>& labels) const {
  const auto& boundary = network_->boundary();
  std::vector<std::size_t> anchors;
  labels.assign(boundary.size(), -1);
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    std::size_t v = boundary[i];
    while (steps_[next[v]].edge != kRootEdge) v = steps_[next[v]].target;
    auto it = std::find(anchors.begin(), anchors.end(), v);
    labels[i] = static_cast<int>(it - anchors.begin());
    if (it == anchors.end()) anchors.push_back(v);
  }
  return anchors.size();
}

std::size_t GroveSampler::sample_labels(std::mt19937_64& rng, std::vector<int>& labels) const {
  for (;;) {
    ++proposals_;
    draw_tree(rng, scratch_next_);
    const std::size_t t = labels_from_tree(scratch_next_, labels);
    // Accept with probability 1 / prod(block sizes).
    std::vector<std::size_t> sizes(t, 0);
    for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
    double accept = 1.0;
    for (std::size_t s : sizes) accept /= static_cast<double>(s);
    if (accept >= 1.0 || uniform01(rng) < accept) return t;
  }
}

Grove GroveSampler::sample(std::mt19937_64& rng) const {
  std::vector<int> labels;
  Grove grove;
  grove.tree_count = sample_labels(rng, labels);
  grove.partition = partition_from_labels(labels);
  for (std::size_t v = 0; v < vertices_; ++v) {
    const std::uint32_t e = steps_[scratch_next_[v]].edge;
    if (e != kRootEdge) grove.edges.push_back(e);
  }
  std::sort(grove.edges.begin(), grove.edges.end());
  return grove;
}

Grove sample_grove(const ResistorNetwork& network, std::uint64_t seed) {
  std::mt19937_64 rng = stream_rng(seed, 0);
  return GroveSampler(network).sample(rng);
}

void SampleTally::merge(const SampleTally& other) {
  if (tree_counts.size() < other.tree_counts.size()) tree_counts.resize(other.tree_counts.size(), 0);
  for (std::size_t i = 0; i < other.tree_counts.size(); ++i) tree_counts[i] += other.tree_counts[i];
  for (const auto& [key, count] : other.partitions) partitions[key] += count;
  samples += other.samples;
  proposals += other.proposals;
  node_count = std::max(node_count, other.node_count);
}

SampleTally sample_groves(const ResistorNetwork& network, std::uint64_t samples, std::uint64_t seed,
                          std::size_t threads) {
  const std::size_t n = network.node_count();
  std::vector<SampleTally> parts(kMonteCarloStreams);
  parallel_for(kMonteCarloStreams, threads ? threads : default_thread_count(), [&](std::size_t s) {
    const std::uint64_t quota = samples / kMonteCarloStreams + (s < samples % kMonteCarloStreams ? 1 : 0);
    std::mt19937_64 rng = stream_rng(seed, s);
    GroveSampler sampler(network);
    // Tally by label string first; encode once per distinct partition.
    std::map<std::vector<int>, std::uint64_t> by_labels;
    std::vector<int> labels;
    for (std::uint64_t i = 0; i < quota; ++i) {
      sampler.sample_labels(rng, labels);
      ++by_labels[labels];
    }
    SampleTally& tally = parts[s];
    tally.node_count = n;
    tally.tree_counts.assign(n, 0);
    for (const auto& [key, count] : by_labels) {
      const Partition p = partition_from_labels(key);
      if (network.circular_planar() && !is_noncrossing(p)) {
        throw NumericalFailure("sampled crossing partition " + encode_partition(p, n) + " on circular planar network " +
                               network.name());
      }
      tally.partitions[encode_partition(p, n)] += count;
      tally.tree_counts[p.size() - 1] += count;
    }
    tally.samples = quota;
    tally.proposals = sampler.proposals();
  });
  SampleTally out;
  out.node_count = n;
  out.tree_counts.assign(n, 0);
  out.seed = seed;
  for (const auto& part : parts) out.merge(part);
  return out;
}

TreeCountEstimate tree_count_monte_carlo(int n, double epsilon, std::uint64_t samples, std::uint64_t seed,
                                         std::size_t threads, double rotation) {
  if (samples == 0) throw InvalidInput("sample count must be positive");
  const LatticeDiscretization lattice = build_lattice(n, epsilon, rotation);
  TreeCountEstimate out;
  out.n = n;
  out.epsilon = epsilon;
  out.lattice_vertices = lattice.network.vertex_count();
  out.tally = sample_groves(lattice.network, samples, seed, threads);

  const auto nn = static_cast<std::size_t>(n);
  const double total = static_cast<double>(out.tally.samples);
  const double top = static_cast<double>(out.tally.tree_counts[nn - 1]);
  for (std::size_t t = 1; t <= nn; ++t) {
    const double a = static_cast<double>(out.tally.tree_counts[t - 1]);
    const double r = top > 0 ? a / top : NAN;
    out.ratios.push_back(r);
    // Delta method for a ratio of two multinomial cells.
    out.ratio_sigma.push_back(a > 0 && top > 0 ? r * std::sqrt(1.0 / a + 1.0 / top) : NAN);
    const double pa = a / total;
    const double pb = static_cast<double>(out.tally.tree_counts[nn - t]) / total;
    out.duality_gap.push_back(pa - pb);
    out.duality_sigma.push_back(std::sqrt(std::max(0.0, pa + pb - (pa - pb) * (pa - pb)) / total));
  }
  if (n <= 6) {
    const TreeCountPolynomial ref = reference_polynomial(n);
    for (std::size_t t = 1; t <= nn; ++t) out.limit.push_back(ref.coefficients[nn - t]);
  }

  const Eigen::MatrixXd dtn = dirichlet_to_neumann(lattice.network).matrix;
  out.discrete_prediction.assign(nn, NAN);
  out.discrete_prediction[nn - 1] = 1.0;
  double linear = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) linear -= dtn(j, k);
  out.discrete_prediction[nn - 2] = linear;
  if (n == 3) {
    out.discrete_prediction[0] = dtn(0, 1) * dtn(0, 2) + dtn(0, 1) * dtn(1, 2) + dtn(0, 2) * dtn(1, 2);
  }
  return out;
}

}  // namespace polydtn
