#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "../support/oracles.hpp"
#include "polydtn/error.hpp"
#include "polydtn/exact_response.hpp"
#include "polydtn/groves.hpp"
#include "polydtn/suites.hpp"

using namespace polydtn;

namespace {
const ResistorNetwork& triangle3() {
  static const ResistorNetwork net(3, {{0, 1}, {1, 2}, {0, 2}}, {0, 1, 2});
  return net;
}
}  // namespace

TEST_CASE("partition text forms") {
  CHECK(encode_partition(partition_from_labels({0, 1, 1}), 3) == "1|23");
  CHECK(encode_partition(partition_from_labels({5, 2, 5}), 3) == "13|2");
  CHECK(encode_partition(partition_from_labels({0, 0, 0}), 3) == "123");
  std::vector<int> ten{0, 1, 1, 2, 2, 2, 3, 4, 5, 0};
  const std::string t = encode_partition(partition_from_labels(ten), 10);
  CHECK(t == "1,10|2,3|4,5,6|7|8|9");
  CHECK(decode_partition(t, 10) == partition_from_labels(ten));
  CHECK(decode_partition("13|2", 3) == partition_from_labels({0, 1, 0}));
  CHECK_THROWS_AS(decode_partition("12", 3), InvalidInput);
  CHECK_THROWS_AS(decode_partition("12|2", 3), InvalidInput);
}

TEST_CASE("noncrossing partitions") {
  CHECK(is_noncrossing(partition_from_labels({0, 1, 0, 1})) == false);
  CHECK(is_noncrossing(partition_from_labels({0, 1, 1, 0})));
  CHECK(is_noncrossing(partition_from_labels({0, 1, 2})));
  CHECK(is_noncrossing(partition_from_labels({0, 1, 0, 2, 0})));
}

TEST_CASE("enumeration of the worked examples") {
  const GroveEnumeration t = enumerate_groves(triangle3());
  CHECK(t.count("123") == 3);
  CHECK(t.count("1|23") == 1);
  CHECK(t.count("13|2") == 1);
  CHECK(t.count("12|3") == 1);
  CHECK(t.count("1|2|3") == 1);
  CHECK(t.total == 7);

  const ResistorNetwork edge(2, {{0, 1}}, {0, 1});
  const GroveEnumeration e = enumerate_groves(edge);
  CHECK(e.count("12") == 1);
  CHECK(e.count("1|2") == 1);

  const ResistorNetwork path(3, {{0, 2}, {2, 1}}, {0, 1});
  const GroveEnumeration p = enumerate_groves(path);
  CHECK(p.count("12") == 1);
  CHECK(p.count("1|2") == 2);
  CHECK(p.grove_subsets == 3);
  CHECK(p.tree_counts[0] == 1);
  CHECK(p.tree_counts[1] == 2);
}

TEST_CASE("grove totals are not contracted-graph tree counts; the corrected identities hold") {
  // The triangle has 7 groves but merging its three nodes leaves one vertex
  // (one spanning tree); only the all-singleton groves match that count.
  const GroveEnumeration t = enumerate_groves(triangle3());
  const GroveCountIdentities ids = grove_count_identities(triangle3(), t);
  CHECK(t.total == 7);
  CHECK(ids.contracted_trees == 1);
  CHECK(ids.singleton_groves == 1);
  CHECK(ids.size_weighted_groves == 3 * 3 + 2 * 3 + 1);
  CHECK(ids.holds());
  for (const auto& net : two_node_suite()) CHECK(grove_count_identities(net, enumerate_groves(net)).holds());
  for (const auto& net : three_node_suite()) CHECK(grove_count_identities(net, enumerate_groves(net)).holds());
}

TEST_CASE("enumeration agrees with the brute-force oracle") {
  std::vector<ResistorNetwork> nets = two_node_suite();
  for (auto& n : three_node_suite()) nets.push_back(std::move(n));
  nets.push_back(ResistorNetwork(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 0}, {4, 2}, {1, 3, 0.5}}, {0, 1, 2, 3}));
  for (const auto& net : nets) {
    CAPTURE(net.name());
    const GroveEnumeration g = enumerate_groves(net);
    const oracle::SubsetCounts o = oracle::enumerate_subsets(net);
    CHECK(g.total == o.grove_total);
    CHECK(g.partitions.size() == o.groves.size());
    for (const auto& [key, w] : o.groves) CHECK(g.count(key) == w);
  }
}

TEST_CASE("enumeration refuses more than 24 edges") {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < 25; ++i) edges.push_back({i, i + 1, 1.0});
  const ResistorNetwork big(26, edges, {0, 25});
  CHECK_THROWS_AS(enumerate_groves(big), InvalidInput);
}

TEST_CASE("two- and three-node formulas on the examples") {
  const ResistorNetwork path(3, {{0, 2}, {2, 1}}, {0, 1});
  const TwoNodeReport p = verify_two_node_formula(path);
  CHECK(p.ratio == oracle::Rational(1, 2));
  CHECK(p.exact_match());
  const ResistorNetwork tri(3, {{0, 1}, {1, 2}, {0, 2}}, {0, 1});
  CHECK(verify_two_node_formula(tri).ratio == oracle::Rational(3, 2));

  const ThreeNodeReport t = verify_three_node_formulas(triangle3());
  CHECK(t.exact_match());
  CHECK(t.ratios[0].partition == "123");
  CHECK(t.ratios[0].enumerated == 3);
  CHECK(t.ratios[1].enumerated == 1);
  CHECK(t.max_abs_error() < 1e-12);

  const ResistorNetwork star(4, {{0, 3}, {1, 3}, {2, 3}}, {0, 1, 2});
  const ThreeNodeReport s = verify_three_node_formulas(star);
  CHECK(s.exact_match());
  CHECK(s.ratios[0].enumerated == oracle::Rational(1, 3));
  CHECK(s.ratios[1].enumerated == oracle::Rational(1, 3));

  CHECK_THROWS_AS(verify_two_node_formula(triangle3()), InvalidInput);
  CHECK_THROWS_AS(verify_three_node_formulas(tri), InvalidInput);
}

TEST_CASE("tree-count polynomials") {
  const TreeCountPolynomial p3 = p3_polynomial(-1.0 / std::sqrt(3.0));
  CHECK(p3.coefficients[1] == doctest::Approx(std::sqrt(3.0)));
  CHECK(p3.coefficients[2] == doctest::Approx(1.0));
  CHECK(p3.palindromic(1e-12));
  CHECK(p3_polynomial(0.0).coefficients == std::vector<double>{1, 0, 0});
  const TreeCountPolynomial p4 = p4_polynomial(-0.5, 0.5 - 1.0 / std::sqrt(2.0));
  CHECK(p4.coefficients[1] == doctest::Approx(1 + std::sqrt(2.0)));
  CHECK(p4.coefficients[2] == doctest::Approx(1 + std::sqrt(2.0)));
  CHECK(p4.coefficients[3] == doctest::Approx(1.0));
  CHECK(p4_polynomial(0, 0).coefficients == std::vector<double>{1, 0, 0, 0});
  CHECK(p4(1.0) == doctest::Approx(4 + 2 * std::sqrt(2.0)));
  for (const auto& [n, p] : reference_polynomials()) {
    CHECK(p.coefficients.size() == static_cast<std::size_t>(n));
    CHECK(p.coefficients[0] == 1.0);
    CHECK(p.palindromic());
    CHECK(p.coefficients[1] == doctest::Approx(1.0 / std::tan(std::numbers::pi / (2 * n))));
  }
  CHECK(reference_polynomial(2).coefficients == std::vector<double>{1, 1});
  CHECK_THROWS_AS(reference_polynomial(7), InvalidInput);
  CHECK_THROWS_AS(reference_polynomial(1), InvalidInput);
}

TEST_CASE("sampled groves are groves and reproducible") {
  for (const auto& net : three_node_suite()) {
    std::mt19937_64 rng = stream_rng(9, 0);
    const GroveSampler sampler(net);
    for (int i = 0; i < 200; ++i) {
      const Grove g = sampler.sample(rng);
      CHECK(is_grove(net, g.edges));
      CHECK(g.tree_count == g.partition.size());
      CHECK(g.tree_count >= 1);
      CHECK(g.tree_count <= 3);
    }
  }
  const Grove a = sample_grove(triangle3(), 17);
  const Grove b = sample_grove(triangle3(), 17);
  CHECK(a.edges == b.edges);
  CHECK(!is_grove(triangle3(), {0, 1, 2}));  // cycle
  const ResistorNetwork path(3, {{0, 2}, {2, 1}}, {0, 1});
  CHECK(!is_grove(path, {}));  // vertex 3 in a node-free component
}

TEST_CASE("sampler frequencies on the small examples") {
  const ResistorNetwork edge(2, {{0, 1}}, {0, 1});
  const SampleTally e = sample_groves(edge, 40000, 1);
  const double f = static_cast<double>(e.partitions.at("12")) / e.samples;
  CHECK(std::abs(f - 0.5) < 4 * std::sqrt(0.25 / e.samples));

  const ResistorNetwork path(3, {{0, 2}, {2, 1}}, {0, 1});
  const SampleTally p = sample_groves(path, 40000, 2);
  const double fp = static_cast<double>(p.partitions.at("12")) / p.samples;
  CHECK(std::abs(fp - 1.0 / 3) < 4 * std::sqrt(2.0 / 9 / p.samples));

  const SampleTally t = sample_groves(triangle3(), 100000, 3);
  const GroveEnumeration ex = enumerate_groves(triangle3());
  for (const auto& [key, w] : ex.partitions) {
    const double pr = exact::to_double(w / ex.total);
    const double fr = static_cast<double>(t.partitions.at(key)) / t.samples;
    CHECK(std::abs(fr - pr) < 4 * std::sqrt(pr * (1 - pr) / t.samples));
  }
}

TEST_CASE("weighted networks are sampled proportionally to conductance products") {
  const ResistorNetwork net(3, {{0, 1, 2.0}, {1, 2, 0.5}, {0, 2, 3.0}}, {0, 1, 2});
  const GroveEnumeration ex = enumerate_groves(net);
  const SampleTally t = sample_groves(net, 100000, 4);
  for (const auto& [key, w] : ex.partitions) {
    const double pr = exact::to_double(w / ex.total);
    const double fr = static_cast<double>(t.partitions.count(key) ? t.partitions.at(key) : 0) / t.samples;
    CHECK(std::abs(fr - pr) < 4 * std::sqrt(pr * (1 - pr) / t.samples));
  }
}

TEST_CASE("tallies do not depend on the thread count") {
  const ResistorNetwork net = three_node_suite()[6];
  const SampleTally a = sample_groves(net, 5000, 99, 1);
  const SampleTally b = sample_groves(net, 5000, 99, 4);
  CHECK(a.partitions == b.partitions);
  CHECK(a.tree_counts == b.tree_counts);
  CHECK(a.samples == 5000);
  CHECK(a.proposals == b.proposals);
}

TEST_CASE("lattice Monte Carlo report is consistent") {
  const TreeCountEstimate e = tree_count_monte_carlo(3, 0.2, 4000, 5, 1);
  CHECK(e.tally.samples == 4000);
  CHECK(e.ratios.size() == 3);
  CHECK(e.ratios[2] == 1.0);
  CHECK(e.limit[1] == doctest::Approx(std::sqrt(3.0)));
  CHECK(std::isfinite(e.discrete_prediction[0]));
  std::uint64_t sum = 0;
  for (auto c : e.tally.tree_counts) sum += c;
  CHECK(sum == 4000);
  CHECK(e.duality_gap[1] == 0.0);
  CHECK_THROWS_AS(tree_count_monte_carlo(3, 0.2, 0, 5), InvalidInput);
}
