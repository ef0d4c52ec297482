#include "polydtn/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "polydtn/error.hpp"

namespace polydtn {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

// NaN is not valid JSON.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json numbers(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

}  // namespace

Json to_json(const ResponseMatrix& m) {
  return Json{{"n", m.n()}, {"generator", numbers(m.generator())}};
}

Json to_json(const SpectralDecomposition& s) {
  return Json{{"n", s.n()}, {"eigenvalues", numbers(s.eigenvalues())}};
}

std::string to_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_double(m(r, c));
    }
    out += '\n';
  }
  return out;
}

Json dtn_to_json(const Eigen::MatrixXd& m, const std::string& source) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(number(m(r, c)));
    rows.push_back(std::move(row));
  }
  Json out{{"n", m.rows()}, {"matrix", std::move(rows)}};
  if (!source.empty()) out["source"] = source;
  return out;
}

ResistorNetwork network_from_json(const Json& j) {
  try {
    const auto vertices = j.at("vertices").get<long long>();
    if (vertices <= 0) throw InvalidInput("\"vertices\" must be positive");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) throw InvalidInput("each edge must be [u, v] or [u, v, c]");
      const auto u = e.at(0).get<long long>();
      const auto v = e.at(1).get<long long>();
      if (u < 0 || v < 0) throw InvalidInput("negative vertex id in edge list");
      edges.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v), e.size() == 3 ? e.at(2).get<double>() : 1.0});
    }
    std::vector<std::size_t> boundary;
    for (const auto& b : j.at("boundary")) {
      const auto v = b.get<long long>();
      if (v < 0) throw InvalidInput("negative boundary id");
      boundary.push_back(static_cast<std::size_t>(v));
    }
    ResistorNetwork net(static_cast<std::size_t>(vertices), std::move(edges), std::move(boundary),
                        j.value("name", std::string{}));
    if (j.value("circular_planar", false)) net.declare_circular_planar();
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed network JSON: ") + e.what());
  }
}

Json to_json(const ResistorNetwork& net) {
  Json edges = Json::array();
  for (const Edge& e : net.edges()) edges.push_back(Json::array({e.u, e.v, e.conductance}));
  Json out;
  if (!net.name().empty()) out["name"] = net.name();
  out["vertices"] = net.vertex_count();
  out["edges"] = std::move(edges);
  out["boundary"] = net.boundary();
  if (net.circular_planar()) out["circular_planar"] = true;
  return out;
}

ResistorNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open network file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("cannot parse " + path + ": " + e.what());
  }
  return network_from_json(j);
}

std::string study_csv(const ConvergenceStudy& study) {
  std::string out = "n,epsilon,d,lambda_discrete,lambda_exact,abs_error\n";
  for (const auto& level : study.levels) {
    for (std::size_t d = 0; d < level.generator.size(); ++d) {
      out += std::to_string(study.n) + ',' + format_double(level.epsilon) + ',' + std::to_string(d) + ',' +
             format_double(level.generator[d]) + ',' + format_double(study.exact[d]) + ',' +
             format_double(level.worst_error[d]) + '\n';
    }
  }
  return out;
}

Json to_json(const ConvergenceStudy& study) {
  Json levels = Json::array();
  for (const auto& level : study.levels) {
    levels.push_back(Json{{"epsilon", level.epsilon},
                          {"vertices", level.vertices},
                          {"generator", numbers(level.generator)},
                          {"max_abs_error", level.max_abs_error},
                          {"max_rel_error", level.max_rel_error},
                          {"circulant_spread", level.circulant_spread}});
  }
  return Json{{"n", study.n},
              {"rotation", study.rotation},
              {"exact", numbers(study.exact)},
              {"levels", std::move(levels)},
              {"weakly_decreasing", study.weakly_decreasing()},
              {"strictly_decreasing", study.strictly_decreasing()},
              {"observed_rates", numbers(study.observed_rates())}};
}

Json to_json(const GroveEnumeration& e) {
  Json partitions = Json::object();
  for (const auto& [key, count] : e.partitions) partitions[key] = exact::to_string(count);
  Json trees = Json::array();
  for (const auto& c : e.tree_counts) trees.push_back(exact::to_string(c));
  return Json{{"partitions", std::move(partitions)},
              {"tree_counts", std::move(trees)},
              {"groves", exact::to_string(e.total)},
              {"grove_subsets", e.grove_subsets}};
}

Json to_json(const SampleTally& t) {
  Json partitions = Json::object();
  for (const auto& [key, count] : t.partitions) partitions[key] = count;
  return Json{{"partitions", std::move(partitions)},
              {"tree_counts", t.tree_counts},
              {"samples", t.samples},
              {"seed", t.seed},
              {"proposals", t.proposals}};
}

Json to_json(const TreeCountEstimate& e) {
  Json out = to_json(e.tally);
  out["n"] = e.n;
  out["epsilon"] = e.epsilon;
  out["lattice_vertices"] = e.lattice_vertices;
  out["ratios"] = numbers(e.ratios);
  out["ratio_sigma"] = numbers(e.ratio_sigma);
  out["limit"] = numbers(e.limit);
  out["discrete_prediction"] = numbers(e.discrete_prediction);
  out["duality_gap"] = numbers(e.duality_gap);
  out["duality_sigma"] = numbers(e.duality_sigma);
  return out;
}

Json to_json(const TreeCountPolynomial& p) {
  return Json{{"n", p.n}, {"coefficients", numbers(p.coefficients)}, {"palindromic", p.palindromic()}};
}

Json to_json(const OctagonReport& r) {
  return Json{{"prevertices", r.prevertices},
              {"permutation", r.permutation},
              {"b_squared", r.b_squared},
              {"numerator", r.numerator},
              {"denominator", r.denominator},
              {"numerator_quarter_turns", r.numerator_quarter_turns},
              {"denominator_quarter_turns", r.denominator_quarter_turns},
              {"phase_consistent", r.phase_consistent},
              {"lambda", r.lambda},
              {"exact", r.exact},
              {"difference", r.difference},
              {"refinement_change", r.refinement_change}};
}

Json to_json(const SlitReport& r) {
  return Json{{"n", r.n},
              {"endpoints", numbers(r.endpoints)},
              {"cotangents", numbers(r.cotangents)},
              {"scale", r.scale},
              {"offset", r.offset},
              {"max_residual", r.max_residual},
              {"consistent", r.consistent}};
}

}  // namespace polydtn
