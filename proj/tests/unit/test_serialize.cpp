#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "polydtn/error.hpp"
#include "polydtn/serialize.hpp"
#include "polydtn/suites.hpp"
#include "polydtn/verify.hpp"

using namespace polydtn;

TEST_CASE("doubles round-trip through their shortest text") {
  for (double x : {0.1, -0.5773502691896258, 1e-300, 123456789.125, 0.0, -0.0, 5e-324}) {
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  const Json j = to_json(ResponseMatrix(3));
  CHECK(j["generator"][1].get<double>() == lambda_entry(3, 1, 0));
  CHECK(Json::parse(j.dump())["generator"][0].get<double>() == ResponseMatrix(3).generator()[0]);
}

TEST_CASE("CSV rows") {
  Eigen::MatrixXd m(2, 2);
  m << 1, -0.5, -0.5, 0.25;
  CHECK(to_csv(m) == "1,-0.5\n-0.5,0.25\n");
}

TEST_CASE("network JSON round trip") {
  for (const auto& net : two_node_suite()) {
    const ResistorNetwork back = network_from_json(Json::parse(to_json(net).dump()));
    CHECK(back.vertex_count() == net.vertex_count());
    CHECK(back.boundary() == net.boundary());
    REQUIRE(back.edges().size() == net.edges().size());
    for (std::size_t i = 0; i < net.edges().size(); ++i) CHECK(back.edges()[i].conductance == net.edges()[i].conductance);
  }
  CHECK_THROWS_AS(network_from_json(Json::parse(R"({"vertices": 2})")), InvalidInput);
  CHECK_THROWS_AS(network_from_json(Json::parse(R"({"vertices": 2, "edges": [[0]], "boundary": [0]})")), InvalidInput);
  CHECK_THROWS_AS(network_from_json(Json::parse(R"({"vertices": 2, "edges": [[0, 1]], "boundary": [-1]})")), InvalidInput);
  CHECK_THROWS_AS(network_from_json(Json::parse(R"({"vertices": 3, "edges": [[0, 1]], "boundary": [0]})")), InvalidInput);
  CHECK_THROWS_AS(load_network("/nonexistent/net.json"), InvalidInput);
}

TEST_CASE("big counts are decimal strings") {
  const GroveEnumeration e = enumerate_groves(two_node_suite()[11]);
  const Json j = to_json(e);
  CHECK(j["groves"].is_string());
  CHECK(j["partitions"]["12"].is_string());
}

TEST_CASE("study CSV has the documented columns") {
  const ConvergenceStudy s = convergence_study(2, {0.2, 0.1}, 0.0, 1);
  const std::string csv = study_csv(s);
  CHECK(csv.rfind("n,epsilon,d,lambda_discrete,lambda_exact,abs_error\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("quick check suite passes and its report is deterministic") {
  VerifyOptions o;
  o.quick = true;
  o.threads = 1;
  const auto a = run_checks(o);
  CHECK(all_passed(a));
  REQUIRE(a.size() == 11);
  CHECK(a[9].skipped);
  const auto b = run_checks(o);
  CHECK(checks_report(a, o).dump() == checks_report(b, o).dump());
}
