#pragma once

// JSON and CSV forms of the library's results. Doubles are written in the
// shortest form that round-trips; big counts are decimal strings.

#include <string>

#include <json.hpp>

#include "polydtn/exact_response.hpp"
#include "polydtn/groves.hpp"
#include "polydtn/network.hpp"
#include "polydtn/polygon_lattice.hpp"
#include "polydtn/sc_verify.hpp"

namespace polydtn {

using Json = nlohmann::ordered_json;

std::string format_double(double x);

Json to_json(const ResponseMatrix& m);
Json to_json(const SpectralDecomposition& s);
/// Dense rows, comma separated, one row per line.
std::string to_csv(const Eigen::MatrixXd& m);
Json dtn_to_json(const Eigen::MatrixXd& m, const std::string& source = {});

/// {"vertices": V, "edges": [[u, v, c], ...], "boundary": [...]} with an
/// optional "name".
ResistorNetwork network_from_json(const Json& j);
Json to_json(const ResistorNetwork& net);
ResistorNetwork load_network(const std::string& path);

std::string study_csv(const ConvergenceStudy& study);
Json to_json(const ConvergenceStudy& study);

Json to_json(const GroveEnumeration& e);
Json to_json(const SampleTally& t);
Json to_json(const TreeCountEstimate& e);
Json to_json(const TreeCountPolynomial& p);

Json to_json(const OctagonReport& r);
Json to_json(const SlitReport& r);

}  // namespace polydtn
