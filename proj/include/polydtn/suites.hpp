#pragma once

// Small shipped networks used by the exact grove and Kirchhoff checks.

#include <vector>

#include "polydtn/network.hpp"

namespace polydtn {

/// Two-node networks, at most 12 edges each (includes the path 1-3-2 and the
/// triangle).
std::vector<ResistorNetwork> two_node_suite();

/// Three-node networks, at most 12 edges each (includes the triangle with
/// all three vertices as nodes).
std::vector<ResistorNetwork> three_node_suite();

}  // namespace polydtn
