#include "polydtn/suites.hpp"

#include <utility>

namespace polydtn {

namespace {

using Edges = std::vector<Edge>;

Edges unit(std::initializer_list<std::pair<std::size_t, std::size_t>> pairs) {
  Edges out;
  for (auto [u, v] : pairs) out.push_back({u, v, 1.0});
  return out;
}

Edges k4() { return unit({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
Edges c4() { return unit({{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }
Edges wheel5() { return unit({{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 0}, {4, 1}, {4, 2}, {4, 3}}); }
Edges grid2x3() { return unit({{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}}); }
Edges prism() { return unit({{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}}); }
Edges k33() { return unit({{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}}); }
Edges hexagon() { return unit({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}); }

Edges cube() {
  Edges out;
  for (std::size_t v = 0; v < 8; ++v)
    for (std::size_t bit = 1; bit < 8; bit <<= 1)
      if (!(v & bit)) out.push_back({v, v | bit, 1.0});
  return out;
}

ResistorNetwork make(std::size_t vertices, Edges edges, std::vector<std::size_t> boundary, std::string name) {
  return ResistorNetwork(vertices, std::move(edges), std::move(boundary), std::move(name));
}

}  // namespace

std::vector<ResistorNetwork> two_node_suite() {
  std::vector<ResistorNetwork> out;
  out.push_back(make(3, unit({{0, 2}, {2, 1}}), {0, 1}, "path"));
  out.push_back(make(3, unit({{0, 1}, {1, 2}, {0, 2}}), {0, 1}, "triangle"));
  out.push_back(make(2, unit({{0, 1}}), {0, 1}, "single-edge"));
  out.push_back(make(4, k4(), {0, 1}, "k4"));
  out.push_back(make(4, c4(), {0, 1}, "c4-adjacent"));
  out.push_back(make(4, c4(), {0, 2}, "c4-opposite"));
  out.push_back(make(4, unit({{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}), {0, 1}, "k4-minus-edge"));
  out.push_back(make(5, wheel5(), {0, 2}, "wheel5"));
  out.push_back(make(6, grid2x3(), {0, 5}, "grid2x3"));
  out.push_back(make(6, prism(), {0, 4}, "prism"));
  out.push_back(make(6, k33(), {0, 3}, "k33"));
  out.push_back(make(8, cube(), {0, 7}, "cube"));
  out.push_back(make(3, {{0, 1, 2.0}, {1, 2, 0.5}, {0, 2, 3.0}}, {0, 1}, "weighted-triangle"));
  out.push_back(make(3, {{0, 1, 1.5}, {0, 1, 0.25}, {0, 2, 1.0}, {2, 1, 2.0}}, {0, 1}, "parallel-edges"));
  return out;
}

std::vector<ResistorNetwork> three_node_suite() {
  std::vector<ResistorNetwork> out;
  out.push_back(make(3, unit({{0, 1}, {1, 2}, {0, 2}}), {0, 1, 2}, "triangle3"));
  out.push_back(make(4, unit({{0, 3}, {1, 3}, {2, 3}}), {0, 1, 2}, "star3"));
  out.push_back(make(4, k4(), {0, 1, 2}, "k4-3"));
  out.push_back(make(5, wheel5(), {0, 1, 2}, "wheel5-3"));
  out.push_back(make(6, grid2x3(), {0, 2, 4}, "grid2x3-3"));
  out.push_back(make(6, prism(), {0, 1, 2}, "prism-3"));
  out.push_back(make(8, cube(), {0, 3, 5}, "cube-3"));
  out.push_back(make(6, hexagon(), {0, 2, 4}, "hexagon-3"));
  out.push_back(make(5, unit({{0, 3}, {3, 1}, {1, 4}, {4, 2}}), {0, 1, 2}, "long-path3"));
  out.push_back(make(3, {{0, 1, 2.0}, {1, 2, 0.5}, {0, 2, 3.0}}, {0, 1, 2}, "weighted-triangle3"));
  out.push_back(make(4, {{0, 3, 1.0}, {1, 3, 2.0}, {2, 3, 0.25}}, {0, 1, 2}, "weighted-star3"));
  out.push_back(make(6, k33(), {0, 1, 2}, "k33-3"));
  {
    Edges e = hexagon();
    for (std::size_t v : {1, 3, 5}) e.push_back({6, v, 1.0});
    out.push_back(make(7, std::move(e), {0, 2, 4}, "hexagon-spokes3"));
  }
  return out;
}

}  // namespace polydtn
