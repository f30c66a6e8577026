#pragma once

#include <sstream>
#include <string>

#include "cliquebb/graph.hpp"

namespace cliquebb::testing {

// 9-vertex worked example: unique maximum clique {1,3,6,8}.
inline graph fig_graph() {
  graph g(9);
  const int edges[][2] = {{1, 5}, {1, 9}, {2, 5}, {2, 6}, {2, 8}, {3, 4},
                          {3, 7}, {4, 8}, {5, 6}, {7, 8}, {8, 9}, {1, 3},
                          {6, 8}, {1, 6}, {1, 8}, {3, 6}, {3, 8}};
  for (auto [u, v] : edges) g.add_edge(u - 1, v - 1);
  return g;
}

inline graph from_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

}  // namespace cliquebb::testing
