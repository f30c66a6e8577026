#pragma once

#include <vector>

#include "cliquebb/graph.hpp"

namespace cliquebb {

// Candidate vertices grouped by greedy colour class, classes concatenated in
// ascending colour.  bounds[i] is the 1-based colour of vertices[i], so
// bounds is non-decreasing and bounds.back() is the number of colours used.
// Branching iterates this sequence in reverse, so the highest-colour vertex
// is tried first and |C| + bounds[i] bounds every position.
struct coloured_candidates {
  std::vector<int> vertices;
  std::vector<int> bounds;

  int size() const { return static_cast<int>(vertices.size()); }
  bool empty() const { return vertices.empty(); }
  int colours() const { return bounds.empty() ? 0 : bounds.back(); }
};

// Sequential greedy colouring over candidates in ascending internal index:
// each vertex gets the lowest class containing none of its neighbours.
coloured_candidates colour_order(const graph& g, const bitset& candidates);

// Reusable-buffer variant for the search hot loop; one per worker.
class greedy_colourer {
 public:
  explicit greedy_colourer(int n);
  void colour(const graph& g, const bitset& candidates, coloured_candidates& out);

 private:
  std::vector<bitset> classes_;
};

}  // namespace cliquebb
