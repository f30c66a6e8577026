#include "cliquebb/colour.hpp"

namespace cliquebb {

greedy_colourer::greedy_colourer(int n) : classes_(n, bitset(n)) {}

void greedy_colourer::colour(const graph& g, const bitset& candidates,
                             coloured_candidates& out) {
  out.vertices.clear();
  out.bounds.clear();
  int used = 0;
  candidates.for_each([&](int v) {
    int c = 0;
    while (c < used && classes_[c].intersects(g.adj[v])) ++c;
    if (c == used) {
      classes_[used].clear();
      ++used;
    }
    classes_[c].set(v);
  });
  for (int c = 0; c < used; ++c)
    classes_[c].for_each([&](int v) {
      out.vertices.push_back(v);
      out.bounds.push_back(c + 1);
    });
}

coloured_candidates colour_order(const graph& g, const bitset& candidates) {
  greedy_colourer colourer(g.n);
  coloured_candidates out;
  colourer.colour(g, candidates, out);
  return out;
}

}  // namespace cliquebb
