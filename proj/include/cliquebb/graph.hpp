#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cliquebb/bitset.hpp"

namespace cliquebb {

// Undirected graph over internal 0-based indices with bitset adjacency rows.
// names maps internal indices back to the original 1-based DIMACS labels;
// after a degree permutation the two differ.  Immutable once built, so it is
// safe to share read-only between workers.
struct graph {
  int n = 0;
  std::vector<bitset> adj;
  std::vector<int> names;

  graph() = default;
  explicit graph(int n_) : n(n_), adj(n_, bitset(n_)), names(n_) {
    for (int v = 0; v < n_; ++v) names[v] = v + 1;
  }

  // Internal indices; self-loops are a caller bug.
  void add_edge(int u, int v) {
    adj[u].set(v);
    adj[v].set(u);
  }

  bool adjacent(int u, int v) const { return adj[u].test(v); }
  int degree(int v) const { return adj[v].count(); }

  long long edge_count() const {
    long long total = 0;
    for (int v = 0; v < n; ++v) total += degree(v);
    return total / 2;
  }
};

struct degree_permutation {
  std::vector<int> order;    // new index -> old index
  std::vector<int> inverse;  // old index -> new index
};

struct parse_error : std::runtime_error {
  int line;
  parse_error(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// DIMACS clq format: `c` comments, one `p edge <n> <m>` line, `e <u> <v>`
// lines with 1-based endpoints.  Duplicate edges are tolerated, self-loops
// rejected.
graph parse_dimacs(std::istream& in);
graph parse_dimacs_file(const std::string& path);
void write_dimacs(const graph& g, std::ostream& out);

// Relabels so that internal index order has non-increasing degree, ties
// broken by ascending original label.
std::pair<graph, degree_permutation> degree_permute(const graph& g);

// Erdos-Renyi G(n,p), deterministic for a given seed.
graph random_graph(int n, double p, std::uint64_t seed);

}  // namespace cliquebb
