#include "cliquebb/instances.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace cliquebb {

graph hamming_graph(int bits, int min_dist) {
  int n = 1 << bits;
  graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (std::popcount(static_cast<unsigned>(u ^ v)) >= min_dist) g.add_edge(u, v);
  return g;
}

graph johnson_graph(int n, int w, int min_dist) {
  std::vector<std::uint32_t> subsets;
  // w-subsets as bitmasks, lexicographic in element order
  std::uint32_t mask = (1u << w) - 1;
  while (mask < (1u << n)) {
    subsets.push_back(mask);
    std::uint32_t t = mask | (mask - 1);
    mask = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(mask) + 1));
    if (mask == 0) break;
  }
  graph g(static_cast<int>(subsets.size()));
  for (std::size_t u = 0; u < subsets.size(); ++u)
    for (std::size_t v = u + 1; v < subsets.size(); ++v)
      if (std::popcount(subsets[u] ^ subsets[v]) >= min_dist)
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
  return g;
}

std::optional<graph> named_instance(const std::string& name) {
  if (name == "hamming6-2") return hamming_graph(6, 2);
  if (name == "hamming6-4") return hamming_graph(6, 4);
  if (name == "johnson8-2-4") return johnson_graph(8, 2, 4);
  if (name == "johnson8-4-4") return johnson_graph(8, 4, 4);
  return std::nullopt;
}

}  // namespace cliquebb
