#include "cliquebb/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace cliquebb {

namespace {

bool parse_int(const std::string& tok, long long& out) {
  if (tok.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == tok.size();
}

}  // namespace

graph parse_dimacs(std::istream& in) {
  graph g;
  bool have_problem = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind.empty() || kind == "c") continue;
    if (kind == "p") {
      if (have_problem) throw parse_error(lineno, "duplicate p line");
      std::string fmt, ntok, mtok, extra;
      ls >> fmt >> ntok >> mtok;
      long long n = 0, m = 0;
      if (fmt != "edge" && fmt != "col")
        throw parse_error(lineno, "expected 'p edge <n> <m>', got format '" + fmt + "'");
      if (!parse_int(ntok, n) || !parse_int(mtok, m) || n < 0 || m < 0)
        throw parse_error(lineno, "malformed p line");
      if (ls >> extra) throw parse_error(lineno, "trailing token '" + extra + "' on p line");
      g = graph(static_cast<int>(n));
      have_problem = true;
    } else if (kind == "e") {
      if (!have_problem) throw parse_error(lineno, "e line before p line");
      std::string utok, vtok, extra;
      ls >> utok >> vtok;
      long long u = 0, v = 0;
      if (!parse_int(utok, u) || !parse_int(vtok, v))
        throw parse_error(lineno, "malformed e line");
      if (ls >> extra) throw parse_error(lineno, "trailing token '" + extra + "' on e line");
      if (u < 1 || u > g.n || v < 1 || v > g.n)
        throw parse_error(lineno, "vertex index out of range: e " + utok + " " + vtok);
      if (u == v) throw parse_error(lineno, "self-loop rejected: e " + utok + " " + vtok);
      g.add_edge(static_cast<int>(u) - 1, static_cast<int>(v) - 1);
    } else {
      throw parse_error(lineno, "unrecognised line kind '" + kind + "'");
    }
  }
  if (!have_problem) throw parse_error(lineno, "missing p line");
  return g;
}

graph parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_dimacs(in);
}

void write_dimacs(const graph& g, std::ostream& out) {
  out << "p edge " << g.n << " " << g.edge_count() << "\n";
  for (int u = 0; u < g.n; ++u)
    g.adj[u].for_each([&](int v) {
      if (u < v) out << "e " << g.names[u] << " " << g.names[v] << "\n";
    });
}

std::pair<graph, degree_permutation> degree_permute(const graph& g) {
  degree_permutation perm;
  perm.order.resize(g.n);
  std::iota(perm.order.begin(), perm.order.end(), 0);
  std::vector<int> deg(g.n);
  for (int v = 0; v < g.n; ++v) deg[v] = g.degree(v);
  std::stable_sort(perm.order.begin(), perm.order.end(), [&](int a, int b) {
    if (deg[a] != deg[b]) return deg[a] > deg[b];
    return g.names[a] < g.names[b];
  });
  perm.inverse.resize(g.n);
  for (int i = 0; i < g.n; ++i) perm.inverse[perm.order[i]] = i;

  graph out(g.n);
  for (int i = 0; i < g.n; ++i) out.names[i] = g.names[perm.order[i]];
  for (int u = 0; u < g.n; ++u)
    g.adj[u].for_each([&](int v) {
      if (u < v) out.add_edge(perm.inverse[u], perm.inverse[v]);
    });
  return {std::move(out), std::move(perm)};
}

graph random_graph(int n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("edge probability out of [0,1]");
  graph g(n);
  std::mt19937_64 rng(seed);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      // top 53 bits -> uniform double in [0,1); avoids distribution
      // implementation differences
      double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (x < p) g.add_edge(u, v);
    }
  return g;
}

}  // namespace cliquebb
