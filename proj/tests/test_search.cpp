#include <algorithm>

#include "cliquebb/search.hpp"
#include "doctest.h"
#include "fixture.hpp"

using namespace cliquebb;
using testing::fig_graph;

namespace {

graph permuted(const graph& raw) { return degree_permute(raw).first; }

bool is_clique(const graph& raw, const std::vector<int>& members) {
  // members are original 1-based labels of an unpermuted graph
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!raw.adjacent(members[i] - 1, members[j] - 1)) return false;
  return true;
}

}  // namespace

TEST_CASE("example graph: unique maximum clique {1,3,6,8}") {
  search_result r = max_clique(permuted(fig_graph()));
  CHECK(r.best.size == 4);
  CHECK(r.best.members == std::vector<int>{1, 3, 6, 8});
  CHECK(r.stats.nodes >= 1);
  CHECK(r.stats.complete);
}

TEST_CASE("trivial graphs") {
  SUBCASE("complete K6") {
    graph g(6);
    for (int u = 0; u < 6; ++u)
      for (int v = u + 1; v < 6; ++v) g.add_edge(u, v);
    search_result r = max_clique(permuted(g));
    CHECK(r.best.size == 6);
    CHECK(r.best.found_at_label.path == std::vector<int>(6, 1));
  }
  SUBCASE("edgeless") {
    search_result r = max_clique(graph(5));
    CHECK(r.best.size == 1);
    CHECK(r.best.members.size() == 1);
  }
  SUBCASE("empty graph: size 0, one node") {
    search_result r = max_clique(graph(0));
    CHECK(r.best.size == 0);
    CHECK(r.stats.nodes == 1);
  }
  SUBCASE("initial_bound = n prunes everything at the root") {
    graph g = permuted(random_graph(20, 0.5, 3));
    search_result r = max_clique(g, 20);
    CHECK(r.best.members.empty());
    CHECK(r.stats.nodes == 1);
  }
}

TEST_CASE("oracle equivalence on random graphs") {
  for (int n : {10, 14, 18})
    for (double p : {0.3, 0.7})
      for (std::uint64_t seed = 0; seed < 25; ++seed) {
        graph raw = random_graph(n, p, seed);
        search_result r = max_clique(permuted(raw));
        CHECK(r.best.size == brute_force_omega(raw));
        CHECK(is_clique(raw, r.best.members));
        CHECK(static_cast<int>(r.best.members.size()) == r.best.size);
      }
}

TEST_CASE("primed runs: monotonicity and completeness") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    graph g = permuted(random_graph(30, 0.6, seed));
    search_result plain = max_clique(g, 0);
    int omega = plain.best.size;
    search_result at_omega = max_clique(g, omega);
    search_result below = max_clique(g, omega - 1);
    CHECK(at_omega.stats.nodes <= plain.stats.nodes);   // prove <= total
    CHECK(at_omega.best.members.empty());               // nothing unseats the prime
    CHECK(at_omega.stats.incumbent_timeline.empty());
    CHECK(below.best.size == omega);                    // one notch down recovers omega
  }
  CHECK_THROWS_AS(max_clique(graph(3), -1), std::invalid_argument);
}

TEST_CASE("determinism: identical reruns") {
  graph g = permuted(random_graph(35, 0.7, 77));
  search_result a = max_clique(g);
  search_result b = max_clique(g);
  CHECK(a.stats.nodes == b.stats.nodes);
  CHECK(a.best.members == b.best.members);
  CHECK(a.best.found_at_label == b.best.found_at_label);
  REQUIRE(a.stats.incumbent_timeline.size() == b.stats.incumbent_timeline.size());
  for (std::size_t i = 0; i < a.stats.incumbent_timeline.size(); ++i)
    CHECK(a.stats.incumbent_timeline[i].size == b.stats.incumbent_timeline[i].size);
}

TEST_CASE("timeline: sizes strictly increase, final equals omega") {
  graph g = permuted(random_graph(40, 0.6, 5));
  search_result r = max_clique(g);
  REQUIRE(!r.stats.incumbent_timeline.empty());
  for (std::size_t i = 1; i < r.stats.incumbent_timeline.size(); ++i)
    CHECK(r.stats.incumbent_timeline[i].size > r.stats.incumbent_timeline[i - 1].size);
  CHECK(r.stats.incumbent_timeline.back().size == r.best.size);
  CHECK(r.stats.nodes >= r.stats.incumbent_timeline.size());
}

TEST_CASE("labels: entries >= 1, depth equals clique size, replay works") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    graph raw = random_graph(25, 0.6, seed + 50);
    auto [g, perm] = degree_permute(raw);
    auto t0 = std::chrono::steady_clock::now();
    shared_incumbent inc(0);
    searcher s(g, inc, t0);
    s.run_root();
    incumbent best = inc.best();
    CHECK(best.found_at_label.depth() == best.size);
    for (int entry : best.found_at_label.path) CHECK(entry >= 1);
    // replaying the recorded loop positions reaches the same clique
    std::vector<int> clique = replay_positions(g, inc.best_positions());
    std::vector<int> names;
    for (int v : clique) names.push_back(g.names[v]);
    std::sort(names.begin(), names.end());
    CHECK(names == best.members);
  }
}

TEST_CASE("shared incumbent: ties never replace, strict improvement wins") {
  shared_incumbent inc(0);
  CHECK(inc.offer({5}, node_label{{1}}, {0}, 1, 0.0, 0));
  CHECK(!inc.offer({9}, node_label{{2}}, {1}, 2, 0.0, 0));  // equal size loses
  CHECK(inc.best().members == std::vector<int>{5});
  CHECK(inc.offer({3, 7}, node_label{{1, 1}}, {0, 0}, 3, 0.0, 1));
  CHECK(inc.size() == 2);
  CHECK(inc.timeline().size() == 2);
}

TEST_CASE("brute force oracle basics") {
  CHECK(brute_force_omega(fig_graph()) == 4);
  CHECK(brute_force_omega(graph(5)) == 1);
  CHECK_THROWS_AS(brute_force_omega(graph(25)), std::invalid_argument);
}

TEST_CASE("cancellation returns incomplete") {
  graph g = permuted(random_graph(60, 0.9, 1));
  std::atomic<bool> cancel{true};
  search_result r = max_clique(g, 0, &cancel);
  CHECK(!r.stats.complete);
}
