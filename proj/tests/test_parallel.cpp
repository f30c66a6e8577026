#include <algorithm>
#include <thread>

#include "cliquebb/parallel.hpp"
#include "doctest.h"
#include "fixture.hpp"

using namespace cliquebb;
using testing::fig_graph;

namespace {

graph permuted(const graph& raw) { return degree_permute(raw).first; }

}  // namespace

TEST_CASE("strategy parsing and naming") {
  for (const char* name : {"seq", "dist1", "dist2", "dist3", "resplit", "steal"}) {
    auto s = split_strategy::parse(name);
    REQUIRE(s.has_value());
    CHECK(s->name() == name);
  }
  CHECK(!split_strategy::parse("dist4"));
  CHECK(!split_strategy::parse(""));
  CHECK(split_strategy::parse("steal", 42)->seed == 42);
}

TEST_CASE("argument validation") {
  graph g = permuted(fig_graph());
  CHECK_THROWS_AS(solve_parallel(g, 0, split_strategy::static_depth(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_parallel(g, 4, split_strategy::sequential()),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_parallel(g, 2, split_strategy::static_depth(0)),
                  std::invalid_argument);
}

TEST_CASE("example graph solves under every strategy") {
  graph g = permuted(fig_graph());
  for (auto strat : {split_strategy::static_depth(1), split_strategy::static_depth(2),
                     split_strategy::static_depth(3), split_strategy::resplit(),
                     split_strategy::random_steal(7)}) {
    parallel_result r = solve_parallel(g, 4, strat);
    CHECK(r.best.size == 4);
    CHECK(r.best.members == std::vector<int>{1, 3, 6, 8});
    CHECK(r.stats.total_nodes > 0);
    CHECK(r.stats.complete);
  }
}

TEST_CASE("safety: parallel omega equals sequential omega") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    graph g = permuted(random_graph(45, 0.8, seed));
    int omega = max_clique(g).best.size;
    for (auto strat : {split_strategy::static_depth(1), split_strategy::static_depth(2),
                       split_strategy::resplit(), split_strategy::random_steal(seed)})
      for (int workers : {1, 2, 4}) {
        parallel_result r = solve_parallel(g, workers, strat);
        CHECK(r.best.size == omega);
        CHECK(r.stats.per_thread_ms.size() == static_cast<std::size_t>(workers));
        CHECK(r.stats.nodes_per_thread.size() == static_cast<std::size_t>(workers));
        // total is the producer's share plus every worker's share
        std::uint64_t sum = r.stats.producer_nodes;
        for (auto n : r.stats.nodes_per_thread) sum += n;
        CHECK(r.stats.total_nodes == sum);
      }
  }
}

TEST_CASE("degenerate parallelism: one worker at distance 1 replays sequential") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    graph g = permuted(random_graph(40, 0.7, seed));
    search_result seq = max_clique(g);
    parallel_result par = solve_parallel(g, 1, split_strategy::static_depth(1));
    CHECK(par.stats.total_nodes == seq.stats.nodes);
    CHECK(par.best.size == seq.best.size);
    REQUIRE(par.stats.incumbent_timeline.size() ==
            seq.stats.incumbent_timeline.size());
    for (std::size_t i = 0; i < seq.stats.incumbent_timeline.size(); ++i)
      CHECK(par.stats.incumbent_timeline[i].size ==
            seq.stats.incumbent_timeline[i].size);
  }
}

TEST_CASE("merged parallel timeline is strictly increasing") {
  graph g = permuted(random_graph(55, 0.85, 3));
  for (auto strat : {split_strategy::static_depth(1), split_strategy::resplit(),
                     split_strategy::random_steal(1)}) {
    parallel_result r = solve_parallel(g, 8, strat);
    REQUIRE(!r.stats.incumbent_timeline.empty());
    for (std::size_t i = 1; i < r.stats.incumbent_timeline.size(); ++i)
      CHECK(r.stats.incumbent_timeline[i].size >
            r.stats.incumbent_timeline[i - 1].size);
    CHECK(r.stats.incumbent_timeline.back().size == r.best.size);
  }
}

TEST_CASE("enumerate_split: one item per explorable root branch at d=1") {
  graph g = permuted(fig_graph());
  shared_incumbent inc(0);
  auto items = enumerate_split(g, 1, inc);
  CHECK(items.size() <= 9);
  for (std::size_t i = 0; i < items.size(); ++i) {
    REQUIRE(items[i].label.path.size() == 1);
    CHECK(items[i].label.path[0] == static_cast<int>(i) + 1);
    CHECK(items[i].clique.size() == 1);
  }
  // left-branch preservation: the sequentially-first subtree heads the queue
  CHECK(items.front().label.path == std::vector<int>{1});
}

TEST_CASE("enumerate_split: lexicographic label order at d=2") {
  graph g = permuted(random_graph(30, 0.6, 4));
  shared_incumbent inc(0);
  auto items = enumerate_split(g, 2, inc);
  REQUIRE(!items.empty());
  for (std::size_t i = 1; i < items.size(); ++i)
    CHECK(items[i - 1].label.path < items[i].label.path);
  for (const auto& item : items) CHECK(item.label.path.size() <= 2);
}

TEST_CASE("enumerate_split: items replay to their own clique and candidates") {
  graph g = permuted(random_graph(30, 0.6, 4));
  shared_incumbent inc(0);
  for (const auto& item : enumerate_split(g, 2, inc)) {
    std::vector<int> clique = replay_positions(g, item.positions);
    CHECK(clique == item.clique);
  }
}

TEST_CASE("enumerate_split primed at omega matches the primed root fanout") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    graph g = permuted(random_graph(35, 0.7, seed));
    int omega = max_clique(g).best.size;
    shared_incumbent inc(omega);
    auto items = enumerate_split(g, 1, inc);
    // primed incumbent never moves, so the executed root branches are exactly
    // the positions whose colour bound beats omega
    bitset all(g.n);
    all.fill();
    coloured_candidates cc = colour_order(g, all);
    std::size_t fanout = 0;
    for (int i = 0; i < cc.size(); ++i)
      if (cc.bounds[i] > omega) ++fanout;
    CHECK(items.size() == fanout);
  }
}

TEST_CASE("work queue: FIFO order, high water, close semantics") {
  work_queue q(8);
  for (int i = 0; i < 5; ++i) {
    work_item item;
    item.bound = i;
    CHECK(q.push_producer(std::move(item)));
  }
  CHECK(q.high_water() == 5);
  work_item out;
  for (int i = 0; i < 5; ++i) {
    REQUIRE(q.try_pop(out));
    CHECK(out.bound == i);
  }
  CHECK(!q.try_pop(out));
  q.close();
  CHECK(!q.pop(out));                 // closed and drained
  CHECK(!q.push_producer(work_item{}));  // closed for producers
}

TEST_CASE("work queue: producer blocks at capacity until a consumer drains") {
  work_queue q(2);
  CHECK(q.push_producer(work_item{}));
  CHECK(q.push_producer(work_item{}));
  std::atomic<bool> third_done{false};
  std::thread producer([&] {
    q.push_producer(work_item{});
    third_done = true;
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(20));
  CHECK(!third_done.load());
  work_item out;
  CHECK(q.pop(out));
  producer.join();
  CHECK(third_done.load());
}

TEST_CASE("work queue: stolen pushes respect the hard limit") {
  work_queue q(2, 3);
  q.push_stolen(work_item{});
  q.push_stolen(work_item{});
  q.push_stolen(work_item{});
  CHECK_THROWS_AS(q.push_stolen(work_item{}), std::logic_error);
}

TEST_CASE("steal board: unstarted branches stolen once, victim loop stops") {
  graph g = permuted(random_graph(30, 0.7, 2));
  shared_incumbent inc(0);
  auto items = enumerate_split(g, 1, inc);
  // pick an item with a wide second level
  work_item item;
  coloured_candidates cc;
  for (auto& candidate : items) {
    if (candidate.candidates.empty()) continue;
    cc = colour_order(g, candidate.candidates);
    if (cc.size() >= 5) {
      item = candidate;
      break;
    }
  }
  REQUIRE(cc.size() >= 5);

  steal_board board(g, 2, 3);
  board.begin_item(0, item);
  split_observer& obs = board.observer(0);
  // victim executed the top two branches, is now on the third
  int top = cc.size() - 1;
  CHECK(obs.on_branch(2, top, 0));
  CHECK(obs.on_branch(2, top - 1, 1));
  CHECK(obs.on_branch(2, top - 2, 2));

  auto t0 = std::chrono::steady_clock::now();
  auto stolen = board.steal_unstarted(0, 2, inc, t0);
  CHECK(stolen.size() <= static_cast<std::size_t>(top - 2));
  for (std::size_t k = 0; k < stolen.size(); ++k) {
    CHECK(stolen[k].label.path.size() == 2);
    CHECK(stolen[k].label.path[0] == item.label.path[0]);
    // numbering continues past the victim's current branch (the 3rd)
    CHECK(stolen[k].label.path[1] == 4 + static_cast<int>(k));
    CHECK(replay_positions(g, stolen[k].positions) == stolen[k].clique);
  }
  // the victim's next loop step is refused, and a second steal yields nothing
  CHECK(!obs.on_branch(2, top - 3, 3));
  CHECK(board.steal_unstarted(0, 2, inc, t0).empty());
  // nothing published at depth 3 -> nothing to steal there
  CHECK(board.steal_unstarted(0, 3, inc, t0).empty());
  board.end_item(0);
  CHECK(board.steal_unstarted(0, 2, inc, t0).empty());  // idle victim
}

TEST_CASE("resplit queue stays within the w x |V| bound") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    graph g = permuted(random_graph(60, 0.9, seed));
    parallel_result r = solve_parallel(g, 4, split_strategy::resplit());
    CHECK(r.stats.queue_high_water <= static_cast<std::size_t>(4 * g.n));
    CHECK(r.best.size == max_clique(g).best.size);
  }
}

TEST_CASE("cancellation stops every strategy") {
  graph g = permuted(random_graph(70, 0.95, 1));
  std::atomic<bool> cancel{true};
  for (auto strat : {split_strategy::static_depth(1), split_strategy::resplit(),
                     split_strategy::random_steal(3)}) {
    parallel_result r = solve_parallel(g, 4, strat, &cancel);
    CHECK(!r.stats.complete);
  }
}
