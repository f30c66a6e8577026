#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cliquebb/search.hpp"

namespace cliquebb {

enum class split_kind { sequential, static_depth, resplit, random_steal };

// Work-splitting strategies:
//   static_depth(d)  — a producer enumerates depth-d subtrees in sequential
//                      order onto a bounded queue, workers consume in order.
//   resplit          — static_depth(1) until the queue drains, then idle
//                      workers steal unstarted sibling work from the others
//                      at distance 2, later 3.
//   random_steal     — per-worker deques, idle workers steal the oldest
//                      entry of a random victim.
struct split_strategy {
  split_kind kind = split_kind::sequential;
  int depth = 1;           // static_depth splitting distance
  int max_depth = 3;       // resplit deepest splitting distance
  std::uint64_t seed = 0;  // random_steal victim selection

  static split_strategy sequential() { return {}; }
  static split_strategy static_depth(int d) {
    return {split_kind::static_depth, d, 3, 0};
  }
  static split_strategy resplit(int max_depth = 3) {
    return {split_kind::resplit, 1, max_depth, 0};
  }
  static split_strategy random_steal(std::uint64_t seed) {
    return {split_kind::random_steal, 1, 3, seed};
  }

  // seq | dist1 | dist2 | dist3 | resplit | steal
  std::string name() const;
  static std::optional<split_strategy> parse(std::string_view text,
                                             std::uint64_t seed = 0);
};

// A subtree root packaged for another worker.  candidates is the pristine
// candidate set of the node; replaying label's branch choices from the root
// reconstructs exactly (clique, candidates).
struct work_item {
  node_label label;
  std::vector<int> positions;  // raw loop positions, parallel to label.path
  std::vector<int> clique;     // internal indices
  bitset candidates;
  // |C| + colour bound at the creating position; re-checked against the
  // incumbent when the item is dequeued
  int bound = 0;
};

// MPMC blocking queue of work items.  Producer pushes block at the capacity;
// stolen items bypass it but count against an optional hard limit.
class work_queue {
 public:
  explicit work_queue(std::size_t producer_capacity, std::size_t hard_limit = 0);

  // Returns false when the queue was closed while waiting.
  bool push_producer(work_item item);
  // Never blocks; throws std::logic_error if the hard limit would be exceeded.
  void push_stolen(work_item item);

  bool pop(work_item& out);      // blocks; false once closed and drained
  bool try_pop(work_item& out);  // non-blocking
  bool pop_wait(work_item& out, std::chrono::milliseconds timeout);

  void close();
  std::size_t high_water() const;

 private:
  mutable std::mutex m_;
  std::condition_variable not_empty_;
  std::condition_variable not_full_;
  std::deque<work_item> items_;
  std::size_t producer_capacity_;
  std::size_t hard_limit_;
  std::size_t high_water_ = 0;
  bool closed_ = false;
};

// Published search positions for the resplitting strategy.  Each worker owns
// one entry and updates it only at branch depths <= max_depth; a stealing
// worker flags a level and requeues the victim's unstarted branches there.
class steal_board {
 public:
  steal_board(const graph& g, int workers, int max_depth = 3);
  ~steal_board();

  // Owner side.  The observer feeds position updates from the searcher's
  // shallow levels and stops the owner's loop once its level was stolen.
  void begin_item(int worker, const work_item& item);
  void end_item(int worker);
  split_observer& observer(int worker);

  // Stealer side: flags the victim's level `depth` (2..max_depth) and
  // returns its unstarted branches there as work items (leaves included), in
  // sequential order and bound-checked against inc at call time.  Idempotent:
  // an already flagged victim yields nothing.
  std::vector<work_item> steal_unstarted(int victim, int depth,
                                         shared_incumbent& inc,
                                         std::chrono::steady_clock::time_point t0);

  int max_depth() const { return max_depth_; }

 private:
  struct entry;
  const graph* g_;
  int max_depth_;
  std::vector<std::unique_ptr<entry>> entries_;
};

struct parallel_stats {
  std::vector<double> per_thread_ms;  // first item dequeued to final idle
  std::vector<std::uint64_t> nodes_per_thread;
  std::uint64_t producer_nodes = 0;  // splitting traversal above the split depth
  std::size_t queue_high_water = 0;
  std::uint64_t total_nodes = 0;  // producer + all workers
  std::vector<incumbent> incumbent_timeline;
  double wall_ms = 0.0;
  bool complete = true;
};

struct parallel_result {
  incumbent best;
  parallel_stats stats;
};

// Runs the search with the given worker count and strategy.  Rejects
// workers < 1 and the contradictory sequential-with-multiple-workers
// configuration with std::invalid_argument.
parallel_result solve_parallel(const graph& g, int workers,
                               const split_strategy& strategy,
                               const std::atomic<bool>* cancel = nullptr);

// Streams depth-d subtree roots in the order sequential search first reaches
// them, bound-checked against inc at enumeration time.  Leaves above depth d
// are offered to inc.  Returns the node count of the traversal above depth d.
std::uint64_t enumerate_split(const graph& g, int d, shared_incumbent& inc,
                              const std::function<bool(work_item&&)>& sink,
                              std::chrono::steady_clock::time_point t0,
                              const std::atomic<bool>* cancel = nullptr);

// Convenience collector.
std::vector<work_item> enumerate_split(const graph& g, int d, shared_incumbent& inc);

}  // namespace cliquebb
