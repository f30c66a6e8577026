#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <vector>

#include "cliquebb/colour.hpp"
#include "cliquebb/graph.hpp"

namespace cliquebb {

// Branch indices from the root; the root itself is the empty list.  Entry at
// depth d is the 1-based count of branches actually executed so far at that
// level along the current path (branches pruned by the bound do not advance
// the index).
struct node_label {
  std::vector<int> path;

  int depth() const { return static_cast<int>(path.size()); }
  friend bool operator==(const node_label&, const node_label&) = default;
};

struct incumbent {
  int size = 0;
  std::vector<int> members;  // original labels, ascending; empty when nothing found
  node_label found_at_label;
  std::uint64_t found_at_nodes = 0;
  double found_at_ms = 0.0;
  int thread_id = -1;
};

// Best clique shared between workers.  The hot path reads only the atomic
// size; members and the discovery timeline live behind a short critical
// section.  Updates are strictly-improving, so the size is monotonically
// non-decreasing under concurrency.
class shared_incumbent {
 public:
  explicit shared_incumbent(int initial_size = 0) : size_(initial_size) {}

  int size() const { return size_.load(std::memory_order_acquire); }

  // Returns true when this clique strictly beat the current best.  positions
  // records the raw loop index taken at each level, which is enough to walk
  // back to the clique deterministically (see replay_positions).
  bool offer(std::vector<int> members, node_label label, std::vector<int> positions,
             std::uint64_t nodes_at, double ms_at, int thread_id);

  incumbent best() const;
  std::vector<int> best_positions() const;
  std::vector<incumbent> timeline() const;

 private:
  std::atomic<int> size_;
  mutable std::mutex m_;
  incumbent best_;
  std::vector<int> best_positions_;
  std::vector<incumbent> timeline_;
};

struct search_stats {
  std::uint64_t nodes = 0;  // recursive calls, root included
  std::vector<incumbent> incumbent_timeline;
  double wall_ms = 0.0;
  bool complete = true;
};

struct search_result {
  incumbent best;
  search_stats stats;
};

// Notifications at shallow branch levels, used by the resplitting strategy.
// Depths are absolute (a branch at depth d extends a clique of size d-1) and
// only depths <= observed_depth are reported, so there is no overhead below
// the splitting horizon.
class split_observer {
 public:
  virtual ~split_observer() = default;
  // Called once per loop position before the bound check.  Returning false
  // abandons the remaining positions at this level (they were requeued).
  virtual bool on_branch(int depth, int loop_pos, int exec_count) = 0;
  virtual void on_level_done(int depth) = 0;
};

// One worker's view of the recursive expand procedure.  All mutable state is
// local; the incumbent handle is the only shared object.  Scratch buffers
// are allocated once, sized n per depth.
class searcher {
 public:
  searcher(const graph& g, shared_incumbent& inc,
           std::chrono::steady_clock::time_point t0, int thread_id = -1,
           const std::atomic<bool>* cancel = nullptr,
           split_observer* observer = nullptr, int observed_depth = 0);

  void run_root();
  // Resume at an interior node; label/positions locate it under the root.
  void run_from(const std::vector<int>& clique, const bitset& candidates,
                const node_label& label, const std::vector<int>& positions);

  std::uint64_t nodes() const { return nodes_; }
  bool cancelled() const { return cancelled_; }

 private:
  struct level {
    bitset candidates;
    coloured_candidates coloured;
  };

  bool expand(int depth);
  void offer_current();

  const graph* g_;
  shared_incumbent* inc_;
  std::chrono::steady_clock::time_point t0_;
  int thread_id_;
  const std::atomic<bool>* cancel_;
  split_observer* observer_;
  int observed_depth_;

  greedy_colourer colourer_;
  std::vector<level> levels_;
  std::vector<int> clique_;     // internal indices
  std::vector<int> labels_;     // executed-branch counts along the path
  std::vector<int> positions_;  // raw loop positions along the path
  std::uint64_t nodes_ = 0;
  bool cancelled_ = false;
};

// Algorithm entry point.  With initial_bound = 0 this finds a maximum clique
// and proves it; with initial_bound = b > 0 it explores only what an
// incumbent of size b cannot eliminate (the primed run).  The graph should
// already be degree-permuted.
search_result max_clique(const graph& g, int initial_bound = 0,
                         const std::atomic<bool>* cancel = nullptr);

// Exhaustive clique enumeration without any bound; test oracle only.
// Refuses n > 24.
int brute_force_omega(const graph& g);

// Follows recorded loop positions from the root and returns the clique
// reached, as internal indices.
std::vector<int> replay_positions(const graph& g, const std::vector<int>& positions);

}  // namespace cliquebb
