#include "cliquebb/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <stdexcept>
#include <thread>

namespace cliquebb {

using clock = std::chrono::steady_clock;

std::string split_strategy::name() const {
  switch (kind) {
    case split_kind::sequential: return "seq";
    case split_kind::static_depth: return "dist" + std::to_string(depth);
    case split_kind::resplit: return "resplit";
    case split_kind::random_steal: return "steal";
  }
  return "?";
}

std::optional<split_strategy> split_strategy::parse(std::string_view text,
                                                    std::uint64_t seed) {
  if (text == "seq") return sequential();
  if (text == "dist1") return static_depth(1);
  if (text == "dist2") return static_depth(2);
  if (text == "dist3") return static_depth(3);
  if (text == "resplit") return resplit();
  if (text == "steal") return random_steal(seed);
  return std::nullopt;
}

// ---------------------------------------------------------------- queue ----

work_queue::work_queue(std::size_t producer_capacity, std::size_t hard_limit)
    : producer_capacity_(producer_capacity), hard_limit_(hard_limit) {}

bool work_queue::push_producer(work_item item) {
  std::unique_lock<std::mutex> lk(m_);
  not_full_.wait(lk, [&] { return closed_ || items_.size() < producer_capacity_; });
  if (closed_) return false;
  items_.push_back(std::move(item));
  high_water_ = std::max(high_water_, items_.size());
  not_empty_.notify_one();
  return true;
}

void work_queue::push_stolen(work_item item) {
  std::lock_guard<std::mutex> lk(m_);
  if (closed_) return;
  if (hard_limit_ != 0 && items_.size() >= hard_limit_)
    throw std::logic_error("work queue exceeded its w*|V| bound");
  items_.push_back(std::move(item));
  high_water_ = std::max(high_water_, items_.size());
  not_empty_.notify_one();
}

bool work_queue::pop(work_item& out) {
  std::unique_lock<std::mutex> lk(m_);
  not_empty_.wait(lk, [&] { return closed_ || !items_.empty(); });
  if (items_.empty()) return false;
  out = std::move(items_.front());
  items_.pop_front();
  not_full_.notify_one();
  return true;
}

bool work_queue::try_pop(work_item& out) {
  std::lock_guard<std::mutex> lk(m_);
  if (items_.empty()) return false;
  out = std::move(items_.front());
  items_.pop_front();
  not_full_.notify_one();
  return true;
}

bool work_queue::pop_wait(work_item& out, std::chrono::milliseconds timeout) {
  std::unique_lock<std::mutex> lk(m_);
  not_empty_.wait_for(lk, timeout, [&] { return closed_ || !items_.empty(); });
  if (items_.empty()) return false;
  out = std::move(items_.front());
  items_.pop_front();
  not_full_.notify_one();
  return true;
}

void work_queue::close() {
  std::lock_guard<std::mutex> lk(m_);
  closed_ = true;
  not_empty_.notify_all();
  not_full_.notify_all();
}

std::size_t work_queue::high_water() const {
  std::lock_guard<std::mutex> lk(m_);
  return high_water_;
}

// -------------------------------------------------------------- helpers ----

namespace {

void offer_clique(const graph& g, shared_incumbent& inc,
                  const std::vector<int>& clique, std::vector<int> label,
                  std::vector<int> positions, std::uint64_t nodes_at,
                  clock::time_point t0, int thread_id) {
  if (static_cast<int>(clique.size()) <= inc.size()) return;
  std::vector<int> members;
  members.reserve(clique.size());
  for (int v : clique) members.push_back(g.names[v]);
  std::sort(members.begin(), members.end());
  double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  inc.offer(std::move(members), node_label{std::move(label)}, std::move(positions),
            nodes_at, ms, thread_id);
}

struct node_state {
  std::vector<int> label;
  std::vector<int> positions;
  std::vector<int> clique;
  bitset candidates;  // pristine set of the node
};

// Child subtree root at loop position pos of the node's colouring.  Every
// higher position is branched on (and removed) before a lower one runs, so
// the child's candidate set is (P \ higher positions) n N(v).
node_state make_child(const graph& g, const node_state& node,
                      const coloured_candidates& cc, int pos, int exec) {
  node_state child;
  child.label = node.label;
  child.label.push_back(exec);
  child.positions = node.positions;
  child.positions.push_back(pos);
  child.clique = node.clique;
  int v = cc.vertices[pos];
  child.clique.push_back(v);
  child.candidates = node.candidates;
  for (int j = pos + 1; j < cc.size(); ++j) child.candidates.reset(cc.vertices[j]);
  child.candidates.intersect_with(g.adj[v]);
  return child;
}

work_item to_item(node_state&& node, int bound) {
  return work_item{node_label{std::move(node.label)}, std::move(node.positions),
                   std::move(node.clique), std::move(node.candidates), bound};
}

struct enumerator {
  const graph& g;
  shared_incumbent& inc;
  int split_depth;
  const std::function<bool(work_item&&)>& sink;
  clock::time_point t0;
  const std::atomic<bool>* cancel;
  greedy_colourer colourer;
  std::uint64_t nodes = 0;
  bool aborted = false;

  bool walk(node_state& node) {
    ++nodes;
    if (cancel && cancel->load(std::memory_order_relaxed)) return false;
    coloured_candidates cc;
    colourer.colour(g, node.candidates, cc);
    int depth = static_cast<int>(node.clique.size());
    int exec = 0;
    for (int i = cc.size() - 1; i >= 0; --i) {
      if (depth + cc.bounds[i] <= inc.size()) break;
      ++exec;
      node_state child = make_child(g, node, cc, i, exec);
      // leaves travel through the queue too, so a single consumer replays
      // the sequential incumbent order exactly
      if (child.candidates.empty() || depth + 1 == split_depth) {
        if (!sink(to_item(std::move(child), depth + cc.bounds[i]))) return false;
      } else {
        if (!walk(child)) return false;
      }
      node.candidates.reset(cc.vertices[i]);
    }
    return true;
  }
};

}  // namespace

std::uint64_t enumerate_split(const graph& g, int d, shared_incumbent& inc,
                              const std::function<bool(work_item&&)>& sink,
                              clock::time_point t0, const std::atomic<bool>* cancel) {
  if (d < 1) throw std::invalid_argument("splitting distance must be >= 1");
  enumerator e{g, inc, d, sink, t0, cancel, greedy_colourer(g.n)};
  node_state root;
  root.candidates = bitset(g.n);
  root.candidates.fill();
  e.walk(root);
  return e.nodes;
}

std::vector<work_item> enumerate_split(const graph& g, int d, shared_incumbent& inc) {
  std::vector<work_item> items;
  enumerate_split(
      g, d, inc,
      [&](work_item&& item) {
        items.push_back(std::move(item));
        return true;
      },
      clock::now());
  return items;
}

// ---------------------------------------------------------- steal board ----

struct steal_board::entry {
  struct board_observer : split_observer {
    entry* e = nullptr;
    bool on_branch(int depth, int loop_pos, int exec_count) override {
      std::lock_guard<std::mutex> lk(e->m);
      if (depth >= static_cast<int>(e->flag.size())) return true;
      if (e->flag[depth]) return false;
      e->pos[depth] = loop_pos;
      e->exec[depth] = exec_count;
      return true;
    }
    void on_level_done(int depth) override {
      std::lock_guard<std::mutex> lk(e->m);
      if (depth < static_cast<int>(e->pos.size())) e->pos[depth] = -1;
    }
  };

  std::mutex m;
  bool active = false;
  work_item item;
  std::vector<int> pos, exec;
  std::vector<char> flag;
  board_observer observer;

  explicit entry(int max_depth)
      : pos(max_depth + 1, -1), exec(max_depth + 1, 0), flag(max_depth + 1, 0) {
    observer.e = this;
  }
};

steal_board::~steal_board() = default;

steal_board::steal_board(const graph& g, int workers, int max_depth)
    : g_(&g), max_depth_(max_depth) {
  entries_.reserve(workers);
  for (int w = 0; w < workers; ++w)
    entries_.push_back(std::make_unique<entry>(max_depth));
}

void steal_board::begin_item(int worker, const work_item& item) {
  entry& e = *entries_[worker];
  std::lock_guard<std::mutex> lk(e.m);
  e.active = true;
  e.item = item;
  std::fill(e.pos.begin(), e.pos.end(), -1);
  std::fill(e.exec.begin(), e.exec.end(), 0);
  std::fill(e.flag.begin(), e.flag.end(), 0);
}

void steal_board::end_item(int worker) {
  entry& e = *entries_[worker];
  std::lock_guard<std::mutex> lk(e.m);
  e.active = false;
}

split_observer& steal_board::observer(int worker) {
  return entries_[worker]->observer;
}

std::vector<work_item> steal_board::steal_unstarted(int victim, int depth,
                                                    shared_incumbent& inc,
                                                    clock::time_point t0) {
  entry& e = *entries_[victim];
  std::lock_guard<std::mutex> lk(e.m);
  std::vector<work_item> out;
  if (!e.active || depth < 2 || depth > max_depth_) return out;
  if (e.flag[depth]) return out;
  if (e.pos[depth] < 0) return out;
  int item_depth = static_cast<int>(e.item.clique.size());
  if (depth <= item_depth) return out;

  // rebuild the victim's node whose branches live at `depth`
  node_state node{e.item.label.path, e.item.positions, e.item.clique,
                  e.item.candidates};
  coloured_candidates cc;
  for (int lvl = item_depth + 1; lvl < depth; ++lvl) {
    if (e.pos[lvl] < 0) return out;
    cc = colour_order(*g_, node.candidates);
    node = make_child(*g_, node, cc, e.pos[lvl], e.exec[lvl] + 1);
  }
  cc = colour_order(*g_, node.candidates);

  e.flag[depth] = 1;
  int parent_size = static_cast<int>(node.clique.size());
  int k = 0;
  for (int p = e.pos[depth] - 1; p >= 0; --p) {
    if (parent_size + cc.bounds[p] <= inc.size()) break;
    ++k;
    node_state child = make_child(*g_, node, cc, p, e.exec[depth] + 1 + k);
    out.push_back(to_item(std::move(child), parent_size + cc.bounds[p]));
  }
  return out;
}

// -------------------------------------------------------------- engines ----

namespace {

struct worker_clock {
  clock::time_point first{};
  clock::time_point last{};
  bool started = false;

  void mark_start(clock::time_point now) {
    if (!started) {
      first = now;
      started = true;
    }
  }
  void mark_end(clock::time_point now) { last = now; }
  double ms() const {
    if (!started) return 0.0;
    return std::chrono::duration<double, std::milli>(last - first).count();
  }
};

parallel_result assemble(const shared_incumbent& inc, parallel_stats&& stats,
                         clock::time_point t0) {
  parallel_result result;
  result.best = inc.best();
  result.best.size = std::max(result.best.size, 0);
  stats.total_nodes = stats.producer_nodes;
  for (auto n : stats.nodes_per_thread) stats.total_nodes += n;
  stats.incumbent_timeline = inc.timeline();
  stats.wall_ms =
      std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  result.stats = std::move(stats);
  return result;
}

parallel_result run_static(const graph& g, int workers, int depth,
                           const std::atomic<bool>* cancel) {
  auto t0 = clock::now();
  shared_incumbent inc(0);
  work_queue queue(static_cast<std::size_t>(workers) * 4);
  parallel_stats stats;
  stats.per_thread_ms.resize(workers, 0.0);
  stats.nodes_per_thread.resize(workers, 0);
  std::vector<worker_clock> clocks(workers);
  std::atomic<bool> incomplete{false};

  std::thread producer([&] {
    stats.producer_nodes = enumerate_split(
        g, depth, inc,
        [&](work_item&& item) { return queue.push_producer(std::move(item)); }, t0,
        cancel);
    queue.close();
  });

  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      searcher s(g, inc, t0, w + 1, cancel);
      work_item item;
      while (queue.pop(item)) {
        clocks[w].mark_start(clock::now());
        if (item.bound > inc.size()) {
          if (item.candidates.empty())
            offer_clique(g, inc, item.clique, item.label.path, item.positions,
                         s.nodes(), t0, w + 1);
          else
            s.run_from(item.clique, item.candidates, item.label, item.positions);
        }
        clocks[w].mark_end(clock::now());
        if (s.cancelled()) {
          incomplete = true;
          queue.close();
          break;
        }
      }
      stats.nodes_per_thread[w] = s.nodes();
    });

  producer.join();
  for (auto& t : threads) t.join();
  for (int w = 0; w < workers; ++w) stats.per_thread_ms[w] = clocks[w].ms();
  stats.queue_high_water = queue.high_water();
  stats.complete = !incomplete && !(cancel && cancel->load());
  return assemble(inc, std::move(stats), t0);
}

parallel_result run_resplit(const graph& g, int workers, int max_depth,
                            const std::atomic<bool>* cancel) {
  auto t0 = clock::now();
  shared_incumbent inc(0);
  work_queue queue(static_cast<std::size_t>(workers) * 4,
                   static_cast<std::size_t>(workers) * std::max(g.n, 4));
  steal_board board(g, workers, max_depth);
  parallel_stats stats;
  stats.per_thread_ms.resize(workers, 0.0);
  stats.nodes_per_thread.resize(workers, 0);
  std::vector<worker_clock> clocks(workers);
  std::atomic<bool> incomplete{false};
  std::atomic<long> outstanding{0};
  std::atomic<bool> producer_active{true};
  std::atomic_flag steal_token = ATOMIC_FLAG_INIT;

  std::thread producer([&] {
    stats.producer_nodes = enumerate_split(
        g, 1, inc,
        [&](work_item&& item) {
          outstanding.fetch_add(1, std::memory_order_relaxed);
          if (!queue.push_producer(std::move(item))) {
            outstanding.fetch_sub(1, std::memory_order_relaxed);
            return false;
          }
          return true;
        },
        t0, cancel);
    producer_active = false;
  });

  auto process = [&](int w, searcher& s, work_item& item) {
    clocks[w].mark_start(clock::now());
    if (item.bound > inc.size()) {
      if (item.candidates.empty()) {
        offer_clique(g, inc, item.clique, item.label.path, item.positions,
                     s.nodes(), t0, w + 1);
      } else {
        board.begin_item(w, item);
        s.run_from(item.clique, item.candidates, item.label, item.positions);
        board.end_item(w);
      }
    }
    outstanding.fetch_sub(1, std::memory_order_relaxed);
    clocks[w].mark_end(clock::now());
  };

  // Serialized sweep: all victims at distance 2, then, only if that found
  // nothing unstarted anywhere, at distance 3 (and deeper if configured).
  auto sweep = [&](int self) {
    int taken = 0;
    for (int depth = 2; depth <= max_depth && taken == 0; ++depth)
      for (int victim = 0; victim < workers; ++victim) {
        if (victim == self) continue;
        for (auto& item : board.steal_unstarted(victim, depth, inc, t0)) {
          outstanding.fetch_add(1, std::memory_order_relaxed);
          queue.push_stolen(std::move(item));
          ++taken;
        }
      }
    return taken;
  };

  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      searcher s(g, inc, t0, w + 1, cancel, &board.observer(w), max_depth);
      work_item item;
      while (true) {
        if (cancel && cancel->load(std::memory_order_relaxed)) {
          incomplete = true;
          queue.close();
          break;
        }
        if (queue.try_pop(item)) {
          process(w, s, item);
          continue;
        }
        if (!steal_token.test_and_set(std::memory_order_acquire)) {
          int taken = sweep(w);
          steal_token.clear(std::memory_order_release);
          if (taken > 0) continue;
        }
        if (!producer_active.load() && outstanding.load() == 0) break;
        if (queue.pop_wait(item, std::chrono::milliseconds(1))) process(w, s, item);
      }
      stats.nodes_per_thread[w] = s.nodes();
    });

  producer.join();
  for (auto& t : threads) t.join();
  for (int w = 0; w < workers; ++w) stats.per_thread_ms[w] = clocks[w].ms();
  stats.queue_high_water = queue.high_water();
  if (stats.queue_high_water > static_cast<std::size_t>(workers) * std::max(g.n, 4))
    throw std::logic_error("resplit queue exceeded w*|V| bound");
  stats.complete = !incomplete && !(cancel && cancel->load());
  return assemble(inc, std::move(stats), t0);
}

// Cilk-style emulation: per-worker deques of loop continuations, owner works
// LIFO, idle workers steal the oldest entry of a random victim.  Splitting
// stops below depth 3.
struct rs_task {
  node_state node;
  int resume_pos = -1;  // next loop position to try; <0 means fresh node
  int exec = 0;
  bool fresh = true;
};

struct rs_deque {
  std::mutex m;
  std::deque<rs_task> q;
};

parallel_result run_random_steal(const graph& g, int workers, std::uint64_t seed,
                                 const std::atomic<bool>* cancel) {
  constexpr int kSplitFloor = 3;  // never split at or below this depth
  auto t0 = clock::now();
  shared_incumbent inc(0);
  parallel_stats stats;
  stats.per_thread_ms.resize(workers, 0.0);
  stats.nodes_per_thread.resize(workers, 0);
  std::vector<worker_clock> clocks(workers);
  std::vector<rs_deque> deques(workers);
  std::atomic<long> outstanding{1};
  std::atomic<long> queued{0};
  std::atomic<long> queued_high{0};
  std::atomic<bool> done{false};

  {
    rs_task root;
    root.node.candidates = bitset(g.n);
    root.node.candidates.fill();
    deques[0].q.push_back(std::move(root));
    queued = 1;
    queued_high = 1;
  }

  auto push_own = [&](int w, rs_task&& task) {
    std::lock_guard<std::mutex> lk(deques[w].m);
    deques[w].q.push_back(std::move(task));
    long now = queued.fetch_add(1, std::memory_order_relaxed) + 1;
    long high = queued_high.load(std::memory_order_relaxed);
    while (now > high && !queued_high.compare_exchange_weak(high, now)) {
    }
  };
  auto pop_own = [&](int w, rs_task& out) {
    std::lock_guard<std::mutex> lk(deques[w].m);
    if (deques[w].q.empty()) return false;
    out = std::move(deques[w].q.back());
    deques[w].q.pop_back();
    queued.fetch_sub(1, std::memory_order_relaxed);
    return true;
  };
  auto steal_from = [&](int victim, rs_task& out) {
    std::lock_guard<std::mutex> lk(deques[victim].m);
    if (deques[victim].q.empty()) return false;
    out = std::move(deques[victim].q.front());
    deques[victim].q.pop_front();
    queued.fetch_sub(1, std::memory_order_relaxed);
    return true;
  };

  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + w);
      searcher deep(g, inc, t0, w + 1, cancel);
      greedy_colourer colourer(g.n);
      std::uint64_t shallow_nodes = 0;

      auto run_chain = [&](rs_task task) {
        for (;;) {
          node_state& node = task.node;
          int depth = static_cast<int>(node.clique.size());
          coloured_candidates cc;
          colourer.colour(g, node.candidates, cc);
          if (task.fresh) ++shallow_nodes;
          int i = task.fresh ? cc.size() - 1 : task.resume_pos;
          int exec = task.exec;
          bool descended = false;
          for (; i >= 0; --i) {
            if (cancel && cancel->load(std::memory_order_relaxed)) {
              done = true;
              break;
            }
            if (depth + cc.bounds[i] <= inc.size()) break;
            ++exec;
            node_state child = make_child(g, node, cc, i, exec);
            if (child.candidates.empty()) {
              offer_clique(g, inc, child.clique, child.label, child.positions,
                           shallow_nodes + deep.nodes(), t0, w + 1);
            } else if (depth + 1 >= kSplitFloor) {
              deep.run_from(child.clique, child.candidates,
                            node_label{child.label}, child.positions);
            } else {
              if (i > 0) {
                rs_task rest;
                rest.node = node;  // pristine set; higher positions are
                                   // re-removed from it on resumption
                rest.resume_pos = i - 1;
                rest.exec = exec;
                rest.fresh = false;
                outstanding.fetch_add(1, std::memory_order_relaxed);
                push_own(w, std::move(rest));
              }
              rs_task next;
              next.node = std::move(child);
              task = std::move(next);
              descended = true;
              break;
            }
            node.candidates.reset(cc.vertices[i]);
          }
          if (descended) continue;
          outstanding.fetch_sub(1, std::memory_order_relaxed);
          rs_task popped;
          if (pop_own(w, popped)) {
            task = std::move(popped);
            continue;
          }
          return;
        }
      };

      while (!done.load(std::memory_order_relaxed)) {
        rs_task task;
        bool got = pop_own(w, task);
        if (!got) {
          for (int attempt = 0; attempt < 2 * workers && !got; ++attempt) {
            int victim = static_cast<int>(rng() % workers);
            if (victim != w) got = steal_from(victim, task);
          }
          for (int victim = 0; victim < workers && !got; ++victim)
            if (victim != w) got = steal_from(victim, task);
        }
        if (!got) {
          if (outstanding.load(std::memory_order_relaxed) == 0) {
            done = true;
            break;
          }
          std::this_thread::yield();
          continue;
        }
        clocks[w].mark_start(clock::now());
        run_chain(std::move(task));
        clocks[w].mark_end(clock::now());
      }
      stats.nodes_per_thread[w] = shallow_nodes + deep.nodes();
    });

  for (auto& t : threads) t.join();
  for (int w = 0; w < workers; ++w) stats.per_thread_ms[w] = clocks[w].ms();
  stats.queue_high_water = static_cast<std::size_t>(queued_high.load());
  stats.complete = !(cancel && cancel->load());
  return assemble(inc, std::move(stats), t0);
}

}  // namespace

parallel_result solve_parallel(const graph& g, int workers,
                               const split_strategy& strategy,
                               const std::atomic<bool>* cancel) {
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  switch (strategy.kind) {
    case split_kind::sequential: {
      if (workers != 1)
        throw std::invalid_argument("sequential strategy requires workers == 1");
      search_result seq = max_clique(g, 0, cancel);
      parallel_result result;
      result.best = seq.best;
      result.stats.per_thread_ms = {seq.stats.wall_ms};
      result.stats.nodes_per_thread = {seq.stats.nodes};
      result.stats.total_nodes = seq.stats.nodes;
      result.stats.incumbent_timeline = seq.stats.incumbent_timeline;
      result.stats.wall_ms = seq.stats.wall_ms;
      result.stats.complete = seq.stats.complete;
      return result;
    }
    case split_kind::static_depth:
      if (strategy.depth < 1) throw std::invalid_argument("splitting distance < 1");
      return run_static(g, workers, strategy.depth, cancel);
    case split_kind::resplit:
      if (strategy.max_depth < 1) throw std::invalid_argument("max_depth < 1");
      return run_resplit(g, workers, strategy.max_depth, cancel);
    case split_kind::random_steal:
      return run_random_steal(g, workers, strategy.seed, cancel);
  }
  throw std::invalid_argument("unknown strategy");
}

}  // namespace cliquebb
