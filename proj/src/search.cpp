#include "cliquebb/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace cliquebb {

bool shared_incumbent::offer(std::vector<int> members, node_label label,
                             std::vector<int> positions, std::uint64_t nodes_at,
                             double ms_at, int thread_id) {
  int new_size = static_cast<int>(members.size());
  if (new_size <= size()) return false;
  std::lock_guard<std::mutex> lock(m_);
  if (new_size <= size_.load(std::memory_order_relaxed)) return false;
  best_.size = new_size;
  best_.members = std::move(members);
  best_.found_at_label = std::move(label);
  best_.found_at_nodes = nodes_at;
  best_.found_at_ms = ms_at;
  best_.thread_id = thread_id;
  best_positions_ = std::move(positions);
  timeline_.push_back(best_);
  size_.store(new_size, std::memory_order_release);
  return true;
}

incumbent shared_incumbent::best() const {
  std::lock_guard<std::mutex> lock(m_);
  return best_;
}

std::vector<int> shared_incumbent::best_positions() const {
  std::lock_guard<std::mutex> lock(m_);
  return best_positions_;
}

std::vector<incumbent> shared_incumbent::timeline() const {
  std::lock_guard<std::mutex> lock(m_);
  return timeline_;
}

searcher::searcher(const graph& g, shared_incumbent& inc,
                   std::chrono::steady_clock::time_point t0, int thread_id,
                   const std::atomic<bool>* cancel, split_observer* observer,
                   int observed_depth)
    : g_(&g),
      inc_(&inc),
      t0_(t0),
      thread_id_(thread_id),
      cancel_(cancel),
      observer_(observer),
      observed_depth_(observed_depth),
      colourer_(g.n),
      levels_(g.n + 1) {
  for (auto& lv : levels_) lv.candidates = bitset(g.n);
  clique_.reserve(g.n);
  labels_.reserve(g.n);
  positions_.reserve(g.n);
}

void searcher::run_root() {
  clique_.clear();
  labels_.clear();
  positions_.clear();
  levels_[0].candidates.fill();
  expand(0);
}

void searcher::run_from(const std::vector<int>& clique, const bitset& candidates,
                        const node_label& label, const std::vector<int>& positions) {
  clique_ = clique;
  labels_ = label.path;
  positions_ = positions;
  int depth = static_cast<int>(clique_.size());
  levels_[depth].candidates = candidates;
  expand(depth);
}

void searcher::offer_current() {
  int new_size = static_cast<int>(clique_.size());
  if (new_size <= inc_->size()) return;
  std::vector<int> members;
  members.reserve(clique_.size());
  for (int v : clique_) members.push_back(g_->names[v]);
  std::sort(members.begin(), members.end());
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0_)
                  .count();
  inc_->offer(std::move(members), node_label{labels_}, positions_, nodes_, ms,
              thread_id_);
}

bool searcher::expand(int depth) {
  ++nodes_;
  if (cancel_ && cancel_->load(std::memory_order_relaxed)) {
    cancelled_ = true;
    return false;
  }
  level& lv = levels_[depth];
  colourer_.colour(*g_, lv.candidates, lv.coloured);
  const int branch_depth = depth + 1;
  const bool observed = observer_ && branch_depth <= observed_depth_;
  int exec = 0;
  for (int i = lv.coloured.size() - 1; i >= 0; --i) {
    if (observed && !observer_->on_branch(branch_depth, i, exec)) break;
    // bounds are non-decreasing along the sequence and the incumbent only
    // grows, so once this fails nothing further can pass
    if (depth + lv.coloured.bounds[i] <= inc_->size()) break;
    int v = lv.coloured.vertices[i];
    ++exec;
    clique_.push_back(v);
    labels_.push_back(exec);
    positions_.push_back(i);
    level& next = levels_[depth + 1];
    bitset::intersect(lv.candidates, g_->adj[v], next.candidates);
    if (next.candidates.empty()) {
      offer_current();
    } else if (!expand(depth + 1)) {
      return false;
    }
    clique_.pop_back();
    labels_.pop_back();
    positions_.pop_back();
    lv.candidates.reset(v);
  }
  if (observed) observer_->on_level_done(branch_depth);
  return true;
}

search_result max_clique(const graph& g, int initial_bound,
                         const std::atomic<bool>* cancel) {
  if (initial_bound < 0) throw std::invalid_argument("initial_bound must be >= 0");
  auto t0 = std::chrono::steady_clock::now();
  shared_incumbent inc(initial_bound);
  searcher s(g, inc, t0, 0, cancel);
  s.run_root();
  search_result result;
  result.best = inc.best();
  result.stats.nodes = s.nodes();
  result.stats.incumbent_timeline = inc.timeline();
  result.stats.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
  result.stats.complete = !s.cancelled();
  return result;
}

namespace {

int brute_extend(const graph& g, const bitset& candidates, int have) {
  int best = have;
  candidates.for_each([&](int v) {
    bitset next = candidates;
    next.intersect_with(g.adj[v]);
    // only extend with higher-numbered vertices so each clique is counted once
    for (int u = 0; u <= v; ++u) next.reset(u);
    best = std::max(best, brute_extend(g, next, have + 1));
  });
  return best;
}

}  // namespace

int brute_force_omega(const graph& g) {
  if (g.n > 24) throw std::invalid_argument("brute_force_omega refuses n > 24");
  bitset all(g.n);
  all.fill();
  return brute_extend(g, all, 0);
}

std::vector<int> replay_positions(const graph& g, const std::vector<int>& positions) {
  bitset candidates(g.n);
  candidates.fill();
  std::vector<int> clique;
  for (int pos : positions) {
    coloured_candidates cc = colour_order(g, candidates);
    if (pos < 0 || pos >= cc.size())
      throw std::out_of_range("replay position out of range");
    int v = cc.vertices[pos];
    clique.push_back(v);
    // by the time a position runs, every higher position has already been
    // branched on and removed from the candidate set
    for (int j = pos + 1; j < cc.size(); ++j) candidates.reset(cc.vertices[j]);
    candidates.intersect_with(g.adj[v]);
  }
  return clique;
}

}  // namespace cliquebb
