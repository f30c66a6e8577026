#include "cliquebb/instrument.hpp"

#include <algorithm>

namespace cliquebb {

instance_analysis analyze_instance(const graph& g, std::string name,
                                   const std::atomic<bool>* cancel) {
  instance_analysis out;
  out.instance = std::move(name);

  search_result plain = max_clique(g, 0, cancel);
  out.omega = plain.best.size;
  out.total_nodes = plain.stats.nodes;
  out.location = plain.best.found_at_label;
  out.complete = plain.stats.complete;
  if (!out.complete) return out;

  search_result primed = max_clique(g, out.omega, cancel);
  out.prove_nodes = primed.stats.nodes;
  out.complete = primed.stats.complete;
  if (out.total_nodes > 0)
    out.avoid_fraction =
        static_cast<double>(out.total_nodes - out.prove_nodes) / out.total_nodes;
  return out;
}

namespace {

std::string render(const node_label& label, const char* sep) {
  std::string out;
  std::size_t i = 0;
  while (i < label.path.size()) {
    std::size_t j = i;
    while (j + 1 < label.path.size() && label.path[j + 1] == label.path[i]) ++j;
    if (!out.empty()) out += sep;
    out += std::to_string(label.path[i]);
    if (j > i) out += "×" + std::to_string(j - i + 1);
    i = j + 1;
  }
  return out;
}

}  // namespace

std::string render_label(const node_label& label) { return render(label, ", "); }

std::string render_label_compact(const node_label& label) {
  return render(label, " ");
}

balance_report make_balance_report(const parallel_stats& stats,
                                   double sequential_wall_ms) {
  balance_report report;
  report.per_thread_ms = stats.per_thread_ms;
  if (!report.per_thread_ms.empty()) {
    auto [lo, hi] =
        std::minmax_element(report.per_thread_ms.begin(), report.per_thread_ms.end());
    report.min_ms = *lo;
    report.max_ms = *hi;
  }
  if (stats.wall_ms > 0.0) report.speedup = sequential_wall_ms / stats.wall_ms;
  return report;
}

}  // namespace cliquebb
