#pragma once

#include <string>

#include "cliquebb/parallel.hpp"
#include "cliquebb/search.hpp"

namespace cliquebb {

// Sequential search-space profile of one instance: how big the tree is, how
// much of it is the optimality proof, and where the winning clique sits.
struct instance_analysis {
  std::string instance;
  int omega = 0;
  std::uint64_t total_nodes = 0;  // plain run, incumbent from 0
  std::uint64_t prove_nodes = 0;  // run primed with omega
  double avoid_fraction = 0.0;    // (total - prove) / total, in [0, 1]
  node_label location;            // branch path of the final incumbent
  std::vector<int> location_positions;
  bool complete = true;
};

// Two runs: incumbent from 0 for total and location, then primed at omega for
// the prove count.  The graph should already be degree-permuted.
instance_analysis analyze_instance(const graph& g, std::string name = "",
                                   const std::atomic<bool>* cancel = nullptr);

// Run-length-compressed branch path: "22, 4, 10, 6, 1×17".  Runs of length
// one stay plain.  The compact variant uses spaces, for CSV cells.
std::string render_label(const node_label& label);
std::string render_label_compact(const node_label& label);

struct balance_report {
  std::vector<double> per_thread_ms;
  double min_ms = 0.0;
  double max_ms = 0.0;
  double speedup = 0.0;  // sequential wall / parallel wall
};

// The speedup-cap identity holds by construction: the parallel wall time is
// at least the longest thread's runtime, so speedup <= seq_wall / max_ms.
balance_report make_balance_report(const parallel_stats& stats,
                                   double sequential_wall_ms);

inline const std::vector<incumbent>& incumbent_timeline(const search_stats& s) {
  return s.incumbent_timeline;
}
inline const std::vector<incumbent>& incumbent_timeline(const parallel_stats& s) {
  return s.incumbent_timeline;
}

}  // namespace cliquebb
