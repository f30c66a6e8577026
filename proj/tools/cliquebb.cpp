#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cliquebb/instances.hpp"
#include "cliquebb/instrument.hpp"
#include "cliquebb/parallel.hpp"

namespace cb = cliquebb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitBadArgs = 4;

struct exit_error {
  int code;
  std::string message;
};

struct loaded {
  cb::graph g;  // degree-permuted, ready to solve
  std::string name;
};

bool parse_random_spec(const std::string& spec, int& n, double& p,
                       std::uint64_t& seed) {
  char comma1 = 0, comma2 = 0;
  std::istringstream in(spec);
  if (!(in >> n >> comma1 >> p >> comma2 >> seed) || comma1 != ',' || comma2 != ',')
    return false;
  in >> std::ws;
  return in.eof() && n > 0 && p >= 0.0 && p <= 1.0;
}

std::string base_name(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return name;
}

// Instance sources, in precedence order: --random spec, generated family
// name, file path.
loaded load_instance(const std::string& input, const std::string& random_spec) {
  cb::graph raw;
  std::string name;
  if (!random_spec.empty()) {
    int n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    if (!parse_random_spec(random_spec, n, p, seed))
      throw exit_error{kExitBadArgs,
                       "bad --random spec '" + random_spec + "', want n,p,seed"};
    raw = cb::random_graph(n, p, seed);
    name = "random-" + std::to_string(n) + "-" + std::to_string(p) + "-" +
           std::to_string(seed);
  } else if (input.empty()) {
    throw exit_error{kExitBadArgs, "no instance given: pass a file or --random"};
  } else if (auto generated = cb::named_instance(input)) {
    raw = std::move(*generated);
    name = input;
  } else {
    try {
      raw = cb::parse_dimacs_file(input);
    } catch (const cb::parse_error& e) {
      throw exit_error{kExitParse, input + ": " + e.what()};
    } catch (const std::exception& e) {
      throw exit_error{kExitParse, input + ": " + e.what()};
    }
    name = base_name(input);
  }
  auto [permuted, perm] = cb::degree_permute(raw);
  return {std::move(permuted), std::move(name)};
}

// Runs fn with a watchdog that flips the cancel flag after timeout_s seconds.
template <typename F>
auto with_timeout(double timeout_s, F&& fn) {
  std::atomic<bool> cancel{false};
  std::atomic<bool> finished{false};
  std::thread watchdog;
  if (timeout_s > 0)
    watchdog = std::thread([&] {
      auto deadline =
          std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_s);
      while (!finished.load()) {
        if (std::chrono::steady_clock::now() >= deadline) {
          cancel.store(true);
          return;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
      }
    });
  auto result = fn(&cancel);
  finished.store(true);
  if (watchdog.joinable()) watchdog.join();
  return result;
}

std::string join_members(const std::vector<int>& members) {
  std::string out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(members[i]);
  }
  return out;
}

int cmd_solve(const std::string& input, const std::string& random_spec, int threads,
              const std::string& split, int prime, double timeout_s,
              std::uint64_t seed) {
  auto strategy = cb::split_strategy::parse(split, seed);
  if (!strategy)
    throw exit_error{kExitBadArgs, "unknown --split '" + split + "'"};
  if (threads < 1) throw exit_error{kExitBadArgs, "--threads must be >= 1"};
  if (prime < 0) throw exit_error{kExitBadArgs, "--prime must be >= 0"};
  if (prime > 0 && strategy->kind != cb::split_kind::sequential)
    throw exit_error{kExitBadArgs, "--prime only applies to --split seq"};
  if (strategy->kind == cb::split_kind::sequential && threads != 1)
    throw exit_error{kExitBadArgs,
                     "--split seq runs one thread; drop --threads " +
                         std::to_string(threads)};

  loaded inst = load_instance(input, random_spec);

  if (strategy->kind == cb::split_kind::sequential) {
    auto result = with_timeout(timeout_s, [&](const std::atomic<bool>* cancel) {
      return cb::max_clique(inst.g, prime, cancel);
    });
    if (!result.stats.complete)
      throw exit_error{kExitTimeout, inst.name + ": timed out after " +
                                         std::to_string(timeout_s) + "s"};
    std::cout << "instance=" << inst.name << "\n";
    std::cout << "omega=" << result.best.size
              << " clique=" << join_members(result.best.members) << "\n";
    std::cout << "nodes=" << result.stats.nodes << " wall_ms=" << result.stats.wall_ms
              << "\n";
    if (result.best.size > 0)
      std::cout << "location=" << cb::render_label(result.best.found_at_label)
                << "\n";
    return kExitOk;
  }

  auto result = with_timeout(timeout_s, [&](const std::atomic<bool>* cancel) {
    return cb::solve_parallel(inst.g, threads, *strategy, cancel);
  });
  if (!result.stats.complete)
    throw exit_error{kExitTimeout, inst.name + ": timed out after " +
                                       std::to_string(timeout_s) + "s"};
  std::cout << "instance=" << inst.name << " strategy=" << strategy->name()
            << " workers=" << threads << "\n";
  std::cout << "omega=" << result.best.size
            << " clique=" << join_members(result.best.members) << "\n";
  std::cout << "nodes=" << result.stats.total_nodes
            << " wall_ms=" << result.stats.wall_ms
            << " queue_high_water=" << result.stats.queue_high_water << "\n";
  for (std::size_t w = 0; w < result.stats.per_thread_ms.size(); ++w)
    std::cout << "thread " << w + 1 << ": nodes=" << result.stats.nodes_per_thread[w]
              << " busy_ms=" << result.stats.per_thread_ms[w] << "\n";
  if (result.best.size > 0)
    std::cout << "location=" << cb::render_label(result.best.found_at_label) << "\n";
  return kExitOk;
}

int cmd_analyze(const std::string& input, const std::string& random_spec,
                double timeout_s) {
  loaded inst = load_instance(input, random_spec);
  auto analysis = with_timeout(timeout_s, [&](const std::atomic<bool>* cancel) {
    return cb::analyze_instance(inst.g, inst.name, cancel);
  });
  if (!analysis.complete)
    throw exit_error{kExitTimeout, inst.name + ": timed out after " +
                                       std::to_string(timeout_s) + "s"};
  char avoid[32];
  std::snprintf(avoid, sizeof avoid, "%.1f", 100.0 * analysis.avoid_fraction);
  std::cout << "instance,omega,total,prove,avoid_pct,location\n";
  std::cout << analysis.instance << "," << analysis.omega << ","
            << analysis.total_nodes << "," << analysis.prove_nodes << "," << avoid
            << "," << cb::render_label_compact(analysis.location) << "\n";
  return kExitOk;
}

double mean_of(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / xs.size();
}

double sd_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean_of(xs);
  double s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / (xs.size() - 1));
}

int cmd_bench(const std::vector<std::string>& instances,
              const std::vector<std::string>& strategies,
              const std::vector<int>& workers_list, int repeats,
              const std::string& out_path, const std::string& plot_path,
              double timeout_s, std::uint64_t seed) {
  if (repeats < 1) throw exit_error{kExitBadArgs, "--repeats must be >= 1"};
  std::vector<cb::split_strategy> parsed;
  for (const auto& s : strategies) {
    auto strat = cb::split_strategy::parse(s, seed);
    if (!strat) throw exit_error{kExitBadArgs, "unknown strategy '" + s + "'"};
    parsed.push_back(*strat);
  }
  for (int w : workers_list)
    if (w < 1) throw exit_error{kExitBadArgs, "worker counts must be >= 1"};

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw exit_error{kExitBadArgs, "cannot write " + out_path};
    out = &file;
  }
  *out << "instance,strategy,workers,run,wall_ms,total_nodes,omega,speedup,"
          "min_thread_ms,max_thread_ms,status\n";

  for (const auto& spec : instances) {
    loaded inst;
    try {
      if (spec.rfind("random:", 0) == 0)
        inst = load_instance("", spec.substr(7));
      else
        inst = load_instance(spec, "");
    } catch (const exit_error& e) {
      *out << spec << ",,,,,,,,,," << "error: " << e.message << "\n";
      continue;
    }

    auto seq = with_timeout(timeout_s, [&](const std::atomic<bool>* cancel) {
      return cb::max_clique(inst.g, 0, cancel);
    });
    if (!seq.stats.complete) {
      *out << inst.name << ",,,,,,,,,,error: sequential baseline timed out\n";
      continue;
    }
    double seq_wall = seq.stats.wall_ms;
    int omega = seq.best.size;

    for (const auto& strat : parsed)
      for (int workers : workers_list) {
        if (strat.kind == cb::split_kind::sequential && workers != 1) continue;
        std::vector<double> walls, speedups, nodes;
        for (int run = 1; run <= repeats; ++run) {
          std::string status = "ok";
          double wall = 0, speedup = 0, min_ms = 0, max_ms = 0;
          std::uint64_t total = 0;
          try {
            auto result =
                with_timeout(timeout_s, [&](const std::atomic<bool>* cancel) {
                  return cb::solve_parallel(inst.g, workers, strat, cancel);
                });
            if (!result.stats.complete) {
              status = "timeout";
            } else if (result.best.size != omega) {
              status = "wrong-omega";
            }
            wall = result.stats.wall_ms;
            total = result.stats.total_nodes;
            auto balance = cb::make_balance_report(result.stats, seq_wall);
            speedup = balance.speedup;
            min_ms = balance.min_ms;
            max_ms = balance.max_ms;
          } catch (const std::exception& e) {
            status = std::string("error: ") + e.what();
          }
          char row[256];
          std::snprintf(row, sizeof row, "%.3f,%llu,%d,%.3f,%.3f,%.3f", wall,
                        static_cast<unsigned long long>(total), omega, speedup,
                        min_ms, max_ms);
          *out << inst.name << "," << strat.name() << "," << workers << "," << run
               << "," << row << "," << status << "\n";
          if (status == "ok") {
            walls.push_back(wall);
            speedups.push_back(speedup);
            nodes.push_back(static_cast<double>(total));
          }
        }
        if (!walls.empty()) {
          double m = mean_of(walls);
          double lo = *std::min_element(walls.begin(), walls.end());
          double hi = *std::max_element(walls.begin(), walls.end());
          char row[320];
          // range as proportions of the mean, e.g. (0.99-1.02)
          std::snprintf(row, sizeof row,
                        "%.3f,%.0f,%d,%.3f,,,mean sd=%.3f range=(%.2f-%.2f)", m,
                        mean_of(nodes), omega, mean_of(speedups), sd_of(walls),
                        m > 0 ? lo / m : 0.0, m > 0 ? hi / m : 0.0);
          *out << inst.name << "," << strat.name() << "," << workers << ",summary,"
               << row << "\n";
        }
      }
  }

  if (!plot_path.empty()) {
    std::ofstream plot(plot_path);
    if (!plot) throw exit_error{kExitBadArgs, "cannot write " + plot_path};
    plot << R"(#!/usr/bin/env python3
"""Plot speedup-vs-workers curves from a bench CSV."""
import csv, sys
from collections import defaultdict
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else ")" << (out_path.empty() ? "bench.csv" : out_path) << R"("
curves = defaultdict(dict)
with open(path) as f:
    for row in csv.DictReader(f):
        if row["run"] == "summary":
            key = (row["instance"], row["strategy"])
            curves[key][int(row["workers"])] = float(row["speedup"])
for (instance, strategy), points in sorted(curves.items()):
    xs = sorted(points)
    plt.plot(xs, [points[x] for x in xs], marker="o", label=f"{instance}/{strategy}")
plt.xlabel("workers")
plt.ylabel("speedup")
plt.legend()
plt.savefig("speedup.png", dpi=150)
print("wrote speedup.png")
)";
  }
  return kExitOk;
}

int cmd_gen(const std::string& name, const std::string& random_spec,
            const std::string& out_path) {
  cb::graph g;
  if (!random_spec.empty()) {
    int n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    if (!parse_random_spec(random_spec, n, p, seed))
      throw exit_error{kExitBadArgs,
                       "bad --random spec '" + random_spec + "', want n,p,seed"};
    g = cb::random_graph(n, p, seed);
  } else if (auto generated = cb::named_instance(name)) {
    g = std::move(*generated);
  } else {
    throw exit_error{kExitBadArgs, "unknown instance '" + name +
                                       "'; known: hamming6-2 hamming6-4 "
                                       "johnson8-2-4 johnson8-4-4, or --random"};
  }
  std::ofstream out(out_path);
  if (!out) throw exit_error{kExitBadArgs, "cannot write " + out_path};
  cb::write_dimacs(g, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact maximum-clique solver with pluggable parallel work splitting"};
  app.require_subcommand(1);

  std::string input, random_spec, split = "seq";
  int threads = 1, prime = 0;
  double timeout_s = 0;
  std::uint64_t seed = 0;

  auto* solve = app.add_subcommand("solve", "find a maximum clique");
  solve->add_option("input", input, "DIMACS file or generated instance name");
  solve->add_option("--random", random_spec, "generate G(n,p): n,p,seed");
  solve->add_option("--threads", threads, "worker count");
  solve->add_option("--split", split, "seq|dist1|dist2|dist3|resplit|steal");
  solve->add_option("--prime", prime, "start the incumbent size at b");
  solve->add_option("--timeout", timeout_s, "seconds before giving up");
  solve->add_option("--seed", seed, "victim-selection seed for --split steal");

  auto* analyze = app.add_subcommand("analyze", "search-space profile (one CSV row)");
  analyze->add_option("input", input, "DIMACS file or generated instance name");
  analyze->add_option("--random", random_spec, "generate G(n,p): n,p,seed");
  analyze->add_option("--timeout", timeout_s, "seconds before giving up");

  std::vector<std::string> instances, strategies{"dist1"};
  std::vector<int> workers_list{1, 2, 4};
  int repeats = 10;
  std::string out_path, plot_path;
  auto* bench = app.add_subcommand("bench", "speedup/balance CSV over a matrix");
  bench->add_option("instances", instances,
                    "files, generated names, or random:n,p,seed")
      ->required();
  bench->add_option("--strategies", strategies, "strategy list")->delimiter(',');
  bench->add_option("--workers", workers_list, "worker-count list")->delimiter(',');
  bench->add_option("--repeats", repeats, "runs per configuration");
  bench->add_option("--out", out_path, "CSV output path (default stdout)");
  bench->add_option("--plot-script", plot_path, "write a plotting script here");
  bench->add_option("--timeout", timeout_s, "seconds per run");
  bench->add_option("--seed", seed, "seed for the steal strategy");

  std::string gen_name, gen_out;
  auto* gen = app.add_subcommand("gen", "write an instance as a DIMACS file");
  gen->add_option("name", gen_name, "generated instance name");
  gen->add_option("--random", random_spec, "generate G(n,p): n,p,seed");
  gen->add_option("output", gen_out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadArgs;
  }

  try {
    if (solve->parsed())
      return cmd_solve(input, random_spec, threads, split, prime, timeout_s, seed);
    if (analyze->parsed()) return cmd_analyze(input, random_spec, timeout_s);
    if (bench->parsed())
      return cmd_bench(instances, strategies, workers_list, repeats, out_path,
                       plot_path, timeout_s, seed);
    if (gen->parsed()) return cmd_gen(gen_name, random_spec, gen_out);
  } catch (const exit_error& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }
  return kExitBadArgs;
}
