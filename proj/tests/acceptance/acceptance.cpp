// Acceptance run: one PASS/FAIL line per criterion.
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "m2wis/evolution.hpp"
#include "m2wis/kernelizer.hpp"
#include "m2wis/metis_io.hpp"
#include "m2wis/oracle.hpp"
#include "m2wis/solver.hpp"
#include "support/graphs.hpp"

using namespace m2wis;
using namespace m2wis::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Failures are counted, the first few are described.
class Tally {
 public:
  void check(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ < 3) notes_ += (notes_.empty() ? "" : "; ") + what();
  }
  std::size_t failures() const { return failures_; }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream os;
    os << summary << ", " << checks_ << " checks";
    if (failures_ > 0) os << ", " << failures_ << " failed: " << notes_;
    return {failures_ == 0, os.str()};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string notes_;
};

int run_cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "m2wis");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream os;
  std::ostringstream es;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), os, es);
  if (out) *out = os.str();
  return code;
}

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / ("m2wis_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

// Criterion 1 and 2 share one instance set.
struct ReductionCase {
  WeightedGraph g;
  Weight alpha = 0;
};

std::vector<ReductionCase> reduction_cases() {
  Rng rng(20240501);
  std::vector<ReductionCase> out;
  const std::array<double, 3> probs{0.1, 0.2, 0.4};
  for (int i = 0; i < 2000; ++i) {
    auto g = random_graph(rng, 4 + rng() % 13, probs[i % 3], 1, 200);
    const Weight alpha = brute_force(g).alpha_w;
    out.push_back({std::move(g), alpha});
  }
  return out;
}

std::vector<ReductionOrdering> reduction_orderings() {
  std::vector<ReductionOrdering> out;
  for (Rule r : kAllRules) out.push_back({"only-" + std::string(rule_name(r)), {r}});
  for (const auto& name : ordering_preset_names()) out.push_back(ordering_preset(name));
  return out;
}

Outcome soundness(const std::vector<ReductionCase>& cases, bool reconstruct_check) {
  Tally t;
  const auto orderings = reduction_orderings();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    for (const auto& order : orderings) {
      const Kernel k = exact_reduce(c.g, order);
      const auto kopt = brute_force(k.graph);
      if (!reconstruct_check) {
        t.check(k.offset + kopt.alpha_w == c.alpha, [&] {
          return order.name + " on case " + std::to_string(i) + ": " + std::to_string(k.offset) +
                 "+" + std::to_string(kopt.alpha_w) + " != " + std::to_string(c.alpha);
        });
        continue;
      }
      const VertexSet full = reconstruct(k, kopt.witness);
      t.check(is_independent(c.g, full) && set_weight(c.g, full) == c.alpha, [&] {
        return order.name + " on case " + std::to_string(i) + " lifted to weight " +
               std::to_string(set_weight(c.g, full));
      });
    }
  }
  return t.outcome(std::to_string(cases.size()) + " graphs x " + std::to_string(orderings.size()) +
                   " orderings");
}

Outcome solver_optimality() {
  Rng rng(77);
  SolverConfig config;
  config.time_limit = 5.0;
  config.seed = 1;
  std::size_t optimal = 0;
  std::size_t valid = 0;
  std::size_t evolved = 0;
  const std::size_t total = 200;
  const std::array<double, 3> probs{0.15, 0.3, 0.5};
  for (std::size_t i = 0; i < total; ++i) {
    const auto g = random_graph(rng, 10 + rng() % 11, probs[i % 3]);
    const auto r = solve(g, config);
    valid += is_independent(g, r.solution) && set_weight(g, r.solution) == r.weight;
    optimal += r.weight == brute_force(g).alpha_w;
    evolved += r.rounds > 0;
  }

  std::vector<WeightedGraph> fixtures;
  auto weights = [&rng](std::size_t n) {
    std::vector<Weight> w(n);
    for (auto& x : w) x = 1 + static_cast<Weight>(rng() % 200);
    return w;
  };
  fixtures.push_back(cycle_graph({1, 1, 1, 1, 1}));
  fixtures.push_back(cycle_graph({1, 1, 1, 1, 1, 1, 1}));
  fixtures.push_back(cycle_graph(weights(5)));
  fixtures.push_back(cycle_graph(weights(7)));
  for (std::size_t n = 1; n <= 20; ++n) fixtures.push_back(path_graph(weights(n)));
  for (std::size_t leaves = 1; leaves <= 12; ++leaves) {
    fixtures.push_back(star_graph(1 + static_cast<Weight>(rng() % 200), weights(leaves)));
  }
  fixtures.push_back(star_graph(3, {2, 2}));
  std::size_t fixture_optimal = 0;
  for (const auto& g : fixtures) {
    const auto r = solve(g, config);
    fixture_optimal += is_independent(g, r.solution) && r.weight == brute_force(g).alpha_w;
  }

  std::ostringstream os;
  os << "random optimal " << optimal << "/" << total << ", valid " << valid << "/" << total
     << " (" << evolved << " needed evolution)"
     << ", fixtures optimal " << fixture_optimal << "/" << fixtures.size();
  const bool pass = optimal * 100 >= total * 95 && valid == total && fixture_optimal == fixtures.size();
  return {pass, os.str()};
}

bool omega_move_exists(const SearchState& s) {
  for (VertexId v : s.live()) {
    if (!s.in_solution(v) && s.graph().weight(v) > s.solution_neighbor_weight(v)) return true;
  }
  return false;
}

bool pair_move_exists(const SearchState& s) {
  const auto& g = s.graph();
  for (VertexId v : s.live()) {
    if (!s.in_solution(v)) continue;
    std::vector<VertexId> tight;
    g.for_each_neighbor(v, [&](VertexId u) {
      if (s.tightness(u) == 1) tight.push_back(u);
    });
    for (std::size_t i = 0; i < tight.size(); ++i) {
      for (std::size_t j = i + 1; j < tight.size(); ++j) {
        if (!g.has_edge(tight[i], tight[j]) && g.weight(tight[i]) + g.weight(tight[j]) > g.weight(v)) {
          return true;
        }
      }
    }
  }
  return false;
}

Outcome local_search_properties() {
  Tally t;
  Rng rng(4242);
  std::size_t graphs = 0;
  for (std::size_t n = 1; n <= 10; ++n) {
    for (const auto& g : connected_catalog(n, rng, 300)) {
      ++graphs;
      for (int start = 0; start < 3; ++start) {
        SearchState s(g);
        if (start == 1) maximize_greedy(s, GreedyOrder::UniformRandom, &rng);
        if (start == 2) s.force_insert(g.live_vertices()[rng() % g.live_count()]);
        // Walk the trajectory in growing slices of the iteration budget.
        Weight last = s.weight();
        for (std::size_t cap : {1u, 1u, 2u, 4u, 8u, 16u, 15000u}) {
          vnd(s, cap, rng);
          t.check(s.weight() >= last, [&] { return "weight dropped on " + describe(g); });
          last = s.weight();
        }
        s.audit();
        t.check(!omega_move_exists(s) && !pair_move_exists(s),
                [&] { return "improving move left on " + describe(g); });
      }
    }
  }
  return t.outcome(std::to_string(graphs) + " connected graphs, 3 starts each");
}

bool is_maximal(const WeightedGraph& g, const VertexSet& set) {
  std::vector<std::uint8_t> covered(g.capacity(), 0);
  for (VertexId v : set) {
    covered[v] = 1;
    g.for_each_neighbor(v, [&](VertexId u) { covered[u] = 1; });
  }
  for (VertexId v : g.live_vertices()) {
    if (!covered[v]) return false;
  }
  return true;
}

bool covers_all_edges(const WeightedGraph& g, const VertexSet& cover) {
  std::vector<std::uint8_t> in(g.capacity(), 0);
  for (VertexId v : cover) in[v] = 1;
  for (VertexId v : g.live_vertices()) {
    bool ok = true;
    g.for_each_neighbor(v, [&](VertexId u) { ok &= in[u] || in[v]; });
    if (!ok) return false;
  }
  return true;
}

Outcome combine_validity() {
  Tally t;
  Rng rng(5150);
  const char* names[] = {"vertex-separator", "multiway-vertex-separator", "edge-separator",
                         "multiway-edge-separator"};
  for (int op = 0; op < 4; ++op) {
    for (int trial = 0; trial < 500; ++trial) {
      // Random kernels: reduce a random graph and keep what is left.
      auto base = random_graph(rng, 20 + rng() % 60, std::array{0.05, 0.1, 0.2}[trial % 3]);
      WeightedGraph g = exact_reduce(base, ordering_preset("baseline")).graph;
      if (g.live_count() < 4) g = base;
      const bool separator = op < 2;
      const bool multi = op % 2 == 1;
      const auto live = static_cast<std::uint32_t>(g.live_count());
      const std::uint32_t k =
          multi ? 2 + static_cast<std::uint32_t>(rng() % std::min(live - 1, 16u)) : 2;
      const Partition part =
          separator ? vertex_separator(g, k, kDefaultEpsilon, rng) : edge_partition(g, k, kDefaultEpsilon, rng);
      std::vector<Individual> parents;
      for (std::uint32_t i = 0; i < (multi ? k : 2); ++i) {
        Individual ind = build_initial(g, kAllInitStrategies[rng() % kAllInitStrategies.size()], rng);
        parents.push_back(std::move(ind));
      }
      std::vector<const Individual*> ptrs;
      for (const auto& p : parents) ptrs.push_back(&p);
      CombineTrace trace;
      std::vector<Individual> kids;
      switch (op) {
        case 0: {
          auto [a, b] = combine_vertex_separator(g, part, parents[0], parents[1], 1000, rng, &trace);
          kids = {a, b};
          break;
        }
        case 1:
          kids = {combine_multiway_vertex_separator(g, part, ptrs, 1000, rng, &trace)};
          break;
        case 2: {
          auto [a, b] = combine_edge_separator(g, part, parents[0], parents[1], 1000, rng, &trace);
          kids = {a, b};
          break;
        }
        default:
          kids = {combine_multiway_edge_separator(g, part, ptrs, 1000, rng, &trace)};
      }
      for (const auto& kid : kids) {
        const auto members = kid.members();
        t.check(is_independent(g, members) && is_maximal(g, members) &&
                    kid.weight == set_weight(g, members),
                [&] { return std::string(names[op]) + " produced an invalid offspring"; });
      }
      if (separator) {
        t.check(trace.raw.size() == kids.size(), [&] { return std::string(names[op]) + " trace"; });
        for (const auto& raw : trace.raw) {
          t.check(is_independent(g, raw),
                  [&] { return std::string(names[op]) + " dependent before maximization"; });
        }
      } else {
        t.check(trace.covers.size() == kids.size(), [&] { return std::string(names[op]) + " trace"; });
        for (const auto& cover : trace.covers) {
          t.check(covers_all_edges(g, cover),
                  [&] { return std::string(names[op]) + " left an uncovered edge"; });
        }
      }
    }
  }
  return t.outcome("500 invocations per operator");
}

Outcome partition_contracts() {
  Tally t;
  Rng rng(6006);
  std::size_t made = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const std::size_t n = 2 + rng() % 300;
    auto g = random_graph(rng, n, (1.0 + static_cast<double>(rng() % 6)) / static_cast<double>(n));
    if (rng() % 4 == 0) g.remove_vertex(static_cast<VertexId>(rng() % n));
    const std::size_t live = g.live_count();
    if (live < 2) continue;
    const auto k = static_cast<std::uint32_t>(2 + rng() % std::min<std::size_t>(live - 1, 64));
    const double eps = std::array{0.0, 0.03, 0.1, 0.5}[rng() % 4];
    Rng local(rng());
    for (bool separator : {false, true}) {
      const Partition p = separator ? vertex_separator(g, k, eps, local) : edge_partition(g, k, eps, local);
      ++made;
      const std::size_t limit = block_limit(live, k, eps);
      const auto sizes = p.block_sizes();
      t.check(std::all_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s <= limit; }),
              [&] { return "block over the limit, n=" + std::to_string(live) + " k=" + std::to_string(k); });
      std::size_t cross = 0;
      for (VertexId v : g.live_vertices()) {
        const BlockId bv = p.block_of[v];
        t.check(bv != kNoBlock && (bv == kSeparatorBlock || bv < k), [&] { return "unlabeled vertex"; });
        g.for_each_neighbor(v, [&](VertexId u) {
          const BlockId bu = p.block_of[u];
          if (bv != bu && bv != kSeparatorBlock && bu != kSeparatorBlock) ++cross;
        });
      }
      if (separator) t.check(cross == 0, [&] { return "edge between separated blocks"; });
      else t.check(cross == 2 * p.cut_edges.size(), [&] { return "cut list out of sync"; });
    }
  }
  return t.outcome(std::to_string(made) + " partitions");
}

Outcome determinism(const fs::path& dir) {
  Tally t;
  Rng rng(707);
  for (int i = 0; i < 10; ++i) {
    const auto g = random_graph(rng, 100 + rng() % 400, (2.0 + static_cast<double>(rng() % 6)) / 300.0);
    const auto graph = (dir / ("det" + std::to_string(i) + ".graph")).string();
    write_file_atomic(graph, write_metis(g));
    std::array<std::string, 2> files;
    for (int run = 0; run < 2; ++run) {
      files[run] = (dir / ("det" + std::to_string(i) + "_" + std::to_string(run) + ".sol")).string();
      const int code = run_cli({"solve", graph, "--seed", std::to_string(11 + i), "--time-limit", "600",
                                "--population-size", "40", "--unsuccessful-limit", "100", "--quiet",
                                "--output", files[run]});
      t.check(code == 0, [&] { return "solve exited " + std::to_string(code); });
    }
    t.check(read_text_file(files[0]) == read_text_file(files[1]),
            [&] { return "instance " + std::to_string(i) + " differs between runs"; });
    t.check(run_cli({"verify", graph, files[0]}) == 0, [&] { return "verify rejected a solve output"; });
  }
  return t.outcome("10 instances, 2 runs each");
}

Outcome ordering_harness(const fs::path& dir) {
  Tally t;
  Rng rng(808);
  for (int i = 0; i < 60; ++i) {
    const auto g = random_graph(rng, 4 + rng() % 13, std::array{0.1, 0.2, 0.4}[i % 3]);
    const Weight alpha = brute_force(g).alpha_w;
    const auto one = run_ordering_experiment(g, ExperimentMode::DisableOne);
    const auto all = run_ordering_experiment(g, ExperimentMode::PresetSweep);
    t.check(one.size() == 13, [&] { return std::to_string(one.size()) + " disable-one rows"; });
    t.check(all.size() == 5, [&] { return std::to_string(all.size()) + " preset rows"; });
    for (const auto* rows : {&one, &all}) {
      for (const auto& row : *rows) {
        const Kernel k = exact_reduce(g, row.ordering);
        t.check(k.offset == row.offset && k.offset + brute_force(k.graph).alpha_w == alpha,
                [&] { return row.label + " unsound"; });
      }
    }
  }
  const auto graph = (dir / "bench.graph").string();
  write_file_atomic(graph, write_metis(random_graph(rng, 40, 0.1)));
  std::string out;
  t.check(run_cli({"ordering-bench", graph, "--mode", "disable-one"}, &out) == 0 &&
              std::count(out.begin(), out.end(), '\n') == 14,
          [&] { return "cli disable-one table"; });
  t.check(run_cli({"ordering-bench", graph, "--mode", "presets"}, &out) == 0 &&
              std::count(out.begin(), out.end(), '\n') == 6,
          [&] { return "cli preset table"; });
  return t.outcome("60 graphs plus cli tables");
}

Outcome format_fidelity(const fs::path& dir) {
  Tally t;
  Rng rng(909);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_graph(rng, 1 + rng() % 60, 0.15);
    const std::string text = write_metis(g);
    const auto h = parse_metis(text);
    bool same = h.live_count() == g.live_count() && h.live_edges() == g.live_edges();
    for (VertexId v = 0; same && v < g.capacity(); ++v) {
      auto a = g.neighbors(v);
      auto b = h.neighbors(v);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      same = a == b && g.weight(v) == h.weight(v);
    }
    t.check(same && write_metis(h) == text, [&] { return "round trip " + std::to_string(i); });
  }

  const std::vector<std::pair<std::string, std::string>> malformed = {
      {"asymmetric adjacency", "2 1 10\n1 2\n1\n"},
      {"wrong edge count", "2 2 10\n1 2\n1 1\n"},
      {"non-integer token", "2 1 10\n1 x\n1 1\n"},
      {"fractional weight", "2 1 10\n1.5 2\n1 1\n"},
      {"unsupported fmt", "2 1 11\n1 2\n1 1\n"},
  };
  const auto sol = (dir / "empty.sol").string();
  write_file_atomic(sol, "");
  for (const auto& [what, text] : malformed) {
    const auto path = (dir / "bad.graph").string();
    write_file_atomic(path, text);
    t.check(run_cli({"verify", path, sol}) == cli::kExitMalformed, [&] { return what + " accepted"; });
  }
  return t.outcome("100 round trips, " + std::to_string(malformed.size()) + " malformed classes");
}

}  // namespace

int main() {
  const auto dir = scratch_dir();
  int failed = 0;
  auto report = [&](int id, const char* title, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d %-28s %s  (%s; %.1fs)\n", id, title, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  };

  const auto cases = reduction_cases();
  report(1, "reduction soundness", [&] { return soundness(cases, false); });
  report(2, "reconstruction", [&] { return soundness(cases, true); });
  report(3, "solver optimality", solver_optimality);
  report(4, "local search properties", local_search_properties);
  report(5, "combine validity", combine_validity);
  report(6, "partition contracts", partition_contracts);
  report(7, "determinism", [&] { return determinism(dir); });
  report(8, "ordering harness", [&] { return ordering_harness(dir); });
  report(9, "format fidelity", [&] { return format_fidelity(dir); });

  fs::remove_all(dir);
  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
