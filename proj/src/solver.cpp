#include "m2wis/solver.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

namespace m2wis {
namespace {

using Clock = std::chrono::steady_clock;

struct Best {
  VertexSet solution;
  Weight weight = -1;
};

// Lifts forced vertices plus a solution of the current kernel to the input
// graph and keeps it if it beats the best seen so far.
void offer(const WeightedGraph& input, const Kernel& kernel, const VertexSet& forced,
           std::span<const VertexId> kernel_solution, Best& best) {
  VertexSet members(forced);
  members.insert(members.end(), kernel_solution.begin(), kernel_solution.end());
  VertexSet full = lift_solution(kernel.graph.original_size(), kernel.graph.capacity(),
                                 kernel.events, members);
  const Weight w = set_weight(input, full);
  if (w > best.weight) {
    best.solution = std::move(full);
    best.weight = w;
  }
}

}  // namespace

void validate(const SolverConfig& c) {
  auto fail = [](const std::string& what) { throw std::invalid_argument("config: " + what); };
  if (!(c.time_limit >= 0.0)) fail("time_limit must be non-negative");
  if (c.population_size == 0) fail("population_size must be positive");
  if (c.pool_size == 0) fail("pool_size must be positive");
  if (c.ls_iterations == 0) fail("ls_iterations must be positive");
  if (c.max_blocks < 2 || c.max_blocks > 64) fail("max_blocks must be in [2, 64]");
  if (!(c.mutation_prob >= 0.0 && c.mutation_prob <= 1.0)) fail("mutation_prob must be in [0, 1]");
  if (c.unsuccessful_limit == 0) fail("unsuccessful_limit must be positive");
  if (c.force_after == 0) fail("force_after must be positive");
  if (c.strategy.fraction && !(*c.strategy.fraction > 0.0 && *c.strategy.fraction <= 1.0)) {
    fail("selection fraction must be in (0, 1]");
  }
  ordering_preset(c.ordering);
}

SolveResult solve(const WeightedGraph& g, const SolverConfig& config) {
  validate(config);
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(config.time_limit));
  auto stop_requested = [&] {
    return Clock::now() >= deadline || (config.cancel && config.cancel->load());
  };

  SolveResult result;
  result.seed = config.seed;
  const ReductionOrdering ordering = ordering_preset(config.ordering);
  Rng rng(config.seed);
  Kernel kernel = make_kernel(g);
  PartitionPool pool(config.pool_size, config.max_blocks);
  VertexSet forced;
  Best best;

  EvolutionConfig evo;
  evo.population_size = config.population_size;
  evo.ls_iterations = config.ls_iterations;
  evo.mutation_prob = config.mutation_prob;
  evo.unsuccessful_limit = config.unsuccessful_limit;
  evo.force_after = config.force_after;
  evo.deadline = deadline;

  while (true) {
    exact_reduce(kernel, ordering);
    const WeightedGraph& k = kernel.graph;
    if (k.empty()) {
      offer(g, kernel, forced, {}, best);
      break;
    }
    if (stop_requested()) {
      SearchState fill(k);
      maximize_greedy(fill, GreedyOrder::ByWeight);
      offer(g, kernel, forced, fill.solution(), best);
      result.timed_out = true;
      break;
    }

    ++result.rounds;
    Population pop = initial_population(k, evo, rng);
    evolve(k, pop, pool, evo, rng);
    const VertexSet champion = pop.best().members();
    offer(g, kernel, forced, champion, best);

    RoundTrace trace{k.live_count(), kernel.offset, pop.best().weight};
    result.kernel_trace.push_back(trace);
    if (config.on_round) config.on_round(result.rounds, trace);

    if (stop_requested()) {
      result.timed_out = true;
      break;
    }
    if (heuristic_reduce(kernel.graph, pop, config.strategy, forced).empty()) break;
  }

  result.solution = std::move(best.solution);
  result.weight = best.weight;
  result.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

std::string VerifyReport::summary() const {
  std::ostringstream os;
  if (ok) {
    os << "OK, weight=" << weight;
    return os.str();
  }
  os << "INVALID";
  for (VertexId v : out_of_range) os << "\n  vertex " << v << " out of range";
  for (VertexId v : duplicates) os << "\n  vertex " << v << " listed more than once";
  for (const auto& [a, b] : violations) os << "\n  edge " << a << " " << b << " inside the set";
  os << "\n  weight=" << weight;
  return os.str();
}

VerifyReport verify_solution(const WeightedGraph& g, std::span<const VertexId> ids) {
  VerifyReport report;
  std::vector<std::uint8_t> in(g.capacity(), 0);
  VertexSet members;
  for (VertexId v : ids) {
    if (!g.alive(v)) {
      report.out_of_range.push_back(v);
    } else if (in[v]) {
      report.duplicates.push_back(v);
    } else {
      in[v] = 1;
      members.push_back(v);
      report.weight += g.weight(v);
    }
  }
  for (VertexId v : members) {
    g.for_each_neighbor(v, [&](VertexId u) {
      if (v < u && in[u]) report.violations.emplace_back(v, u);
    });
  }
  std::sort(report.violations.begin(), report.violations.end());
  std::sort(report.duplicates.begin(), report.duplicates.end());
  report.duplicates.erase(std::unique(report.duplicates.begin(), report.duplicates.end()),
                          report.duplicates.end());
  report.ok = report.violations.empty() && report.duplicates.empty() && report.out_of_range.empty();
  return report;
}

}  // namespace m2wis
