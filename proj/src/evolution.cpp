#include "m2wis/evolution.hpp"

#include <algorithm>
#include <stdexcept>

namespace m2wis {

std::size_t Population::best_index() const {
  if (members.empty()) throw std::logic_error("population is empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (members[i].weight > members[best].weight) best = i;
  }
  return best;
}

std::size_t Population::worst_index() const {
  if (members.empty()) throw std::logic_error("population is empty");
  std::size_t worst = 0;
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (members[i].weight < members[worst].weight) worst = i;
  }
  return worst;
}

const Individual& tournament_select(const Population& pop, Rng& rng) {
  if (pop.members.empty()) throw std::invalid_argument("tournament_select: empty population");
  std::uniform_int_distribution<std::size_t> pick(0, pop.members.size() - 1);
  const Individual& a = pop.members[pick(rng)];
  const Individual& b = pop.members[pick(rng)];
  return b.weight > a.weight ? b : a;
}

bool replace(Population& pop, Individual offspring, std::size_t force_after) {
  for (const Individual& m : pop.members) {
    if (m.weight == offspring.weight && m.bits == offspring.bits) {
      ++pop.stagnation;
      return false;
    }
  }
  auto most_similar = [&](auto&& eligible) {
    std::size_t pick = pop.members.size();
    std::size_t overlap = 0;
    for (std::size_t i = 0; i < pop.members.size(); ++i) {
      if (!eligible(i)) continue;
      const std::size_t c = pop.members[i].bits.intersection_count(offspring.bits);
      if (pick == pop.members.size() || c > overlap) {
        pick = i;
        overlap = c;
      }
    }
    return pick;
  };

  std::size_t slot =
      most_similar([&](std::size_t i) { return pop.members[i].weight < offspring.weight; });
  if (slot == pop.members.size()) {
    if (pop.stagnation < force_after || pop.members.size() < 2) {
      ++pop.stagnation;
      return false;
    }
    const std::size_t best = pop.best_index();
    slot = most_similar([&](std::size_t i) { return i != best; });
  }
  pop.members[slot] = std::move(offspring);
  pop.stagnation = 0;
  return true;
}

EvolveStats evolve(const WeightedGraph& g, Population& pop, PartitionPool& pool,
                   const EvolutionConfig& config, Rng& rng, const ProgressSink& sink) {
  EvolveStats stats;
  if (pop.members.empty()) throw std::invalid_argument("evolve: empty population");
  if (g.live_count() < 2) return stats;

  auto past_deadline = [&] {
    return config.deadline && std::chrono::steady_clock::now() >= *config.deadline;
  };
  Weight best = pop.best().weight;
  std::size_t unsuccessful = 0;
  std::uniform_int_distribution<int> pick_op(0, 3);
  std::vector<const Individual*> parents;

  while (unsuccessful < config.unsuccessful_limit) {
    if (past_deadline()) {
      stats.timed_out = true;
      break;
    }
    const auto op = static_cast<CombineOp>(pick_op(rng));
    Individual offspring;
    switch (op) {
      case CombineOp::VertexSeparator:
      case CombineOp::EdgeSeparator: {
        const bool sep = op == CombineOp::VertexSeparator;
        const Partition& part = pool.fetch(g, sep, true, rng);
        const Individual& a = tournament_select(pop, rng);
        const Individual& b = tournament_select(pop, rng);
        auto pair = sep ? combine_vertex_separator(g, part, a, b, config.ls_iterations, rng)
                        : combine_edge_separator(g, part, a, b, config.ls_iterations, rng);
        offspring = pair.second.weight > pair.first.weight ? std::move(pair.second)
                                                           : std::move(pair.first);
        break;
      }
      case CombineOp::MultiwayVertexSeparator:
      case CombineOp::MultiwayEdgeSeparator: {
        const bool sep = op == CombineOp::MultiwayVertexSeparator;
        const Partition& part = pool.fetch(g, sep, false, rng);
        parents.clear();
        for (std::uint32_t i = 0; i < part.k; ++i) parents.push_back(&tournament_select(pop, rng));
        offspring =
            sep ? combine_multiway_vertex_separator(g, part, parents, config.ls_iterations, rng)
                : combine_multiway_edge_separator(g, part, parents, config.ls_iterations, rng);
        break;
      }
    }
    mutate(offspring, g, config.mutation_prob, config.ls_iterations, rng);

    const Weight w = offspring.weight;
    const bool replaced = replace(pop, std::move(offspring), config.force_after);
    ++stats.combines;
    stats.replacements += replaced;
    if (w > best) {
      best = w;
      unsuccessful = 0;
      ++stats.improvements;
    } else {
      ++unsuccessful;
    }
    if (sink) sink({stats.combines, op, w, best, replaced});
  }
  return stats;
}

}  // namespace m2wis
