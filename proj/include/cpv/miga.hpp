#pragma once

// Multi-island genetic algorithm over binary chromosomes.
//
// Each island evolves its own subpopulation with tournament selection,
// one-point crossover and per-bit mutation, keeping its best member. Every
// `migration_interval` generations the best `migration_rate` members of each
// island replace the worst members of the next island in a ring. Islands
// draw from independent random streams derived from the seed, so results
// do not depend on evaluation order.

#include <cstdint>
#include <span>

#include "cpv/evaluate.hpp"
#include "cpv/pareto.hpp"

namespace cpv {

struct MigaConfig {
  int islands = 10;
  int subpopulation = 10;
  int generations = 10;  // including the initial population
  int migration_interval = 2;
  int migration_rate = 1;
  int tournament_size = 2;
  int elites = 1;
  int bits_per_variable = 16;
  double crossover_probability = 0.9;
  double mutation_probability = -1.0;  // negative: 1 / chromosome length
  std::uint64_t seed = 1;
  Scalarization objective;
};

// Throws std::invalid_argument naming the offending field.
void validate(const MigaConfig& c);

// Evaluations performed by a full run: the initial populations plus the
// non-elite offspring of every later generation.
std::size_t miga_evaluation_count(const MigaConfig& c);

OptimizationResult run_miga(const MigaConfig& config, std::span<const double> lower,
                            std::span<const double> upper, const Evaluator& evaluate);

}  // namespace cpv
