#include "cpv/miga.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "cpv/design.hpp"

namespace cpv {

void validate(const MigaConfig& c) {
  auto positive = [](int v, const char* name) {
    if (v < 1) throw std::invalid_argument(std::string(name) + " must be at least 1");
  };
  positive(c.islands, "islands");
  positive(c.subpopulation, "subpopulation");
  positive(c.generations, "generations");
  positive(c.migration_interval, "migration_interval");
  positive(c.tournament_size, "tournament_size");
  positive(c.bits_per_variable, "bits_per_variable");
  if (c.migration_rate < 0 || c.migration_rate >= c.subpopulation) {
    throw std::invalid_argument("migration_rate must lie in [0, subpopulation)");
  }
  if (c.elites < 0 || c.elites >= c.subpopulation) {
    throw std::invalid_argument("elites must lie in [0, subpopulation)");
  }
  if (!(c.crossover_probability >= 0.0 && c.crossover_probability <= 1.0)) {
    throw std::invalid_argument("crossover_probability must lie in [0, 1]");
  }
  if (c.mutation_probability > 1.0) {
    throw std::invalid_argument("mutation_probability must lie in [0, 1] (negative selects 1/length)");
  }
  validate(c.objective);
}

std::size_t miga_evaluation_count(const MigaConfig& c) {
  const std::size_t first = static_cast<std::size_t>(c.islands) * c.subpopulation;
  const std::size_t later = static_cast<std::size_t>(c.islands) * (c.subpopulation - c.elites);
  return first + later * (c.generations - 1);
}

namespace {

struct Individual {
  std::vector<std::uint8_t> bits;
  EvaluationRecord record;
};

bool better(const Individual& a, const Individual& b) { return ranks_before(a.record, b.record); }

// Fitness of the top-ranked member when it is feasible, +inf otherwise.
double feasible_best(const std::vector<Individual>& pop) {
  const auto& r = pop.front().record;
  return r.feasible ? r.fitness : std::numeric_limits<double>::infinity();
}

}  // namespace

OptimizationResult run_miga(const MigaConfig& config, std::span<const double> lower,
                            std::span<const double> upper, const Evaluator& evaluate) {
  validate(config);
  const BinaryCodec codec({lower.begin(), lower.end()}, {upper.begin(), upper.end()},
                          config.bits_per_variable);
  const std::size_t length = codec.length();
  const double p_mut =
      config.mutation_probability < 0.0 ? 1.0 / static_cast<double>(length) : config.mutation_probability;

  std::vector<std::mt19937_64> rng;
  for (int i = 0; i < config.islands; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    rng.emplace_back(seq);
  }

  OptimizationResult result;
  result.island_best.assign(config.islands, {});
  std::size_t iteration = 0;

  auto assess = [&](Individual& ind, int island, int generation) {
    const auto x = codec.decode(ind.bits);
    EvaluationRecord r = evaluate(x);
    r.variables = x;
    r.iteration = ++iteration;
    r.island = island;
    r.generation = generation;
    r.fitness = scalarize(r, config.objective);
    ind.record = r;
    result.add(std::move(r));
  };

  std::vector<std::vector<Individual>> islands(config.islands);
  for (int i = 0; i < config.islands; ++i) {
    std::bernoulli_distribution coin(0.5);
    for (int j = 0; j < config.subpopulation; ++j) {
      Individual ind;
      ind.bits.resize(length);
      for (auto& b : ind.bits) b = coin(rng[i]) ? 1 : 0;
      islands[i].push_back(std::move(ind));
    }
  }
  for (int i = 0; i < config.islands; ++i) {
    for (auto& ind : islands[i]) assess(ind, i, 0);
    std::stable_sort(islands[i].begin(), islands[i].end(), better);
    result.island_best[i].push_back(feasible_best(islands[i]));
  }

  for (int gen = 1; gen < config.generations; ++gen) {
    for (int i = 0; i < config.islands; ++i) {
      auto& pop = islands[i];
      auto& g = rng[i];
      std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
      std::uniform_int_distribution<std::size_t> cut(1, length - 1);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      auto tournament = [&]() -> const Individual& {
        const Individual* winner = &pop[pick(g)];
        for (int t = 1; t < config.tournament_size; ++t) {
          const Individual& c = pop[pick(g)];
          if (better(c, *winner)) winner = &c;
        }
        return *winner;
      };

      // pop is sorted best first
      std::vector<Individual> next(pop.begin(), pop.begin() + config.elites);
      std::vector<Individual> offspring;
      while (next.size() + offspring.size() < pop.size()) {
        Individual a = tournament();
        Individual b = tournament();
        if (length > 1 && unit(g) < config.crossover_probability) {
          const std::size_t c = cut(g);
          std::swap_ranges(a.bits.begin() + c, a.bits.end(), b.bits.begin() + c);
        }
        for (Individual* child : {&a, &b}) {
          for (auto& bit : child->bits) {
            if (unit(g) < p_mut) bit ^= 1u;
          }
          if (next.size() + offspring.size() < pop.size()) offspring.push_back(std::move(*child));
        }
      }
      for (auto& ind : offspring) assess(ind, i, gen);
      next.insert(next.end(), std::make_move_iterator(offspring.begin()),
                  std::make_move_iterator(offspring.end()));
      std::stable_sort(next.begin(), next.end(), better);
      pop = std::move(next);
    }

    if (config.islands > 1 && config.migration_rate > 0 && gen % config.migration_interval == 0) {
      std::vector<std::vector<Individual>> emigrants(config.islands);
      for (int i = 0; i < config.islands; ++i) {
        emigrants[i].assign(islands[i].begin(), islands[i].begin() + config.migration_rate);
      }
      for (int i = 0; i < config.islands; ++i) {
        auto& dest = islands[(i + 1) % config.islands];
        std::copy(emigrants[i].begin(), emigrants[i].end(), dest.end() - config.migration_rate);
        std::stable_sort(dest.begin(), dest.end(), better);
      }
    }
    for (int i = 0; i < config.islands; ++i) result.island_best[i].push_back(feasible_best(islands[i]));
  }
  return result;
}

}  // namespace cpv
