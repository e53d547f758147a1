#pragma once

// Optimization run bookkeeping shared by the optimizers: the evaluation
// history, the best records and the archive of feasible non-dominated
// designs over (mass, cylinder thickness, -strain energy).

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cpv/evaluate.hpp"

namespace cpv {

// Maps a flat variable vector to a pipeline record. Must be deterministic.
using Evaluator = std::function<EvaluationRecord(std::span<const double>)>;

// Objective vector, all minimized.
std::array<double, 3> objectives(const EvaluationRecord& r);

// a dominates b: no worse in every objective and better in at least one.
bool dominates(const EvaluationRecord& a, const EvaluationRecord& b);

class ParetoArchive {
 public:
  // Keeps `r` if it is feasible and not dominated by (or identical in
  // objectives to) a stored record; evicts the records it dominates.
  bool offer(const EvaluationRecord& r);
  const std::vector<EvaluationRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

 private:
  std::vector<EvaluationRecord> records_;
};

struct OptimizationResult {
  std::vector<EvaluationRecord> history;  // in evaluation order
  std::optional<EvaluationRecord> best_feasible;
  // Smallest worst failure index seen; reported when nothing was feasible.
  std::optional<EvaluationRecord> least_infeasible;
  ParetoArchive archive;
  // island_best[island][generation]: fitness of the island's top-ranked
  // member after that generation if it is feasible, +inf otherwise (MIGA
  // only).
  std::vector<std::vector<double>> island_best;

  bool feasible_found() const { return best_feasible.has_value(); }
  // The feasible best, or else the least infeasible record.
  const EvaluationRecord& best() const;
  // Records the evaluation (with its fitness already set) and updates the
  // best records and the archive.
  void add(EvaluationRecord r);
};

// Top-ranked record of the starting population: generation 0 for the
// genetic run, the first evaluation otherwise.
std::optional<EvaluationRecord> initial_best(std::span<const EvaluationRecord> history);

// FNV-1a over the evaluation order, variables and outputs of a history.
std::uint64_t history_hash(std::span<const EvaluationRecord> history);

}  // namespace cpv
