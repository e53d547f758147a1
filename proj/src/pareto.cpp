#include "cpv/pareto.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cpv {

std::array<double, 3> objectives(const EvaluationRecord& r) {
  return {r.mass, r.cylinder_thickness, -r.strain_energy};
}

bool dominates(const EvaluationRecord& a, const EvaluationRecord& b) {
  const auto fa = objectives(a);
  const auto fb = objectives(b);
  bool better = false;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    if (fa[i] > fb[i]) return false;
    if (fa[i] < fb[i]) better = true;
  }
  return better;
}

bool ParetoArchive::offer(const EvaluationRecord& r) {
  if (!r.feasible) return false;
  for (const auto& q : records_) {
    if (dominates(q, r) || objectives(q) == objectives(r)) return false;
  }
  std::erase_if(records_, [&](const EvaluationRecord& q) { return dominates(r, q); });
  records_.push_back(r);
  return true;
}

const EvaluationRecord& OptimizationResult::best() const {
  if (best_feasible) return *best_feasible;
  if (least_infeasible) return *least_infeasible;
  throw std::logic_error("no design has been evaluated");
}

void OptimizationResult::add(EvaluationRecord r) {
  if (r.feasible) {
    if (!best_feasible || r.fitness < best_feasible->fitness) best_feasible = r;
  } else if (!least_infeasible || r.worst_fi < least_infeasible->worst_fi) {
    least_infeasible = r;
  }
  archive.offer(r);
  history.push_back(std::move(r));
}

std::optional<EvaluationRecord> initial_best(std::span<const EvaluationRecord> history) {
  if (history.empty()) return std::nullopt;
  if (history.front().generation < 0) return history.front();
  const EvaluationRecord* best = nullptr;
  for (const auto& r : history) {
    if (r.generation != 0) continue;
    if (!best || ranks_before(r, *best)) best = &r;
  }
  return *best;
}

namespace {

struct Fnv1a {
  std::uint64_t h = 14695981039346656037ull;
  void bytes(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  void real(double v) { bytes(std::bit_cast<std::uint64_t>(v)); }
};

}  // namespace

std::uint64_t history_hash(std::span<const EvaluationRecord> history) {
  Fnv1a f;
  for (const auto& r : history) {
    f.bytes(r.iteration);
    f.bytes(static_cast<std::uint64_t>(static_cast<std::int64_t>(r.island)));
    f.bytes(static_cast<std::uint64_t>(static_cast<std::int64_t>(r.generation)));
    for (double v : r.variables) f.real(v);
    f.real(r.mass);
    f.real(r.cylinder_thickness);
    f.real(r.strain_energy);
    f.real(r.worst_fi);
    f.real(r.fitness);
    f.bytes(r.feasible ? 1u : 0u);
  }
  return f.h;
}

}  // namespace cpv
