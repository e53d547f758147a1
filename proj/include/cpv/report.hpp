#pragma once

// Run artifacts: CSV/JSON exports of the evaluation history, the Pareto
// archive, per-station results and the plot data series.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cpv/config.hpp"
#include "cpv/evaluate.hpp"
#include "cpv/pareto.hpp"

namespace cpv {

// iteration,island,generation,mass_kg,cylinder_thickness_mm,strain_energy_mJ,
// peak_energy_density,worst_fi,feasible,fitness,<variables...>,diagnostic
void write_history_csv(std::ostream& out, std::span<const EvaluationRecord> history,
                       const std::vector<std::string>& variable_names);

void write_pareto_json(std::ostream& out, const ParetoArchive& archive,
                       const std::vector<std::string>& variable_names);

// One row per station: geometry, pressure, membrane forces, strains, total
// thickness, energy density and the worst index of each criterion.
void write_stations_csv(std::ostream& out, const EvaluationContext& ctx, const VesselEvaluation& ev);

void write_record_json(std::ostream& out, const EvaluationRecord& r,
                       const std::vector<std::string>& variable_names);

// Plot series, each a CSV keyed by iteration (or station for the angles):
//   thickness_vs_iteration.csv, mass_vs_iteration.csv,
//   peak_energy_vs_iteration.csv, openings_vs_iteration.csv,
//   angles_initial_final.csv
// Returns the file names written.
std::vector<std::string> write_plot_files(const std::filesystem::path& dir, const EvaluationContext& ctx,
                                          const OptimizationResult& result);

// Everything above plus config.ini (a full snapshot), best_design.ini,
// best_layup.csv, stations.csv and summary.json.
void write_run_artifacts(const std::filesystem::path& dir, const RunConfig& config,
                         const EvaluationContext& ctx, const OptimizationResult& result);

}  // namespace cpv
