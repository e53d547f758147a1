#include "cpv/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace cpv {

namespace {

using nlohmann::json;

std::ofstream open(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  out << std::setprecision(10);
  return out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c == '\n' ? ' ' : c;
  }
  return q + "\"";
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json record_json(const EvaluationRecord& r, const std::vector<std::string>& names) {
  json vars = json::object();
  for (std::size_t i = 0; i < r.variables.size() && i < names.size(); ++i) vars[names[i]] = r.variables[i];
  json j = {{"iteration", r.iteration},
            {"island", r.island},
            {"generation", r.generation},
            {"mass_kg", number(r.mass)},
            {"cylinder_thickness_mm", number(r.cylinder_thickness)},
            {"strain_energy_mJ", number(r.strain_energy)},
            {"peak_energy_density", number(r.peak_energy_density)},
            {"worst_fi", number(r.worst_fi)},
            {"feasible", r.feasible},
            {"fitness", number(r.fitness)},
            {"variables", vars}};
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

// Running best-feasible record per iteration (null until one exists).
std::vector<const EvaluationRecord*> running_best(std::span<const EvaluationRecord> history) {
  std::vector<const EvaluationRecord*> out;
  const EvaluationRecord* best = nullptr;
  for (const auto& r : history) {
    if (r.feasible && (!best || r.fitness < best->fitness)) best = &r;
    out.push_back(best);
  }
  return out;
}

}  // namespace

void write_history_csv(std::ostream& out, std::span<const EvaluationRecord> history,
                       const std::vector<std::string>& variable_names) {
  out << "iteration,island,generation,mass_kg,cylinder_thickness_mm,strain_energy_mJ,"
         "peak_energy_density,worst_fi,feasible,fitness";
  for (const auto& n : variable_names) out << ',' << n;
  out << ",diagnostic\n";
  for (const auto& r : history) {
    out << r.iteration << ',' << r.island << ',' << r.generation << ',' << r.mass << ','
        << r.cylinder_thickness << ',' << r.strain_energy << ',' << r.peak_energy_density << ','
        << r.worst_fi << ',' << (r.feasible ? 1 : 0) << ',' << r.fitness;
    for (std::size_t i = 0; i < variable_names.size(); ++i) {
      out << ',';
      if (i < r.variables.size()) out << r.variables[i];
    }
    out << ',' << csv_quote(r.diagnostic) << '\n';
  }
}

void write_pareto_json(std::ostream& out, const ParetoArchive& archive,
                       const std::vector<std::string>& variable_names) {
  json j = json::array();
  for (const auto& r : archive.records()) j.push_back(record_json(r, variable_names));
  out << json{{"objectives", {"mass_kg", "cylinder_thickness_mm", "-strain_energy_mJ"}}, {"designs", j}}.dump(2)
      << '\n';
}

void write_record_json(std::ostream& out, const EvaluationRecord& r,
                       const std::vector<std::string>& variable_names) {
  out << record_json(r, variable_names).dump(2) << '\n';
}

void write_stations_csv(std::ostream& out, const EvaluationContext& ctx, const VesselEvaluation& ev) {
  const auto& g = ctx.geometry();
  const auto& constrained = ctx.constrained_stations();
  out << "s,region,z,r,r1,r2,pressure,n_phi,n_theta,eps_phi,eps_theta,gamma,thickness,energy_density,"
         "tsai_wu_max,max_stress_max,constrained\n";
  for (std::size_t k = 0; k < g.stations.size(); ++k) {
    const auto& st = g.stations[k];
    const auto& ls = ev.response.stations[k];
    const auto tw = std::max_element(ev.failure.tsai_wu[k].begin(), ev.failure.tsai_wu[k].end());
    const auto ms = std::max_element(ev.failure.max_stress[k].begin(), ev.failure.max_stress[k].end());
    out << st.s << ',' << region_name(st.region) << ',' << st.z << ',' << st.r << ',';
    if (std::isfinite(st.r1)) out << st.r1;
    out << ',' << st.r2 << ',' << ev.response.pressure[k] << ',' << ls.forces[0] << ',' << ls.forces[1] << ','
        << ls.strains[0] << ',' << ls.strains[1] << ',' << ls.strains[2] << ',' << ev.layup.total_thickness(k)
        << ',' << ls.energy_density << ',' << (tw == ev.failure.tsai_wu[k].end() ? 0.0 : *tw) << ','
        << (ms == ev.failure.max_stress[k].end() ? 0.0 : *ms) << ',' << (constrained[k] ? 1 : 0) << '\n';
  }
}

std::vector<std::string> write_plot_files(const std::filesystem::path& dir, const EvaluationContext& ctx,
                                          const OptimizationResult& result) {
  const auto& h = result.history;
  const auto best = running_best(h);
  std::vector<std::string> files;

  auto series = [&](const std::string& name, const std::string& column, auto value) {
    auto out = open(dir / name);
    out << "iteration," << column << ",best_feasible_" << column << '\n';
    for (std::size_t i = 0; i < h.size(); ++i) {
      out << h[i].iteration << ',' << value(h[i]) << ',';
      if (best[i]) out << value(*best[i]);
      out << '\n';
    }
    files.push_back(name);
  };
  series("thickness_vs_iteration.csv", "cylinder_thickness_mm", [](const auto& r) { return r.cylinder_thickness; });
  series("mass_vs_iteration.csv", "mass_kg", [](const auto& r) { return r.mass; });
  series("peak_energy_vs_iteration.csv", "peak_energy_density", [](const auto& r) { return r.peak_energy_density; });

  const auto& space = ctx.space();
  const auto& names = space.names();
  const std::size_t first_opening = static_cast<std::size_t>(space.helical_layers() + space.hoop_layers());
  {
    auto out = open(dir / "openings_vs_iteration.csv");
    out << "iteration";
    for (std::size_t i = first_opening; i < names.size(); ++i) out << ',' << names[i];
    for (std::size_t i = first_opening; i < names.size(); ++i) out << ",best_feasible_" << names[i];
    out << '\n';
    for (std::size_t k = 0; k < h.size(); ++k) {
      out << h[k].iteration;
      for (std::size_t i = first_opening; i < names.size(); ++i) {
        out << ',';
        if (i < h[k].variables.size()) out << h[k].variables[i];
      }
      for (std::size_t i = first_opening; i < names.size(); ++i) {
        out << ',';
        if (best[k]) out << best[k]->variables[i];
      }
      out << '\n';
    }
    files.push_back("openings_vs_iteration.csv");
  }
  {
    auto out = open(dir / "angles_initial_final.csv");
    const auto& g = ctx.geometry();
    const int n = space.helical_layers();
    std::optional<VesselEvaluation> initial, final;
    if (auto r = initial_best(h); r && std::isfinite(r->worst_fi)) initial = evaluate_detailed(space.decode(r->variables), ctx);
    if (!h.empty() && std::isfinite(result.best().worst_fi)) {
      final = evaluate_detailed(space.decode(result.best().variables), ctx);
    }
    out << "z,region,r";
    for (int i = 1; i <= n; ++i) out << ",initial_L" << i;
    for (int i = 1; i <= n; ++i) out << ",final_L" << i;
    out << '\n';
    auto angle = [&](const std::optional<VesselEvaluation>& ev, int layer, std::size_t k) {
      if (!ev) return std::string();
      for (const auto& ply : ev->layup.plies) {
        if (ply.layer == layer && ply.sign > 0 && ply.kind == LayerKind::Helical && ply.thickness[k] > 0.0) {
          std::ostringstream s;
          s << std::setprecision(10) << ply.angle[k];
          return s.str();
        }
      }
      return std::string();
    };
    for (std::size_t k = 0; k < g.stations.size(); ++k) {
      out << g.stations[k].z << ',' << region_name(g.stations[k].region) << ',' << g.stations[k].r;
      for (int i = 0; i < n; ++i) out << ',' << angle(initial, i, k);
      for (int i = 0; i < n; ++i) out << ',' << angle(final, i, k);
      out << '\n';
    }
    files.push_back("angles_initial_final.csv");
  }
  return files;
}

void write_run_artifacts(const std::filesystem::path& dir, const RunConfig& config,
                         const EvaluationContext& ctx, const OptimizationResult& result) {
  std::filesystem::create_directories(dir);
  const auto& names = ctx.space().names();
  {
    auto out = open(dir / "config.ini");
    out << std::setprecision(17);
    write_run_config(out, config);
  }
  {
    auto out = open(dir / "history.csv");
    write_history_csv(out, result.history, names);
  }
  {
    auto out = open(dir / "pareto.json");
    write_pareto_json(out, result.archive, names);
  }
  const auto plots = write_plot_files(dir, ctx, result);

  json summary = {{"composite", config.composite},
                  {"criterion", criterion_name(config.criterion)},
                  {"optimizer", optimizer_name(config.optimizer)},
                  {"seed", config.seed()},
                  {"evaluations", result.history.size()},
                  {"feasible_found", result.feasible_found()},
                  {"pareto_size", result.archive.size()},
                  {"plot_files", plots}};
  {
    std::ostringstream hash;
    hash << std::hex << std::setw(16) << std::setfill('0') << history_hash(result.history);
    summary["history_hash"] = hash.str();
  }
  json notes = json::array();
  for (const auto& a : ctx.composite().assumptions) notes.push_back(a);
  summary["material_notes"] = notes;
  if (auto init = initial_best(result.history)) summary["initial_best"] = record_json(*init, names);

  if (!result.history.empty()) {
    const auto& best = result.best();
    summary[result.feasible_found() ? "best" : "least_infeasible"] = record_json(best, names);
    if (std::isfinite(best.worst_fi)) {
      const auto design = ctx.space().decode(best.variables);
      const auto ev = evaluate_detailed(design, ctx);
      {
        auto out = open(dir / "best_design.ini");
        out << std::setprecision(17);
        write_design(out, design);
      }
      {
        auto out = open(dir / "best_layup.csv");
        write_layup_csv(out, ctx.geometry(), ev.layup);
      }
      {
        auto out = open(dir / "stations.csv");
        write_stations_csv(out, ctx, ev);
      }
      const auto& st = ctx.geometry().stations[ev.failure.worst_station];
      summary["worst_location"] = {{"station", ev.failure.worst_station},
                                   {"region", region_name(st.region)},
                                   {"z", st.z},
                                   {"r", st.r},
                                   {"ply", ev.failure.worst_ply}};
    }
  }
  auto out = open(dir / "summary.json");
  out << summary.dump(2) << '\n';
}

}  // namespace cpv
