#include "cpv/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "cpv/hooke_jeeves.hpp"
#include "cpv/miga.hpp"
#include "cpv/report.hpp"

namespace cpv {

namespace {

void print_record(std::ostream& out, const EvaluationRecord& r) {
  out << "  mass              " << r.mass << " kg\n"
      << "  cylinder th.      " << r.cylinder_thickness << " mm\n"
      << "  strain energy     " << r.strain_energy << " mJ\n"
      << "  peak energy dens. " << r.peak_energy_density << " mJ/mm^2\n"
      << "  worst FI          " << r.worst_fi << (r.feasible ? "  (feasible)" : "  (infeasible)") << "\n";
  if (!r.diagnostic.empty()) out << "  diagnostic        " << r.diagnostic << "\n";
}

}  // namespace

int cmd_netting(const RunConfig& config, const std::vector<std::string>& materials, std::ostream& out,
                std::ostream& err) {
  try {
    const auto db = load_material_db(resolve_data_path(config, config.material_database));
    std::vector<const MaterialSystem*> rows;
    if (materials.empty()) {
      for (const auto& m : db) {
        if (!m.isotropic) rows.push_back(&m);
      }
    } else {
      for (const auto& name : materials) rows.push_back(&find_material(db, name));
    }
    const double p = config.load.internal_pressure;
    const double r = config.geometry.radius;
    out << "material,Xt_MPa,netting_thickness_mm\n" << std::setprecision(6);
    for (const auto* m : rows) {
      const double xt = m->at(Property::Xt);
      out << m->name << ',' << xt << ',' << netting_thickness(p, r, xt) << '\n';
    }
    return kExitFeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_evaluate(const RunConfig& config, const DesignVector& design, const std::filesystem::path& out_dir,
                 std::ostream& out, std::ostream& err) {
  try {
    const auto ctx = make_context(config);
    const auto problems = ctx.space().violations(design);
    if (!problems.empty()) {
      err << "error: design out of bounds\n";
      for (const auto& p : problems) err << "  " << p << '\n';
      return kExitError;
    }
    const auto ev = evaluate_detailed(design, ctx);
    auto record = ev.record;
    record.fitness = scalarize(record, config.objective());
    out << config.composite << ", " << criterion_name(config.criterion) << "\n" << std::setprecision(6);
    print_record(out, record);
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      std::ofstream rec(out_dir / "record.json");
      write_record_json(rec, record, ctx.space().names());
      std::ofstream st(out_dir / "stations.csv");
      st << std::setprecision(10);
      write_stations_csv(st, ctx, ev);
      std::ofstream lay(out_dir / "layup.csv");
      lay << std::setprecision(10);
      write_layup_csv(lay, ctx.geometry(), ev.layup);
    }
    return record.feasible ? kExitFeasible : kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_optimize(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto ctx = make_context(config);
    const auto& space = ctx.space();
    const Evaluator evaluator = [&](std::span<const double> x) { return evaluate(space.decode(x), ctx); };
    const auto t0 = std::chrono::steady_clock::now();
    OptimizationResult result;
    if (config.optimizer == OptimizerKind::Miga) {
      result = run_miga(config.miga, space.lower(), space.upper(), evaluator);
    } else {
      std::vector<double> start = config.start;
      if (start.empty()) {
        for (std::size_t i = 0; i < space.dimension(); ++i) start.push_back(0.5 * (space.lower()[i] + space.upper()[i]));
      }
      if (start.size() != space.dimension()) {
        err << "error: start point has " << start.size() << " values, the design space has "
            << space.dimension() << '\n';
        return kExitError;
      }
      result = run_hooke_jeeves(start, space.lower(), space.upper(), evaluator, config.objective(),
                                config.hooke_jeeves);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_run_artifacts(config.output_directory, config, ctx, result);

    out << optimizer_name(config.optimizer) << " on " << config.composite << ", "
        << criterion_name(config.criterion) << ": " << result.history.size() << " evaluations in "
        << std::setprecision(3) << seconds << " s\n"
        << std::setprecision(6);
    if (result.feasible_found()) {
      out << "best feasible design (iteration " << result.best().iteration << "):\n";
    } else {
      out << "no feasible design found; least infeasible (iteration " << result.best().iteration << "):\n";
    }
    print_record(out, result.best());
    out << "artifacts: " << config.output_directory << '\n';
    return result.feasible_found() ? kExitFeasible : kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_materials_list(const RunConfig& config, bool complete, std::ostream& out, std::ostream& err) {
  try {
    const auto path = resolve_data_path(config, config.material_database);
    auto db = load_material_db(path);
    if (complete) {
      db = complete_material_db(db, load_constituents(resolve_data_path(config, "materials/constituents.ini")));
    }
    out << "; " << path.string() << "\n; '*' marks values derived by micromechanics\n";
    for (const auto& m : db) {
      write_material_card(out, m);
      out << '\n';
    }
    return kExitFeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace cpv
