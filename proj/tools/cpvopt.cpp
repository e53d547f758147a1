// cpvopt: netting estimates, single-design evaluation and layup
// optimization for filament-wound water storage vessels.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpv/commands.hpp"
#include "cpv/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Filament-wound composite vessel design tool"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string criterion;
  std::string optimizer;
  std::vector<std::string> materials;
  std::string design_path;

  app.add_option("--config,-c", config_path, "Run configuration (INI); built-in defaults otherwise")
      ->check(CLI::ExistingFile);
  app.add_option("--out,-o", out_dir, "Output directory");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--criterion", criterion, "tsai_wu | max_principal");
  app.add_option("--optimizer", optimizer, "miga | hooke_jeeves");
  app.add_option("--material,-m", materials, "Composite card name (repeatable for netting)");

  auto* netting = app.add_subcommand("netting", "Netting-analysis cylinder thickness per material");
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate one design file");
  evaluate->add_option("--design,-d", design_path, "Design file with a [design] section")
      ->required()
      ->check(CLI::ExistingFile);
  auto* optimize = app.add_subcommand("optimize", "Run the configured optimizer");
  auto* list = app.add_subcommand("materials-list", "Print the material database");
  bool complete = false;
  list->add_flag("--complete", complete, "Fill missing values from the constituent data");

  CLI11_PARSE(app, argc, argv);

  cpv::RunConfig config;
  try {
    if (!config_path.empty()) config = cpv::load_run_config(config_path);
    if (seed) config.miga.seed = *seed;
    if (!criterion.empty()) {
      auto c = cpv::criterion_from_name(criterion);
      if (!c) throw cpv::ConfigError("unknown criterion '" + criterion + "' (tsai_wu|max_principal)");
      config.criterion = *c;
    }
    if (!optimizer.empty()) {
      auto o = cpv::optimizer_from_name(optimizer);
      if (!o) throw cpv::ConfigError("unknown optimizer '" + optimizer + "' (miga|hooke_jeeves)");
      config.optimizer = *o;
    }
    if (!materials.empty() && !netting->parsed()) {
      if (materials.size() > 1) throw cpv::ConfigError("--material takes one name for this command");
      config.composite = materials.front();
    }
    if (!out_dir.empty()) config.output_directory = out_dir;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cpv::kExitError;
  }

  if (netting->parsed()) return cpv::cmd_netting(config, materials, std::cout, std::cerr);
  if (list->parsed()) return cpv::cmd_materials_list(config, complete, std::cout, std::cerr);
  if (evaluate->parsed()) {
    cpv::DesignVector design;
    try {
      design = cpv::load_design(design_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return cpv::kExitError;
    }
    return cpv::cmd_evaluate(config, design, out_dir, std::cout, std::cerr);
  }
  if (optimize->parsed()) return cpv::cmd_optimize(config, std::cout, std::cerr);
  return cpv::kExitError;
}
