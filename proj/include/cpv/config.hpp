#pragma once

// Run configuration: an INI file with [geometry], [materials], [layers],
// [load], [analysis], [optimizer], [objective] and [output] sections. Every
// key is optional and defaults to the reference water-storage vessel; unknown
// sections or keys are errors. data/configs/reference_vessel.ini documents
// the schema.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cpv/evaluate.hpp"
#include "cpv/hooke_jeeves.hpp"
#include "cpv/miga.hpp"

namespace cpv {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OptimizerKind { Miga, HookeJeeves };

std::string_view optimizer_name(OptimizerKind k);
std::optional<OptimizerKind> optimizer_from_name(std::string_view name);

struct MaterialOverride {
  Property property;
  double value;
};

struct RunConfig {
  GeometryParams geometry;
  StationCounts stations;

  std::string material_database = "materials/default_table1.ini";
  std::string composite = "GF-PP";
  std::string liner = "PP-liner";  // empty: no liner ply
  std::vector<MaterialOverride> overrides;

  int helical_layers = 3;
  int hoop_layers = 4;
  double upper_opening_1 = 20.0;
  double lower_opening_1 = 125.0;
  DesignBounds bounds;
  WindingSettings winding;

  LoadCase load;
  Criterion criterion = Criterion::TsaiWu;

  OptimizerKind optimizer = OptimizerKind::Miga;
  MigaConfig miga;  // its seed and objective are the run's
  HookeJeevesOptions hooke_jeeves;
  std::vector<double> start;  // pattern-search start; empty: box centre

  std::string output_directory = "runs/latest";

  // Directory that relative paths in the file are resolved against.
  std::filesystem::path base_directory;

  std::uint64_t seed() const { return miga.seed; }
  const Scalarization& objective() const { return miga.objective; }
};

RunConfig parse_run_config(std::istream& in, const std::string& origin = "<stream>",
                           const std::filesystem::path& base_directory = {});
RunConfig load_run_config(const std::filesystem::path& path);

// Complete snapshot; parsing it back yields an identical configuration.
void write_run_config(std::ostream& out, const RunConfig& c);

// "Yt:24, Xt:800"
std::vector<MaterialOverride> parse_overrides(std::string_view text);

// Searches the configuration directory first, then the bundled data.
std::filesystem::path resolve_data_path(const RunConfig& c, const std::string& path);

struct ResolvedMaterials {
  MaterialSystem composite;
  std::optional<MaterialSystem> liner;
};
ResolvedMaterials resolve_materials(const RunConfig& c);
ResolvedMaterials resolve_materials(const RunConfig& c, const std::vector<MaterialSystem>& db);

DesignSpace make_design_space(const RunConfig& c);
EvaluationContext make_context(const RunConfig& c);

// Design files hold a [design] section with comma lists helical_thickness,
// hoop_thickness, upper_openings and lower_openings (openings include the
// fixed first-layer value).
DesignVector parse_design(std::istream& in, const std::string& origin = "<stream>");
DesignVector load_design(const std::filesystem::path& path);
void write_design(std::ostream& out, const DesignVector& d);

}  // namespace cpv
